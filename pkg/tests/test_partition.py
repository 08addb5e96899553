import random

from qapkit import gf2
from qapkit.bisubalgebra import (
    BiSubalgebra,
    commutant,
    intrinsic_cartan,
    span_of,
)
from qapkit.partition import (
    check_duality,
    commutator_partition,
    coset_partition,
    refine_by_coset_rule,
)
from qapkit.spinor import SpinorIndex


def S(text):
    return SpinorIndex.parse(text)


class TestCommutatorPartition:
    def test_intrinsic_cartan_su8(self):
        part = commutator_partition(intrinsic_cartan(3))
        assert len(part.blocks) == 8
        b001_block = part.blocks[0b001]
        expected = {
            S(t).label
            for t in [
                "S[000|001]", "S[010|001]", "S[100|001]", "S[110|001]",
                "S[001|001]", "S[011|001]", "S[101|001]", "S[111|001]",
            ]
        }
        assert b001_block == expected

    def test_identity_generator_single_block(self):
        part = commutator_partition(span_of([], p=2))
        assert len(part.blocks) == 1
        assert len(part.blocks[0]) == 16

    def test_order1_p2_brute_force(self):
        b = BiSubalgebra(2, tuple(gf2.rref([0b1000, 0b0100, 0b0010])))
        part = commutator_partition(b)
        assert len(part.blocks) == 8
        assert all(len(v) == 2 for v in part.blocks.values())

    def test_blocks_disjoint_and_cover(self):
        for basis in [(0b110000, 0b001100), (0b100001,), ()]:
            b = BiSubalgebra(3, basis)
            part = commutator_partition(b)
            seen = set()
            for members in part.blocks.values():
                assert not (seen & members)
                seen |= members
            assert len(seen) == 64

    def test_block_closure_rule(self):
        b = span_of([S("S[10|00]"), S("S[00|01]")])
        part = commutator_partition(b)
        for i, mi in part.blocks.items():
            for j, mj in part.blocks.items():
                for x in mi:
                    for y in mj:
                        assert part.block_of(x ^ y) == i ^ j


class TestCosetPartition:
    def test_cartan_su8(self):
        part = coset_partition(intrinsic_cartan(3))
        assert len(part.blocks) == 8
        assert all(len(v) == 8 for v in part.blocks.values())
        assert part.blocks[0] == intrinsic_cartan(3).members

    def test_additive_rule(self):
        part = coset_partition(span_of([S("S[10|00]")], p=2))
        for i, mi in part.blocks.items():
            for j, mj in part.blocks.items():
                x, y = min(mi), min(mj)
                assert part.block_of(x ^ y) == i ^ j


class TestDuality:
    def test_cartan_self_dual(self):
        c = intrinsic_cartan(3)
        left = commutator_partition(c).as_setpartition()
        right = coset_partition(c).as_setpartition()
        assert left == right
        assert check_duality(c) == 1

    def test_identity_generator(self):
        assert check_duality(span_of([], p=2)) == 1

    def test_exhaustive_p2(self):
        for basis in gf2.all_subspaces(4):
            assert check_duality(BiSubalgebra(2, basis)) == 1

    def test_random_p3(self):
        rng = random.Random(7)
        for _ in range(50):
            rows = [rng.randrange(1, 64) for _ in range(rng.randrange(0, 5))]
            assert check_duality(BiSubalgebra(3, tuple(rows))) == 1


class TestRefinement:
    def test_cartan_identity_refinement(self):
        part = commutator_partition(intrinsic_cartan(3))
        ref = refine_by_coset_rule(part)
        assert ref.refined
        assert ref.as_setpartition() == part.as_setpartition()

    def test_abelian_order4_su8_splits(self):
        b = span_of([S("S[010|000]"), S("S[001|000]")])  # abelian, order 4
        part = commutator_partition(b)
        assert len(part.blocks) == 4
        ref = refine_by_coset_rule(part)
        assert ref.refined
        pieces_per_block = {}
        for (i, s), members in ref.blocks.items():
            pieces_per_block.setdefault(i, 0)
            pieces_per_block[i] += 1
            assert len(members) == len(b)
        assert all(v == 4 for v in pieces_per_block.values())
        assert ref.blocks[(0, 0)] == b.members
        assert ref.check_two_index_rule()

    def test_low_order_unrefined(self):
        b = BiSubalgebra(2, (0b1000, 0b0100, 0b0010))  # order 1 < p
        ref = refine_by_coset_rule(commutator_partition(b))
        assert not ref.refined
        assert ref.check_two_index_rule()

    def test_order3_p2_single_generator_refines(self):
        b = span_of([S("S[10|00]")], p=2)  # abelian, order 3 >= p
        ref = refine_by_coset_rule(commutator_partition(b))
        assert ref.refined
        assert ref.blocks[(0, 0)] == b.members
        assert ref.check_two_index_rule()

    def test_nonabelian_high_order_unrefined(self):
        b = span_of([S("S[100|000]"), S("S[000|100]"), S("S[001|000]")])
        assert not b.is_abelian() and b.order >= 3
        ref = refine_by_coset_rule(commutator_partition(b))
        assert not ref.refined
