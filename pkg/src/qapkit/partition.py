"""Commutator and coset partitions of su(2^p), and the duality between them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import gf2
from .bisubalgebra import (
    BiSubalgebra,
    commutant,
    coset_index_masks,
    enumerate_maximal,
)
from .spinor import SpinorIndex


@dataclass(frozen=True)
class CommutatorPartition:
    """Blocks keyed by the stabilizer functional inside the generator."""

    generator: BiSubalgebra
    blocks: dict[int, frozenset[int]]

    @property
    def p(self) -> int:
        return self.generator.p

    def block_of(self, label: int) -> int:
        return enumerate_maximal(self.generator).functional_of(label)

    def as_setpartition(self) -> frozenset[frozenset[int]]:
        return frozenset(self.blocks.values())

    def to_json(self) -> dict:
        return _partition_json(self.generator, "commutator", self.blocks)


@dataclass(frozen=True)
class CosetPartition:
    """The 2^r cosets of the generator, indexed additively."""

    generator: BiSubalgebra
    blocks: dict[int, frozenset[int]]

    @property
    def p(self) -> int:
        return self.generator.p

    @cached_property
    def index_masks(self) -> tuple[int, ...]:
        return coset_index_masks(self.generator)

    def block_of(self, label: int) -> int:
        masks = self.index_masks
        i = 0
        for k, m in enumerate(masks):
            i |= gf2.parity(m & label) << (len(masks) - 1 - k)
        return i

    def as_setpartition(self) -> frozenset[frozenset[int]]:
        return frozenset(self.blocks.values())

    def to_json(self) -> dict:
        return _partition_json(self.generator, "coset", self.blocks)


def _partition_json(generator: BiSubalgebra, kind: str, blocks: dict) -> dict:
    p = generator.p
    width = max(len(blocks).bit_length() - 1, 1)
    return {
        "generator": generator.to_json(),
        "kind": kind,
        "blocks": [
            {
                "label": format(i, f"0{width}b"),
                "members": [str(SpinorIndex.from_label(x, p)) for x in sorted(members)],
            }
            for i, members in sorted(blocks.items())
        ],
    }


def commutator_partition(b: BiSubalgebra) -> CommutatorPartition:
    """Partition of all labels by which maximal bi-subalgebra of b they fix."""
    group = enumerate_maximal(b) if b.dim else None
    blocks: dict[int, set[int]] = {}
    for x in range(1 << (2 * b.p)):
        f = group.functional_of(x) if group else 0
        blocks.setdefault(f, set()).add(x)
    return CommutatorPartition(b, {i: frozenset(v) for i, v in blocks.items()})


def coset_partition(b: BiSubalgebra) -> CosetPartition:
    masks = coset_index_masks(b)
    blocks: dict[int, set[int]] = {}
    r = len(masks)
    for x in range(1 << (2 * b.p)):
        i = 0
        for k, m in enumerate(masks):
            i |= gf2.parity(m & x) << (r - 1 - k)
        blocks.setdefault(i, set()).add(x)
    return CosetPartition(b, {i: frozenset(v) for i, v in blocks.items()})


def check_duality(b: BiSubalgebra) -> int:
    """1 when the commutator partition of b equals the coset partition of
    its commutant as set partitions."""
    k = commutant(b)
    left = commutator_partition(b).as_setpartition()
    right = coset_partition(k).as_setpartition()
    return int(left == right)


@dataclass(frozen=True)
class RefinedCommutatorPartition:
    """Commutator blocks subdivided by the coset rule.

    Blocks are keyed (i, s): i the stabilizer functional, s the refinement
    index.  When the generator does not support the refinement the s index
    collapses to 0 and the blocks are the unrefined ones.
    """

    generator: BiSubalgebra
    blocks: dict[tuple[int, int], frozenset[int]]
    refined: bool

    def as_setpartition(self) -> frozenset[frozenset[int]]:
        return frozenset(self.blocks.values())

    def check_two_index_rule(self) -> bool:
        """Members of (i,s) and (j,t) bi-add into (i^j, s^t)."""
        lookup = {}
        for key, members in self.blocks.items():
            for x in members:
                lookup[x] = key
        for (i1, s1), m1 in self.blocks.items():
            for (i2, s2), m2 in self.blocks.items():
                for x in m1:
                    for y in m2:
                        got = lookup[x ^ y]
                        if got != (i1 ^ i2, s1 ^ s2):
                            return False
        return True


def refine_by_coset_rule(part: CommutatorPartition) -> RefinedCommutatorPartition:
    """Subdivide each commutator block into cosets of the generator.

    Supported when the generator is abelian of order >= p (it then sits
    inside its own commutant).  Otherwise the partition is returned with a
    trivial refinement index.
    """
    b = part.generator
    k = commutant(b)
    supported = b.order >= b.p and b <= k
    if not supported:
        blocks = {(i, 0): members for i, members in part.blocks.items()}
        return RefinedCommutatorPartition(b, blocks, refined=False)

    # Functionals separating the cosets of b inside k, extended to all labels.
    width = 2 * b.p
    kcoords = [gf2.coords(row, k.basis) for row in b.basis]
    pivots = {c.bit_length() - 1 for c in gf2.rref(kcoords)}
    free = sorted((pos for pos in range(len(k.basis)) if pos not in pivots), reverse=True)
    masks = []
    for pos in free:
        eqs = []
        for j, row in enumerate(k.basis):
            want = (gf2.reduce_row(1 << (len(k.basis) - 1 - j), gf2.rref(kcoords)) >> pos) & 1
            eqs.append((row, want))
        mask, _ = gf2.solve_affine(eqs, width)
        masks.append(mask)

    def sub_index(x: int) -> int:
        s = 0
        for t, m in enumerate(masks):
            s |= gf2.parity(m & x) << (len(masks) - 1 - t)
        return s

    blocks: dict[tuple[int, int], set[int]] = {}
    for i, members in part.blocks.items():
        for x in members:
            blocks.setdefault((i, sub_index(x)), set()).add(x)
    return RefinedCommutatorPartition(
        b, {key: frozenset(v) for key, v in blocks.items()}, refined=True
    )
