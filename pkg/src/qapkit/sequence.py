"""Recursive t-p decomposition sequences over a quotient-algebra partition.

A sequence is a chain of proper maximal subgroups of the cell-key group,
nonabelian at every level except the last.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf2
from .bisubalgebra import BiSubalgebra
from .cartan import Decomposition, decide_type, validate_decomposition
from .qap import QAPartition, build_qap


class SequenceTerminal(Exception):
    """The subalgebra is already abelian; no further level exists."""


class BoundViolationError(ValueError):
    """Requested length outside [p, p + r]."""


def keys_abelian(partition, keys) -> bool:
    live = [k for k in keys if partition.cells[k]]
    for a in range(len(live)):
        for b in range(a, len(live)):
            if not partition.cells_commute(live[a], live[b]):
                return False
    return True


def subgroup_hyperplanes(keys: frozenset[int]):
    """Index-2 subgroups of a key subgroup, canonical order."""
    basis = gf2.rref(list(keys))
    d = len(basis)
    for phi in range(1, 1 << d):
        yield frozenset(
            k for k in keys if not gf2.parity(gf2.coords(k, basis) & phi)
        )


def extend(dec: Decomposition):
    """Next-level decompositions of the subalgebra side."""
    if keys_abelian(dec.source, dec.t_keys):
        raise SequenceTerminal("the subalgebra is abelian; the sequence ends here")

    def gen():
        for t_new in subgroup_hyperplanes(dec.t_keys):
            yield Decomposition(
                dec.source, t_new, dec.t_keys - t_new, level=dec.level + 1
            )

    return gen()


@dataclass(frozen=True)
class DecompositionSequence:
    partition: QAPartition
    levels: tuple[Decomposition, ...]

    @property
    def length(self) -> int:
        return len(self.levels)

    def validate(self) -> bool:
        part = self.partition
        full = frozenset(range(part.key_count()))
        prev = full
        for l, dec in enumerate(self.levels, start=1):
            assert dec.level == l
            assert dec.t_keys | dec.p_keys == prev
            assert len(dec.t_keys) * 2 == len(prev)
            validate_decomposition(dec, use_matrices=False)
            abelian = keys_abelian(part, dec.t_keys)
            if l < self.length:
                assert not abelian, f"level {l} is already abelian"
            else:
                assert abelian, "the final level must be abelian"
            prev = dec.t_keys
        return True

    def types(self) -> list:
        return [decide_type(dec) for dec in self.levels]

    def to_json(self) -> dict:
        out = {"length": self.length, "levels": []}
        for dec in self.levels:
            decision = decide_type(dec)
            out["levels"].append(
                {
                    "level": dec.level,
                    "type": decision.chosen,
                    "admissible_types": sorted(decision.admissible),
                    "t": [self.partition.label_of_key(k) for k in dec.nonnull_t()],
                    "p": [self.partition.label_of_key(k) for k in dec.nonnull_p()],
                }
            )
        return out


def build_sequence(partition: QAPartition, target_length: int) -> DecompositionSequence:
    """Constructive sequence of exactly the requested length.

    Grows an abelian seed subgroup of the right size, forces the next join
    to break commutativity, then fills up to the whole key group.
    """
    p, r = partition.p, partition.rank
    if not p <= target_length <= p + r:
        raise BoundViolationError(
            f"admissible lengths run from {p} to {p + r}, got {target_length}"
        )
    total_dim = p + r + 1
    seed_dim = total_dim - target_length

    def has_generators(key: int) -> bool:
        return bool(partition.cells[key] - {0})

    basis: list[int] = []
    members = frozenset([0])
    for skip_degenerate in (True, False):
        for k in range(1, partition.key_count()):
            if len(basis) == seed_dim:
                break
            if k in members or (skip_degenerate and not has_generators(k)):
                continue
            grown = members | frozenset(k ^ m for m in members)
            if keys_abelian(partition, grown):
                basis.append(k)
                members = grown
        if len(basis) == seed_dim:
            break
    if len(basis) != seed_dim:
        raise BoundViolationError("could not grow an abelian seed of the needed size")

    chain = [members]
    for k in range(1, partition.key_count()):
        if len(basis) == total_dim:
            break
        if k in members:
            continue
        grown = members | frozenset(k ^ m for m in members)
        if len(chain) == 1 and keys_abelian(partition, grown):
            continue  # first join must break commutativity
        basis.append(k)
        members = grown
        chain.append(members)

    levels = []
    for l in range(target_length, 0, -1):
        t = chain[target_length - l]
        parent = chain[target_length - l + 1]
        levels.append(Decomposition(partition, t, parent - t, level=l))
    seq = DecompositionSequence(partition, tuple(reversed(levels)))
    seq.validate()
    return seq


def covering_first_level(dec: Decomposition) -> Decomposition:
    """A first-level decomposition containing both sides of a level-l one."""
    if dec.level == 1:
        return dec
    part = dec.source
    x0 = min(dec.p_keys)
    t_basis = list(gf2.rref(list(dec.t_keys)))
    reach = gf2.rref(t_basis + [x0])
    grown = list(t_basis)
    needed = dec.level - 1
    picked = []
    for k in range(1, part.key_count()):
        if len(picked) == needed:
            break
        if gf2.in_span(k, reach):
            continue
        picked.append(k)
        grown = list(gf2.rref(grown + [k]))
        reach = gf2.rref(list(reach) + [k])
    if len(picked) != needed:
        raise ValueError("could not assemble an independent covering set")
    t1 = frozenset(gf2.span(gf2.rref(grown)))
    p1 = frozenset(range(part.key_count())) - t1
    cover = Decomposition(part, t1, p1, level=1)
    assert dec.t_keys <= cover.t_keys and dec.p_keys <= cover.p_keys
    return cover


def coverings_of_type(dec: Decomposition, type_name: str):
    """First-level coverings of a given type, canonical order."""
    part = dec.source
    x0 = min(dec.p_keys)
    t_basis = gf2.rref(list(dec.t_keys))
    n_bits = (part.key_count() - 1).bit_length()
    for phi in range(1, part.key_count()):
        if any(gf2.parity(phi & b) for b in t_basis):
            continue
        if not gf2.parity(phi & x0):
            continue
        t1 = frozenset(k for k in range(part.key_count()) if not gf2.parity(phi & k))
        cover = Decomposition(part, t1, frozenset(range(part.key_count())) - t1, level=1)
        if decide_type(cover).chosen == type_name:
            yield cover


def same_type_chain(dec: Decomposition, type_name: str) -> list[Decomposition]:
    """A serial of one-type decompositions from level 1 down to dec's level.

    Consecutive members nest: t_[k] is maximal in t_[k-1] and p_[k] sits
    inside p_[k-1]; all are covered by one first-level decomposition of the
    requested type.
    """
    part = dec.source
    cover = next(iter(coverings_of_type(dec, type_name)), None)
    if cover is None:
        raise ValueError(f"no covering of type {type_name} exists")
    if dec.level == 1:
        return [dec]
    chain = [dec]
    current_t = dec.t_keys
    current_p = dec.p_keys
    for level in range(dec.level - 1, 0, -1):
        w1 = min(cover.t_keys - current_t)
        current_t = current_t | frozenset(w1 ^ k for k in current_t)
        current_p = current_p | frozenset(w1 ^ k for k in current_p)
        chain.append(Decomposition(part, current_t, current_p, level=level))
    chain.reverse()
    assert current_t == cover.t_keys and current_p == cover.p_keys
    return chain


def lift_rank(obj, target_center: BiSubalgebra):
    """Rebuild a decomposition or sequence inside the finer partition
    generated by a smaller center over the same frame."""
    if isinstance(obj, DecompositionSequence):
        part = obj.partition
        if target_center == part.center:
            return obj
        new_part = build_qap(part.frame, target_center)
        lifted = tuple(_lift_one(dec, new_part) for dec in obj.levels)
        return DecompositionSequence(new_part, lifted)
    dec: Decomposition = obj
    part = dec.source
    if target_center == part.center:
        return dec
    return _lift_one(dec, build_qap(part.frame, target_center))


def _lift_one(dec: Decomposition, new_part: QAPartition) -> Decomposition:
    part: QAPartition = dec.source
    if not new_part.center <= part.center:
        raise ValueError("target center must refine the current one")
    proj = key_projection(new_part, part)
    t_new = frozenset(k for k in range(new_part.key_count()) if proj[k] in dec.t_keys)
    p_new = frozenset(k for k in range(new_part.key_count()) if proj[k] in dec.p_keys)
    out = Decomposition(new_part, t_new, p_new, level=dec.level)
    old_t_labels = {x for k in dec.t_keys for x in part.cells[k]}
    new_t_labels = {x for k in t_new for x in new_part.cells[k]}
    assert old_t_labels == new_t_labels, "lift must preserve membership exactly"
    return out


def key_projection(fine: QAPartition, coarse: QAPartition) -> dict[int, int]:
    """Map every fine cell key onto the coarse key containing its members."""
    from .bisubalgebra import partner

    if fine.frame != coarse.frame:
        raise ValueError("partitions must share the Cartan frame")
    gamma_masks = [partner(c, fine.p) for c in fine.frame.cbasis]
    basis_masks = gamma_masks + list(fine.index_masks)
    combos: dict[int, int] = {}
    for c in range(1 << len(basis_masks)):
        m = 0
        for t, bm in enumerate(basis_masks):
            if (c >> (len(basis_masks) - 1 - t)) & 1:
                m ^= bm
        combos.setdefault(m, c)
    coeff_rows = []
    for mask in coarse.index_masks:
        if mask not in combos:
            raise ValueError("coarse index functional outside the fine span")
        coeff_rows.append(combos[mask])
    proj = {}
    for k in range(fine.key_count()):
        gamma, i, eps = fine.split_key(k)
        bits = (gamma << fine.rank) | i
        old_i = 0
        for t, row in enumerate(coeff_rows):
            old_i |= gf2.parity(row & bits) << (len(coeff_rows) - 1 - t)
        proj[k] = coarse.make_key(gamma, old_i, eps)
    return proj
