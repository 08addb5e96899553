"""Quotient-algebra partitions: conditioned subspaces, tri-addition,
co-quotient arrangements, and the merge/detach procedures."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

from . import gf2
from .bisubalgebra import (
    BiSubalgebra,
    commutant,
    enumerate_maximal,
    intersect,
    intrinsic_cartan,
    partner,
    span_of,
)
from .spinor import SpinorIndex, commutes_label, symplectic_product


class NotACartanError(ValueError):
    """The frame subalgebra is not a Cartan subalgebra."""


class ContainmentError(ValueError):
    """The center is not contained in the Cartan subalgebra."""


class KeyDomainError(KeyError):
    """A cell key does not belong to the partition."""


class CenterError(ValueError):
    """The chosen co-quotient center is not admissible."""


class ModeError(ValueError):
    """The requested merge/detach mode does not fit the center kind."""


class InternalConsistencyError(AssertionError):
    """A structural identity that the construction guarantees failed."""


class CartanFrame:
    """A Cartan subalgebra with its canonical dual basis and parity data.

    The dual basis d_k solves s(c_j, d_k) = delta_jk with d's mutually
    commuting, each chosen lexicographically smallest.  Every label then has
    coordinates (a | b) over (c-basis | d-basis); the bisection parity is
    the quadratic form q(x) = a . b, which vanishes on the Cartan subalgebra
    and on the span of the duals.
    """

    def __init__(self, cartan: BiSubalgebra):
        if not cartan.is_cartan():
            raise NotACartanError("frame must be an abelian self-commutant of dimension p")
        self.cartan = cartan
        self.p = cartan.p
        self.cbasis = cartan.basis
        self.dbasis = self._dual_basis()
        n = 1 << (2 * self.p)
        pm_c = [partner(c, self.p) for c in self.cbasis]
        pm_d = [partner(d, self.p) for d in self.dbasis]
        self.gamma = [0] * n
        self.lam = [0] * n
        self.q = [0] * n
        for x in range(n):
            g = 0
            a = 0
            for j in range(self.p):
                g |= gf2.parity(pm_c[j] & x) << (self.p - 1 - j)
                a |= gf2.parity(pm_d[j] & x) << (self.p - 1 - j)
            self.gamma[x] = g
            self.lam[x] = a
            self.q[x] = gf2.parity(g & a)

    def _dual_basis(self) -> tuple[int, ...]:
        width = 2 * self.p
        duals: list[int] = []
        for k in range(self.p):
            eqs = [(partner(c, self.p), 1 if j == k else 0) for j, c in enumerate(self.cbasis)]
            eqs += [(partner(d, self.p), 0) for d in duals]
            sol, _ = gf2.solve_affine(eqs, width)
            duals.append(sol)
        return tuple(duals)

    def eps(self, x: int) -> int:
        return 1 ^ self.q[x]

    def group(self) -> "enumerate_maximal":
        return enumerate_maximal(self.cartan)

    def __eq__(self, other):
        return isinstance(other, CartanFrame) and self.cartan == other.cartan

    def __hash__(self):
        return hash(self.cartan)


_CELL_RE = re.compile(r"^(W|Wh)\(B_([01]+)(?:;([01]+))?\)$")


def cell_label(gamma: int, i: int, eps: int, p: int, r: int) -> str:
    name = "W" if eps else "Wh"
    if r == 0:
        return f"{name}(B_{gamma:0{p}b})"
    return f"{name}(B_{gamma:0{p}b};{i:0{r}b})"


def parse_cell_label(text: str, p: int, r: int) -> tuple[int, int, int]:
    m = _CELL_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a cell label: {text!r}")
    eps = 1 if m.group(1) == "W" else 0
    gamma = int(m.group(2), 2)
    i = int(m.group(3), 2) if m.group(3) else 0
    if len(m.group(2)) != p or (r and m.group(3) and len(m.group(3)) != r):
        raise ValueError(f"cell label has wrong widths for p={p}, r={r}: {text!r}")
    return gamma, i, eps


@dataclass(frozen=True)
class ConditionedSubspace:
    """One cell W^eps(B_gamma, B^[r]; i) of a quotient-algebra partition."""

    p: int
    r: int
    gamma: int
    index: int
    eps: int
    members: frozenset[int]

    @property
    def key(self) -> int:
        return (self.gamma << (self.r + 1)) | (self.index << 1) | self.eps

    def label(self) -> str:
        return cell_label(self.gamma, self.index, self.eps, self.p, self.r)

    def spinors(self) -> tuple[SpinorIndex, ...]:
        return tuple(SpinorIndex.from_label(x, self.p) for x in sorted(self.members))

    def is_null(self) -> bool:
        return not self.members


class QAPartition:
    """The full family of conditioned subspaces of rank r over a frame."""

    def __init__(
        self,
        frame: CartanFrame,
        center: BiSubalgebra,
        index_masks: tuple[int, ...],
        validate: bool | None = None,
    ):
        if not center <= frame.cartan:
            raise ContainmentError("center must sit inside the Cartan subalgebra")
        self.frame = frame
        self.p = frame.p
        self.center = center
        self.rank = frame.p - center.dim
        if len(index_masks) != self.rank:
            raise ValueError("need one index functional per rank unit")
        self.index_masks = index_masks
        self._build_cells()
        if validate is None:
            validate = self.p <= 4
        if validate:
            self.validate_closure()

    # -- construction -------------------------------------------------

    def _build_cells(self):
        p, r = self.p, self.rank
        self._commute_cache: dict[tuple[int, int], bool] = {}
        cells: dict[int, set[int]] = {k: set() for k in range(1 << (p + r + 1))}
        self._key_of = [0] * (1 << (2 * p))
        for x in range(1 << (2 * p)):
            k = self._key(x)
            self._key_of[x] = k
            cells[k].add(x)
        self.cells = {k: frozenset(v) for k, v in cells.items()}
        for i, m in self.center_indexed_cosets().items():
            if i == 0 and m != self.center.members:
                raise InternalConsistencyError("index functionals do not vanish on the center")

    def _key(self, x: int) -> int:
        r = self.rank
        i = 0
        for k, m in enumerate(self.index_masks):
            i |= gf2.parity(m & x) << (r - 1 - k)
        return (self.frame.gamma[x] << (r + 1)) | (i << 1) | self.frame.eps(x)

    # -- key bookkeeping ----------------------------------------------

    @property
    def identity_key(self) -> int:
        return 0

    @property
    def center_key(self) -> int:
        """Key of the cell holding the center subalgebra itself."""
        return 1

    def key_count(self) -> int:
        return 1 << (self.p + self.rank + 1)

    def key_of_label(self, x: int) -> int:
        return self._key_of[x]

    def split_key(self, key: int) -> tuple[int, int, int]:
        r = self.rank
        return key >> (r + 1), (key >> 1) & ((1 << r) - 1), key & 1

    def make_key(self, gamma: int, i: int, eps: int) -> int:
        return (gamma << (self.rank + 1)) | (i << 1) | eps

    def tri_add(self, k1: int, k2: int) -> int:
        for k in (k1, k2):
            if not 0 <= k < self.key_count():
                raise KeyDomainError(f"key {k} is not in this partition")
        return k1 ^ k2

    def subspace(self, key: int) -> ConditionedSubspace:
        if not 0 <= key < self.key_count():
            raise KeyDomainError(f"key {key} is not in this partition")
        gamma, i, eps = self.split_key(key)
        return ConditionedSubspace(self.p, self.rank, gamma, i, eps, self.cells[key])

    def subspaces(self):
        return [self.subspace(k) for k in range(self.key_count())]

    def nonnull_keys(self) -> list[int]:
        return [k for k in range(self.key_count()) if self.cells[k]]

    def cell_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(v for v in self.cells.values() if v)

    def center_indexed_cosets(self) -> dict[int, frozenset[int]]:
        """The cosets of the center inside the Cartan subalgebra, by index."""
        out: dict[int, frozenset[int]] = {}
        for i in range(1 << self.rank):
            out[i] = self.cells[self.make_key(0, i, 1)]
        return out

    def label_of_key(self, key: int) -> str:
        gamma, i, eps = self.split_key(key)
        return cell_label(gamma, i, eps, self.p, self.rank)

    def key_of_cell_label(self, text: str) -> int:
        gamma, i, eps = parse_cell_label(text, self.p, self.rank)
        return self.make_key(gamma, i, eps)

    # -- structural predicates ----------------------------------------

    def is_degrade_key(self, key: int) -> bool:
        """A cell whose stabilizer member contains the center."""
        gamma, _, _ = self.split_key(key)
        return all(
            gf2.parity(gf2.coords(b, self.frame.cbasis) & gamma) == 0
            for b in self.center.basis
        )

    def cells_commute(self, k1: int, k2: int) -> bool:
        if k1 > k2:
            k1, k2 = k2, k1
        cached = self._commute_cache.get((k1, k2))
        if cached is not None:
            return cached
        out = True
        for x in self.cells[k1]:
            for y in self.cells[k2]:
                if symplectic_product(x, y, self.p):
                    out = False
                    break
            if not out:
                break
        self._commute_cache[(k1, k2)] = out
        return out

    def cell_matrices(self, key: int):
        from .spinor import matrix_of_label

        return [
            matrix_of_label(x, self.p) for x in sorted(self.cells[key]) if x != 0
        ]

    def keys_abelian(self, keys) -> bool:
        keys = [k for k in keys if self.cells[k]]
        for a in range(len(keys)):
            for b in range(a, len(keys)):
                if not self.cells_commute(keys[a], keys[b]):
                    return False
        return True

    # -- validation -----------------------------------------------------

    def validate_closure(self):
        """Generator-level closure: anticommuting products land in the
        tri-additive cell, commuting ones in its parity flip."""
        nonnull = self.nonnull_keys()
        for a in range(len(nonnull)):
            for b in range(a, len(nonnull)):
                k1, k2 = nonnull[a], nonnull[b]
                for x in self.cells[k1]:
                    for y in self.cells[k2]:
                        if x == y:
                            continue
                        target = k1 ^ k2
                        if commutes_label(x, y, self.p):
                            target ^= 1
                        if self._key_of[x ^ y] != target:
                            raise InternalConsistencyError(
                                f"closure violated: {x}^{y} not in cell {target}"
                            )

    def group_table_is_elementary_abelian(self) -> bool:
        n = self.key_count()
        for k1 in range(n):
            for k2 in range(n):
                if self.tri_add(k1, k2) != (k1 ^ k2):
                    return False
        return all(self.tri_add(k, k) == 0 for k in range(n))

    # -- io ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "rank": self.rank,
            "cartan": self.frame.cartan.to_json(),
            "center": self.center.to_json(),
            "cells": [
                {
                    "label": self.label_of_key(k),
                    "gamma": format(self.split_key(k)[0], f"0{self.p}b"),
                    "i": format(self.split_key(k)[1], f"0{self.rank}b") if self.rank else "",
                    "epsilon": self.split_key(k)[2],
                    "members": [str(s) for s in self.subspace(k).spinors()],
                }
                for k in range(self.key_count())
            ],
        }


def canonical_index_masks(frame: CartanFrame, center: BiSubalgebra) -> tuple[int, ...]:
    """Index functionals from the free columns of the center inside the frame."""
    p = frame.p
    ccoords = gf2.rref([gf2.coords(b, frame.cbasis) for b in center.basis])
    pivots = {c.bit_length() - 1 for c in ccoords}
    free = sorted((pos for pos in range(p) if pos not in pivots), reverse=True)
    pm_d = [partner(d, p) for d in frame.dbasis]
    masks = []
    for pos in free:
        m = 0
        for j in range(2 * p):
            lam = 0
            for t in range(p):
                lam |= gf2.parity(pm_d[t] & (1 << j)) << (p - 1 - t)
            if (gf2.reduce_row(lam, ccoords) >> pos) & 1:
                m |= 1 << j
        masks.append(m)
    return tuple(masks)


def build_qap(
    cartan: BiSubalgebra | CartanFrame,
    center: BiSubalgebra | None = None,
    validate: bool | None = None,
    index_masks: tuple[int, ...] | None = None,
) -> QAPartition:
    """Quotient-algebra partition of rank p - dim(center) over a Cartan frame."""
    frame = cartan if isinstance(cartan, CartanFrame) else CartanFrame(cartan)
    if center is None:
        center = frame.cartan
    if not center <= frame.cartan:
        raise ContainmentError("center must be a bi-subalgebra of the Cartan subalgebra")
    if index_masks is None:
        index_masks = canonical_index_masks(frame, center)
    return QAPartition(frame, center, index_masks, validate=validate)


def intrinsic_qap(p: int, rank: int = 0, validate: bool | None = None) -> QAPartition:
    """Rank-r partition over the diagonal frame; the center drops the first
    r canonical basis vectors."""
    cartan = intrinsic_cartan(p)
    center = BiSubalgebra(p, cartan.basis[rank:])
    return build_qap(cartan, center, validate=validate)


def tri_add(k1: int, k2: int, partition: QAPartition) -> int:
    return partition.tri_add(k1, k2)


@dataclass(frozen=True)
class CoQuotientAlgebra:
    """A quotient-algebra partition arranged around a non-null cell.

    Cells pair up as k <-> k (+) center_key; the center tops the table.
    """

    partition: QAPartition
    center_key: int

    def __post_init__(self):
        part = self.partition
        if self.center_key == part.center_key:
            raise CenterError("the center cell itself does not give a co-quotient")
        if not part.cells[self.center_key]:
            raise CenterError("a null conditioned subspace cannot be a co-quotient center")

    @property
    def is_degrade(self) -> bool:
        return self.partition.is_degrade_key(self.center_key)

    @property
    def is_regular(self) -> bool:
        return not self.is_degrade

    def partner_key(self, key: int) -> int:
        return self.partition.tri_add(key, self.center_key)

    def pairs(self) -> list[tuple[int, int]]:
        """Orbit pairs k <-> k + center; the pair holding the old center
        subalgebra comes first, the rest follow in canonical key order.

        The orbit of the co-quotient center itself (paired with the null
        identity cell) is not a display row.
        """
        part = self.partition
        skip = {self.center_key, self.partner_key(self.center_key)}
        seen = set(skip)
        rows = []
        for k in [part.center_key] + list(range(part.key_count())):
            if k in seen:
                continue
            mate = self.partner_key(k)
            seen |= {k, mate}
            if part.split_key(k)[2] != part.split_key(mate)[2]:
                left = k if part.split_key(k)[2] == 1 else mate
            else:
                left = min(k, mate)
            right = mate if left == k else k
            rows.append((left, right))
        return rows

    def to_json(self) -> dict:
        part = self.partition
        return {
            "center": part.label_of_key(self.center_key),
            "kind": "degrade" if self.is_degrade else "regular",
            "rows": [
                {
                    "left": part.label_of_key(a),
                    "left_members": [str(s) for s in part.subspace(a).spinors()],
                    "right": part.label_of_key(b),
                    "right_members": [str(s) for s in part.subspace(b).spinors()],
                }
                for a, b in self.pairs()
            ],
        }


def build_coquotient(partition: QAPartition, center_key: int) -> CoQuotientAlgebra:
    return CoQuotientAlgebra(partition, center_key)


@dataclass(frozen=True)
class MergeInfo:
    mode: str
    aux_key: int
    new_center: BiSubalgebra
    merged_cells: frozenset[frozenset[int]]


@dataclass(frozen=True)
class DetachInfo:
    mode: str
    split_functional: int
    old_center_key: int


def _merge_candidates(q: CoQuotientAlgebra, mode: str) -> list[int]:
    part = q.partition
    want_eps = 0 if mode == "parallel" else 1
    out = []
    for w in range(1 << (part.p + part.rank + 1)):
        _, _, eps = part.split_key(w)
        if eps != want_eps or w == 0:
            continue
        if part.cells[w]:
            continue
        if part.cells[part.tri_add(w, q.center_key)]:
            continue
        new_center_cell = part.tri_add(w, part.center_key)
        if not part.cells[new_center_cell]:
            continue
        if new_center_cell in (part.center_key, q.center_key):
            continue
        out.append(w)
    return out


def merge_coquotient(
    q: CoQuotientAlgebra, mode: str, aux_key: int | None = None
) -> QAPartition:
    """Pairwise-union the commuting cells of a degrade-center co-quotient,
    producing the partition of rank r-1 generated by the enlarged center."""
    if mode not in ("parallel", "crossing"):
        raise ModeError(f"unknown merge mode: {mode}")
    part = q.partition
    if not q.is_degrade:
        raise ModeError("merging needs a degrade center")
    if part.rank < 1:
        raise ModeError("rank-0 partitions cannot merge further")
    candidates = _merge_candidates(q, mode)
    if aux_key is None:
        if not candidates:
            raise ModeError(f"no admissible {mode} merge for this center")
        aux_key = candidates[0]
    elif aux_key not in candidates:
        raise ModeError(f"auxiliary key {aux_key} is not admissible for {mode} merging")

    merged: dict[frozenset[int], None] = {}
    for k in range(part.key_count()):
        mate = part.tri_add(k, aux_key)
        cell = part.cells[k] | part.cells[mate]
        if cell:
            if not part.cells_commute(k, mate):
                raise InternalConsistencyError("merged pair does not commute")
            merged.setdefault(frozenset(cell))
    merged_cells = frozenset(merged)

    grown = part.cells[part.tri_add(aux_key, part.center_key)]
    new_center = span_of(list(part.center.basis) + sorted(grown), p=part.p)
    if not new_center.is_abelian() or new_center.dim != part.center.dim + 1:
        raise InternalConsistencyError("merged center is not a bi-subalgebra")

    new_cartan = _merged_cartan(part, new_center, merged_cells)
    out = build_qap(new_cartan, new_center)
    if out.cell_sets() != merged_cells:
        raise InternalConsistencyError("merged cells disagree with the rebuilt partition")
    out.merge_info = MergeInfo(mode, aux_key, new_center, merged_cells)
    return out


def _merged_cartan(
    part: QAPartition, new_center: BiSubalgebra, merged_cells: frozenset[frozenset[int]]
) -> BiSubalgebra:
    if new_center.dim == part.p:
        return new_center
    chosen = set(new_center.members)
    size = 1 << part.p
    for cell in sorted(merged_cells, key=lambda c: sorted(c)):
        if len(chosen) == size:
            break
        if cell <= chosen or len(cell) != len(new_center):
            continue
        x0 = min(cell)
        if any((x ^ x0) not in new_center.members for x in cell):
            continue
        if any(symplectic_product(x, y, part.p) for x in cell for y in chosen | cell):
            continue
        chosen |= cell
    cartan = span_of(sorted(chosen), p=part.p)
    if cartan.members != frozenset(chosen) or not cartan.is_cartan():
        raise InternalConsistencyError("could not assemble the merged Cartan subalgebra")
    return cartan


def detach_coquotient(q: CoQuotientAlgebra, mode: str) -> QAPartition:
    """Bisect every cell of a regular-center co-quotient, producing the
    rank r+1 partition generated by B_1 n B^[r]."""
    if mode not in ("parallel", "crossing"):
        raise ModeError(f"unknown detach mode: {mode}")
    part = q.partition
    if not q.is_regular:
        raise ModeError("detaching needs a regular center")
    if part.rank >= part.p:
        raise ModeError("already at the highest rank")
    gamma1, _, _ = part.split_key(q.center_key)
    b1 = part.frame.group().member(gamma1)
    new_center = intersect(b1, part.center)

    # New leading functional: extends the B_1 functional on the frame and
    # vanishes on the old center cell, so its non-null half gets index 0.s.
    x0 = min(part.cells[q.center_key])
    eqs = [
        (c, (gamma1 >> (part.p - 1 - j)) & 1) for j, c in enumerate(part.frame.cbasis)
    ]
    eqs.append((x0, 0))
    mask, _ = gf2.solve_affine(eqs, 2 * part.p)
    out = build_qap(part.frame, new_center, index_masks=(mask,) + part.index_masks)

    for k in part.nonnull_keys():
        gamma, i, eps = part.split_key(k)
        halves = [
            out.cells[out.make_key(gamma, (b << part.rank) | i, eps)] for b in (0, 1)
        ]
        if part.cells[k] != halves[0] | halves[1]:
            raise InternalConsistencyError("detached halves do not recompose")
    out.detach_info = DetachInfo(mode, mask, q.center_key)
    return out
