"""Cartan decompositions from quotient-algebra partitions.

A decomposition t + p corresponds to an index-2 subgroup of the cell-key
group under tri-addition; its type follows from the maximal abelian
subalgebra of p.  The divided partition refines the rank-0 diagonal-frame
partition with the block index of an su(m)+su(n) split and yields the
type-AIII decompositions for every admissible (m, n).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import gf2
from .bisubalgebra import BiSubalgebra, extend_to_cartan, intrinsic_cartan
from .qap import QAPartition, intrinsic_qap
from .spinor import matrix_of_label, symplectic_product

AI, AII, AIII = "AI", "AII", "AIII"


class MalformedDecompositionError(ValueError):
    """The maximal abelian subalgebra fits none of the admissible shapes."""


@dataclass(frozen=True)
class Decomposition:
    """A t/p split of cell keys; t is a subgroup, p its complement coset."""

    source: object
    t_keys: frozenset[int]
    p_keys: frozenset[int]
    level: int = 1

    def __post_init__(self):
        if 0 not in self.t_keys:
            raise ValueError("the identity cell belongs to the subalgebra side")
        if self.t_keys & self.p_keys:
            raise ValueError("t and p overlap")

    def nonnull_t(self) -> list[int]:
        return [k for k in sorted(self.t_keys) if self.source.cells[k]]

    def nonnull_p(self) -> list[int]:
        return [k for k in sorted(self.p_keys) if self.source.cells[k]]

    def t_dim(self) -> int:
        return _dim_of(self.source, self.t_keys)

    def p_dim(self) -> int:
        return _dim_of(self.source, self.p_keys)

    def to_json(self) -> dict:
        src = self.source
        return {
            "level": self.level,
            "t": [src.label_of_key(k) for k in self.nonnull_t()],
            "p": [src.label_of_key(k) for k in self.nonnull_p()],
            "t_dim": self.t_dim(),
            "p_dim": self.p_dim(),
        }


def _dim_of(source, keys) -> int:
    total = 0
    for k in keys:
        cell = source.cells[k]
        total += len(cell)
        if isinstance(source, QAPartition) and 0 in cell:
            total -= 1
        if not isinstance(source, QAPartition) and ("diag", 0) in cell:
            total -= 1
    return total


def enumerate_decompositions(partition) -> "itertools.chain":
    """Every index-2 subgroup of the key group, as a decomposition."""

    def gen():
        n = partition.key_count()
        width = n.bit_length() - 1
        for phi in range(1, n):
            t = frozenset(k for k in range(n) if not gf2.parity(k & phi))
            p = frozenset(k for k in range(n) if gf2.parity(k & phi))
            yield Decomposition(partition, t, p)

    return gen()


def decomposition_from_functional(partition, phi: int) -> Decomposition:
    n = partition.key_count()
    t = frozenset(k for k in range(n) if not gf2.parity(k & phi))
    return Decomposition(partition, t, frozenset(range(n)) - t)


def decomposition_from_nonnull_t(partition, keys) -> Decomposition:
    """Reconstruct the full key split from the non-null t cells."""
    basis = gf2.rref(list(keys))
    t = frozenset(gf2.span(basis))
    n = partition.key_count()
    if len(t) * 2 != n:
        raise ValueError("given cells do not span an index-2 subgroup")
    return Decomposition(partition, t, frozenset(range(n)) - t)


# -- validation ---------------------------------------------------------


def validate_decomposition(dec: Decomposition, use_matrices: bool | None = None) -> bool:
    """Four-clause decomposition condition at generator granularity, plus
    the matrix-level cross-check for small qubit counts."""
    src = dec.source
    _check_bracket_side(src, dec.t_keys, dec.t_keys, dec.t_keys)
    _check_bracket_side(src, dec.t_keys, dec.p_keys, dec.p_keys)
    _check_bracket_side(src, dec.p_keys, dec.p_keys, dec.t_keys)
    if use_matrices is None:
        use_matrices = getattr(src, "p", 99) <= 3
    if use_matrices:
        _check_matrix_level(src, dec)
    return True


def _check_bracket_side(src, keys1, keys2, target):
    for k1 in keys1:
        if not src.cells[k1]:
            continue
        for k2 in keys2:
            if not src.cells[k2]:
                continue
            if src.tri_add(k1, k2) not in target:
                raise MalformedDecompositionError(
                    f"bracket of {k1} and {k2} escapes the required side"
                )


def _check_matrix_level(src, dec: Decomposition):
    if isinstance(src, QAPartition):
        _check_matrix_level_labels(src, dec)
    else:
        _check_matrix_level_generic(src, dec)


def _check_matrix_level_labels(src: QAPartition, dec: Decomposition):
    """Numeric cross-check on generator matrices: every commutator is a
    multiple of the bi-additive generator on the required side, and the two
    sides are trace orthogonal."""
    n = 1 << src.p
    t_labels = sorted(x for k in dec.nonnull_t() for x in src.cells[k] if x)
    p_labels = sorted(x for k in dec.nonnull_p() for x in src.cells[k] if x)
    mats = {x: matrix_of_label(x, src.p) for x in t_labels + p_labels}
    t_set, p_set = set(t_labels), set(p_labels)
    sides = [(t_labels, t_labels, t_set), (t_labels, p_labels, p_set), (p_labels, p_labels, t_set)]
    for left, right, allowed in sides:
        for x in left:
            for y in right:
                comm = mats[x] @ mats[y] - mats[y] @ mats[x]
                if np.abs(comm).max() < 1e-12:
                    continue
                target = matrix_of_label(x ^ y, src.p)
                coeff = np.einsum("ij,ji->", target.conj().T, comm) / n
                if np.abs(comm - coeff * target).max() > 1e-9:
                    raise MalformedDecompositionError("commutator is not a single generator")
                if (x ^ y) not in allowed and (x ^ y) != 0:
                    raise MalformedDecompositionError("matrix bracket escapes its side")
    for x in t_labels:
        for y in p_labels:
            if abs(np.einsum("ij,ji->", mats[x], mats[y])) > 1e-9:
                raise MalformedDecompositionError("trace orthogonality fails")


def _check_matrix_level_generic(src, dec: Decomposition):
    for k1 in dec.nonnull_t() + dec.nonnull_p():
        in_t1 = k1 in dec.t_keys
        for k2 in dec.nonnull_t() + dec.nonnull_p():
            in_t2 = k2 in dec.t_keys
            target = src.tri_add(k1, k2)
            allowed = src._support_of(target)
            for a in src.cell_matrices(k1):
                for b in src.cell_matrices(k2):
                    comm = a @ b - b @ a
                    if np.abs(comm).max() < 1e-12:
                        continue
                    if not src._supported(comm, allowed, target):
                        raise MalformedDecompositionError("bracket escapes its cell")
                    if not in_t1 or not in_t2:
                        continue
            if in_t1 != in_t2:
                for a in src.cell_matrices(k1):
                    for b in src.cell_matrices(k2):
                        if abs(np.einsum("ij,ji->", a, b)) > 1e-9:
                            raise MalformedDecompositionError("trace orthogonality fails")


# -- maximal abelian subalgebra and the type law ------------------------


@dataclass(frozen=True)
class AbelianDescriptor:
    """Classified maximal abelian subalgebra of the p side."""

    kind: str  # "cartan" | "bisubalgebra" | "coset"
    r: int
    labels: frozenset[int]
    base: BiSubalgebra
    cartan_witness: BiSubalgebra

    def describe(self) -> str:
        if self.kind == "cartan":
            return "Cartan subalgebra"
        if self.kind == "bisubalgebra":
            return f"maximal bi-subalgebra chain member of co-order {self.r}"
        return f"coset of a chain member of co-order {self.r}"


def _max_weight_commuting_cells(part, keys) -> frozenset[int]:
    cells = [(k, len(part.cells[k])) for k in sorted(keys) if part.cells[k]]
    n = len(cells)
    compat = [
        [part.cells_commute(cells[a][0], cells[b][0]) for b in range(n)]
        for a in range(n)
    ]
    best_keys: list[int] = []
    best_weight = -1

    def bb(idx, current, weight, remaining):
        nonlocal best_keys, best_weight
        if weight > best_weight:
            best_weight = weight
            best_keys = list(current)
        if idx == n or weight + remaining <= best_weight:
            return
        k, w = cells[idx]
        if all(compat[idx][j] for j in current):
            current.append(idx)
            bb(idx + 1, current, weight + w, remaining - w)
            current.pop()
        bb(idx + 1, current, weight, remaining - w)

    bb(0, [], 0, sum(w for _, w in cells))
    return frozenset(cells[j][0] for j in best_keys)


def maximal_abelian_in_p(dec: Decomposition) -> AbelianDescriptor:
    """Largest pairwise-commuting union of cells inside p, classified."""
    part = dec.source
    chosen = _max_weight_commuting_cells(part, dec.p_keys)
    labels = frozenset(x for k in chosen for x in part.cells[k])
    return classify_abelian(labels, part.p)


def classify_abelian(labels: frozenset[int], p: int) -> AbelianDescriptor:
    if not labels:
        raise MalformedDecompositionError("empty abelian subalgebra")
    x0 = min(labels)
    diffs = gf2.rref([x ^ x0 for x in labels])
    span = set(gf2.span(diffs))
    if len(labels) != len(span) or any((x ^ x0) not in span for x in labels):
        raise MalformedDecompositionError("abelian subalgebra is not a coset")
    base = BiSubalgebra(p, diffs)
    if not base.is_abelian():
        raise MalformedDecompositionError("classified set is not abelian")
    witness = extend_to_cartan(
        base if x0 in span else BiSubalgebra(p, gf2.rref(list(diffs) + [x0]))
    )
    r = p - base.dim
    if x0 in span:  # subgroup
        kind = "cartan" if r == 0 else "bisubalgebra"
    else:
        kind = "coset"
    return AbelianDescriptor(kind, r, labels, base, witness)


@dataclass(frozen=True)
class TypeDecision:
    chosen: str
    admissible: frozenset[str]
    abelian: AbelianDescriptor
    witness: Decomposition | None = None


def decide_type(dec: Decomposition) -> TypeDecision:
    """Type law: AI/AII/AIII by the maximal abelian subalgebra of p.

    Levels beyond the first return the admissible set together with one
    concrete choice witnessed by a covering first-level decomposition.
    """
    desc = maximal_abelian_in_p(dec)
    if dec.level == 1:
        if desc.kind == "cartan":
            chosen = AI
        elif desc.kind == "bisubalgebra" and desc.r == 1:
            chosen = AII
        elif desc.kind == "coset" and desc.r == 1:
            chosen = AIII
        else:
            raise MalformedDecompositionError(
                f"level-1 abelian subalgebra of unexpected shape: {desc.describe()}"
            )
        return TypeDecision(chosen, frozenset({chosen}), desc)

    if desc.kind == "cartan":
        admissible = frozenset({AI})
    elif desc.kind == "bisubalgebra":
        admissible = frozenset({AI, AII})
    elif desc.r == 1:
        admissible = frozenset({AI, AIII})
    else:
        admissible = frozenset({AI, AII, AIII})
    from .sequence import covering_first_level

    witness = covering_first_level(dec)
    chosen = decide_type(witness).chosen
    if chosen not in admissible:
        raise MalformedDecompositionError(
            f"witness type {chosen} outside the admissible set {sorted(admissible)}"
        )
    return TypeDecision(chosen, admissible, desc, witness)


# -- lambda dictionary ---------------------------------------------------


def pairs_of_gamma(gamma: int, p: int) -> list[tuple[int, int]]:
    """Index pairs (k, l), 1-based, with (k-1) xor (l-1) = gamma."""
    out = []
    for omega in range(1 << p):
        tau = omega ^ gamma
        if omega < tau:
            out.append((omega + 1, tau + 1))
    return out


@lru_cache(maxsize=None)
def lambda_matrix(k: int, l: int, hat: bool, n: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=complex)
    if hat:
        m[k - 1, l - 1] = -1j
        m[l - 1, k - 1] = 1j
    else:
        m[k - 1, l - 1] = 1
        m[l - 1, k - 1] = 1
    m.setflags(write=False)
    return m


def lambda_token(member) -> str:
    kind = member[0]
    if kind == "diag":
        return "d" if member[1] == 0 else f"d[{member[1]}]"
    _, k, l = member
    return f"l{k}{l}" if kind == "lam" else f"lh{k}{l}"


def render_cell_lambda(part: QAPartition, key: int) -> list[str]:
    """Lambda rendering of a rank-0 diagonal-frame cell."""
    if part.rank != 0 or part.frame.cartan != intrinsic_cartan(part.p):
        raise ValueError("lambda rendering needs the rank-0 diagonal-frame partition")
    gamma, _, eps = part.split_key(key)
    if gamma == 0:
        return ["d_span"] if part.cells[key] else []
    if not part.cells[key]:
        return []
    name = "l" if eps else "lh"
    return [f"{name}{k}{l}" for k, l in pairs_of_gamma(gamma, part.p)]


# -- divided partition ---------------------------------------------------


class DividedQAP:
    """Rank-0 diagonal-frame partition with cells cut by a block index.

    Keys pack (gamma, eps, kappa); kappa is 1 on generators straddling the
    (m, n) block cut and 0 on block-diagonal ones.
    """

    def __init__(self, p: int, m: int, n: int, validate: bool = True):
        if m + n != (1 << p):
            raise ValueError("block sizes must add to the matrix dimension")
        if not (m >= n >= 1):
            raise ValueError("need m >= n >= 1")
        self.p = p
        self.m = m
        self.n = n
        self.base = intrinsic_qap(p, 0, validate=False)
        cells: dict[int, set] = {k: set() for k in range(1 << (p + 2))}
        for x in intrinsic_cartan(p).members:
            cells[self.make_key(0, 1, 0)].add(("diag", x))
        for gamma in range(1, 1 << p):
            for k, l in pairs_of_gamma(gamma, p):
                kappa = self.block_index(k) ^ self.block_index(l)
                cells[self.make_key(gamma, 1, kappa)].add(("lam", k, l))
                cells[self.make_key(gamma, 0, kappa)].add(("lamhat", k, l))
        self.cells = {k: frozenset(v) for k, v in cells.items()}
        if validate:
            self.validate_closure()

    def block_index(self, j: int) -> int:
        return 1 if j > self.m else 0

    def make_key(self, gamma: int, eps: int, kappa: int) -> int:
        return (gamma << 2) | (eps << 1) | kappa

    def split_key(self, key: int) -> tuple[int, int, int]:
        return key >> 2, (key >> 1) & 1, key & 1

    def key_count(self) -> int:
        return 1 << (self.p + 2)

    def tri_add(self, k1: int, k2: int) -> int:
        for k in (k1, k2):
            if not 0 <= k < self.key_count():
                raise KeyError(f"key {k} is not in this partition")
        return k1 ^ k2

    def nonnull_keys(self) -> list[int]:
        return [k for k in range(self.key_count()) if self.cells[k]]

    def label_of_key(self, key: int) -> str:
        gamma, eps, kappa = self.split_key(key)
        name = "W" if eps else "Wh"
        return f"{name}(B_{gamma:0{self.p}b};{kappa})"

    def cell_matrices(self, key: int) -> list[np.ndarray]:
        n = 1 << self.p
        out = []
        for member in sorted(self.cells[key]):
            if member[0] == "diag":
                if member[1] == 0:
                    continue
                out.append(matrix_of_label(member[1], self.p))
            else:
                out.append(lambda_matrix(member[1], member[2], member[0] == "lamhat", n))
        return out

    def cells_commute(self, k1: int, k2: int) -> bool:
        for a in self.cell_matrices(k1):
            for b in self.cell_matrices(k2):
                if np.abs(a @ b - b @ a).max() > 1e-12:
                    return False
        return True

    def render(self, key: int) -> list[str]:
        return [lambda_token(m) for m in sorted(self.cells[key])]

    def validate_closure(self):
        """Bracket of two cells decomposes inside the tri-additive target."""
        nonnull = self.nonnull_keys()
        for a in range(len(nonnull)):
            for b in range(a, len(nonnull)):
                k1, k2 = nonnull[a], nonnull[b]
                target = k1 ^ k2
                allowed = self._support_of(target)
                for ma in self.cell_matrices(k1):
                    for mb in self.cell_matrices(k2):
                        comm = ma @ mb - mb @ ma
                        if np.abs(comm).max() < 1e-12:
                            continue
                        if not self._supported(comm, allowed, target):
                            raise ValueError(
                                f"divided closure fails for keys {k1}, {k2}"
                            )

    def _support_of(self, key: int) -> set:
        return {m[:3] for m in self.cells[key]}

    def _supported(self, comm: np.ndarray, allowed: set, target: int) -> bool:
        n = 1 << self.p
        gamma, _, _ = self.split_key(target)
        for k in range(1, n + 1):
            for l in range(k + 1, n + 1):
                a = (comm[k - 1, l - 1] + comm[l - 1, k - 1]) / 2
                b = (comm[l - 1, k - 1] - comm[k - 1, l - 1]) / 2j
                if abs(a) > 1e-12 and ("lam", k, l) not in allowed:
                    return False
                if abs(b) > 1e-12 and ("lamhat", k, l) not in allowed:
                    return False
        diag = np.diag(comm)
        if np.abs(diag).max() > 1e-12 and gamma != 0:
            return False
        return True

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "n": self.n,
            "cells": [
                {"label": self.label_of_key(k), "members": self.render(k)}
                for k in range(self.key_count())
            ],
        }


def divide_intrinsic(part: QAPartition, m: int, n: int) -> DividedQAP:
    """Cut each cell of the rank-0 diagonal-frame partition by the (m, n)
    block membership of its generators."""
    if part.rank != 0 or part.frame.cartan != intrinsic_cartan(part.p):
        raise ValueError("division starts from the rank-0 diagonal-frame partition")
    return DividedQAP(part.p, m, n)


def intrinsic_aiii_t(div: DividedQAP) -> Decomposition:
    """Block-diagonal subalgebra: every kappa = 0 cell."""
    t = frozenset(k for k in range(div.key_count()) if (k & 1) == 0)
    p = frozenset(range(div.key_count())) - t
    dec = Decomposition(div, t, p)
    want = div.m**2 + div.n**2 - 1
    if dec.t_dim() != want:
        raise MalformedDecompositionError(
            f"block-diagonal side has dimension {dec.t_dim()}, expected {want}"
        )
    return dec


def nonintrinsic_aiii(div: DividedQAP, l: int) -> Decomposition:
    """Alternative maximal subgroups kappa = a . gamma of the divided
    partition; they realize the (m - 2l, n + 2l) signature."""
    if not 0 <= l <= div.m - (1 << (div.p - 1)):
        raise ValueError("block shift outside the admissible range")
    if l == 0:
        return intrinsic_aiii_t(div)
    target_m = div.m - 2 * l
    choice = None
    for a in range(1, 1 << div.p):
        m_new = sum(
            1
            for j in range(1, (1 << div.p) + 1)
            if div.block_index(j) ^ gf2.parity(a & (j - 1)) == 0
        )
        if m_new == target_m:
            choice = a
            break
    if choice is None:
        raise ValueError(f"no block relabeling realizes the ({target_m}, ...) split")
    t = frozenset(
        k
        for k in range(div.key_count())
        if (k & 1) == gf2.parity(choice & (k >> 2))
    )
    p = frozenset(range(div.key_count())) - t
    dec = Decomposition(div, t, p)
    want = target_m**2 + (div.n + 2 * l) ** 2 - 1
    if dec.t_dim() != want:
        raise MalformedDecompositionError(
            f"relabeled block split has dimension {dec.t_dim()}, expected {want}"
        )
    return dec
