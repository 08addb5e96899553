"""Bi-subalgebras of su(2^p): GF(2) label subspaces closed under bi-addition."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import gf2
from .spinor import SpinorIndex, symplectic_product


class NotMaximalError(ValueError):
    """Argument is not a maximal bi-subalgebra of the given parent."""


class ContainmentError(ValueError):
    """Expected a sub-bi-subalgebra relation that does not hold."""


def partner(label: int, p: int) -> int:
    """Swap the zeta/alpha halves; s(x, y) = parity(partner(x) & y)."""
    mask = (1 << p) - 1
    return ((label & mask) << p) | (label >> p)


@dataclass(frozen=True)
class BiSubalgebra:
    """A GF(2) subspace of generator labels, stored as a reduced basis."""

    p: int
    basis: tuple[int, ...] = field(default=())

    def __post_init__(self):
        canon = gf2.rref(self.basis)
        if canon != tuple(self.basis):
            object.__setattr__(self, "basis", canon)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def order(self) -> int:
        return 2 * self.p - self.dim

    @cached_property
    def members(self) -> frozenset[int]:
        return frozenset(gf2.span(self.basis))

    def __len__(self) -> int:
        return 1 << self.dim

    def __contains__(self, label: int) -> bool:
        return gf2.in_span(label, self.basis)

    def __le__(self, other: "BiSubalgebra") -> bool:
        return all(b in other for b in self.basis)

    def spinors(self) -> tuple[SpinorIndex, ...]:
        return tuple(SpinorIndex.from_label(x, self.p) for x in sorted(self.members))

    def is_abelian(self) -> int:
        basis = self.basis
        for i, x in enumerate(basis):
            for y in basis[i + 1 :]:
                if symplectic_product(x, y, self.p):
                    return 0
        return 1

    def is_cartan(self) -> bool:
        return self.dim == self.p and bool(self.is_abelian())

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "basis": [str(SpinorIndex.from_label(b, self.p)) for b in self.basis],
            "order": self.order,
        }

    @classmethod
    def from_json(cls, data: dict) -> "BiSubalgebra":
        p = int(data["p"])
        labels = [SpinorIndex.parse(tok).label for tok in data["basis"]]
        return cls(p, tuple(labels))


def span_of(generators, p: int | None = None) -> BiSubalgebra:
    """Smallest bi-subalgebra containing the given spinors or labels."""
    gens = list(generators)
    labels = []
    for g in gens:
        if isinstance(g, SpinorIndex):
            if p is None:
                p = g.p
            elif g.p != p:
                raise ValueError("mixed qubit counts in generating set")
            labels.append(g.label)
        else:
            labels.append(int(g))
    if p is None:
        raise ValueError("empty generating set needs an explicit p")
    return BiSubalgebra(p, tuple(labels))


def intrinsic_cartan(p: int) -> BiSubalgebra:
    """The diagonal-frame Cartan subalgebra spanned by all S^nu_0."""
    return BiSubalgebra(p, tuple((1 << (p + j)) for j in range(p)))


@dataclass(frozen=True)
class MaximalBiSubalgebraGroup:
    """All maximal bi-subalgebras of a parent, indexed so indices add."""

    parent: BiSubalgebra

    @property
    def dim(self) -> int:
        return self.parent.dim

    def __len__(self) -> int:
        return 1 << self.dim

    def functional_of(self, label: int) -> int:
        """Index of the member commuting with a label (stabilizer functional)."""
        d = self.dim
        f = 0
        for j, b in enumerate(self.parent.basis):
            if symplectic_product(label, b, self.parent.p):
                f |= 1 << (d - 1 - j)
        return f

    def member(self, index: int) -> BiSubalgebra:
        if not 0 <= index < len(self):
            raise KeyError(f"member index out of range: {index}")
        if index == 0:
            return self.parent
        d = self.dim
        rows = []
        pivot = None
        for j, b in enumerate(self.parent.basis):
            if (index >> (d - 1 - j)) & 1:
                if pivot is None:
                    pivot = b
                else:
                    rows.append(b ^ pivot)
            else:
                rows.append(b)
        return BiSubalgebra(self.parent.p, tuple(rows))

    def index_of(self, sub: BiSubalgebra) -> int:
        """Inverse of member(); raises when sub is not maximal in parent."""
        if sub == self.parent:
            return 0
        if sub.dim != self.dim - 1 or not sub <= self.parent:
            raise NotMaximalError("not a maximal bi-subalgebra of the parent")
        d = self.dim
        f = 0
        for j, b in enumerate(self.parent.basis):
            if b not in sub:
                f |= 1 << (d - 1 - j)
        return f

    def members(self):
        return [self.member(i) for i in range(len(self))]


def enumerate_maximal(parent: BiSubalgebra) -> MaximalBiSubalgebraGroup:
    if parent.dim == 0:
        raise ValueError("the identity bi-subalgebra has no maximal members")
    return MaximalBiSubalgebraGroup(parent)


def sqcap(b1: BiSubalgebra, b2: BiSubalgebra, parent: BiSubalgebra) -> BiSubalgebra:
    """Third-member operation on maximal bi-subalgebras of a parent."""
    group = enumerate_maximal(parent)
    return group.member(group.index_of(b1) ^ group.index_of(b2))


def commutant(b: BiSubalgebra) -> BiSubalgebra:
    """All labels commuting with every member of b."""
    if b.dim == 0:
        rows = tuple(1 << j for j in range(2 * b.p))
        return BiSubalgebra(b.p, rows)
    eqs = [(partner(row, b.p), 0) for row in b.basis]
    _, null = gf2.solve_affine(eqs, 2 * b.p)
    return BiSubalgebra(b.p, null)


def stabilizer_of(a, parent: BiSubalgebra) -> BiSubalgebra:
    """The unique maximal bi-subalgebra of parent commuting with a.

    Returns the parent itself when a commutes with all of it.
    """
    label = a.label if isinstance(a, SpinorIndex) else int(a)
    group = enumerate_maximal(parent)
    return group.member(group.functional_of(label))


def intersect(b1: BiSubalgebra, b2: BiSubalgebra) -> BiSubalgebra:
    small, large = (b1, b2) if b1.dim <= b2.dim else (b2, b1)
    rows = [x for x in small.members if x and x in large]
    return BiSubalgebra(b1.p, tuple(rows))


def coset_index_masks(b: BiSubalgebra) -> tuple[int, ...]:
    """Linear functionals (as masks) indexing the cosets of b, MSB first."""
    width = 2 * b.p
    pivots = {row.bit_length() - 1 for row in b.basis}
    free = [pos for pos in range(width) if pos not in pivots]
    free.sort(reverse=True)
    masks = []
    for pos in free:
        m = 0
        for j in range(width):
            if (gf2.reduce_row(1 << j, b.basis) >> pos) & 1:
                m |= 1 << j
        masks.append(m)
    return tuple(masks)


def cosets_of(b: BiSubalgebra) -> dict[int, frozenset[int]]:
    """The 2^r cosets of b, keyed additively."""
    masks = coset_index_masks(b)
    r = len(masks)
    out: dict[int, set[int]] = {i: set() for i in range(1 << r)}
    for x in range(1 << (2 * b.p)):
        i = 0
        for k, m in enumerate(masks):
            i |= gf2.parity(m & x) << (r - 1 - k)
        out[i].add(x)
    return {i: frozenset(v) for i, v in out.items()}


def extend_to_cartan(b: BiSubalgebra) -> BiSubalgebra:
    """Canonical Cartan subalgebra containing an abelian bi-subalgebra."""
    if not b.is_abelian():
        raise ValueError("only abelian bi-subalgebras extend to a Cartan subalgebra")
    rows = list(b.basis)
    for x in range(1, 1 << (2 * b.p)):
        if len(rows) == b.p:
            break
        if gf2.in_span(x, gf2.rref(rows)):
            continue
        if all(not symplectic_product(x, row, b.p) for row in rows):
            rows.append(x)
    out = BiSubalgebra(b.p, tuple(rows))
    assert out.is_cartan()
    return out
