"""Spinor generators of su(2^p) as pairs of p-bit strings.

A generator carries a row label ``zeta`` and a column label ``alpha``; the
leftmost digit of either string is the most significant bit.  Internally a
generator is packed into the label ``(zeta << p) | alpha`` so that the whole
set of generators is the bitset Z_2^{2p}.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .gf2 import parity

MATRIX_QUBIT_CAP = 5

_SPINOR_RE = re.compile(r"^S\[([01]+)\|([01]+)\]$")

# single-qubit factors keyed by (zeta bit, alpha bit)
_FACTORS = {
    (0, 0): np.eye(2, dtype=complex),
    (1, 0): np.diag([1.0, -1.0]).astype(complex),
    (0, 1): np.array([[0, 1], [1, 0]], dtype=complex),
    (1, 1): np.array([[0, -1j], [1j, 0]], dtype=complex),
}


class DimensionError(ValueError):
    """Operands live on different qubit counts."""


class CapacityError(ValueError):
    """Requested matrix realization exceeds the qubit cap."""


@dataclass(frozen=True, order=True)
class SpinorIndex:
    """One generator S^zeta_alpha of su(2^p)."""

    p: int
    zeta: int
    alpha: int

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be positive")
        top = 1 << self.p
        if not (0 <= self.zeta < top and 0 <= self.alpha < top):
            raise ValueError("labels need exactly p bits")

    @property
    def label(self) -> int:
        return (self.zeta << self.p) | self.alpha

    @classmethod
    def from_label(cls, label: int, p: int) -> "SpinorIndex":
        return cls(p, label >> p, label & ((1 << p) - 1))

    @classmethod
    def parse(cls, text: str) -> "SpinorIndex":
        m = _SPINOR_RE.match(text.strip())
        if not m:
            raise ValueError(f"not a spinor token: {text!r}")
        z, a = m.group(1), m.group(2)
        if len(z) != len(a):
            raise DimensionError("zeta and alpha differ in length")
        return cls(len(z), int(z, 2), int(a, 2))

    def __str__(self) -> str:
        return f"S[{self.zeta:0{self.p}b}|{self.alpha:0{self.p}b}]"

    def is_identity(self) -> bool:
        return self.zeta == 0 and self.alpha == 0

    def is_diagonal(self) -> bool:
        return self.alpha == 0


def _check_same_p(a: SpinorIndex, b: SpinorIndex) -> None:
    if a.p != b.p:
        raise DimensionError(f"mixed qubit counts: {a.p} vs {b.p}")


def bi_add(a: SpinorIndex, b: SpinorIndex) -> SpinorIndex:
    """Group law: bitwise XOR of both labels."""
    _check_same_p(a, b)
    return SpinorIndex(a.p, a.zeta ^ b.zeta, a.alpha ^ b.alpha)


def commutes(a: SpinorIndex, b: SpinorIndex) -> int:
    """1 when the two generators commute, 0 when they anticommute."""
    _check_same_p(a, b)
    return 1 ^ parity(a.zeta & b.alpha) ^ parity(b.zeta & a.alpha)


def commutes_label(x: int, y: int, p: int) -> int:
    """Label-level commutation predicate."""
    mask = (1 << p) - 1
    return 1 ^ parity((x >> p) & (y & mask)) ^ parity((y >> p) & (x & mask))


def symplectic_product(x: int, y: int, p: int) -> int:
    """0 when the labels commute, 1 when they anticommute."""
    return 1 ^ commutes_label(x, y, p)


def epsilon_parity(a: SpinorIndex) -> int:
    """Bisection parity in the diagonal frame: 1 ^ (zeta . alpha)."""
    return 1 ^ parity(a.zeta & a.alpha)


@lru_cache(maxsize=None)
def _matrix_cached(p: int, zeta: int, alpha: int) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for j in range(p):
        bit = p - 1 - j
        out = np.kron(out, _FACTORS[(zeta >> bit) & 1, (alpha >> bit) & 1])
    out.setflags(write=False)
    return out

def matrix_of(a: SpinorIndex, cap: int = MATRIX_QUBIT_CAP) -> np.ndarray:
    """Dense 2^p x 2^p realization; factor j is taken from digit j."""
    if a.p > cap:
        raise CapacityError(f"matrix realization capped at p <= {cap}")
    return _matrix_cached(a.p, a.zeta, a.alpha)


def matrix_of_label(label: int, p: int, cap: int = MATRIX_QUBIT_CAP) -> np.ndarray:
    return matrix_of(SpinorIndex.from_label(label, p), cap)
