"""GF(2) linear algebra on int bitsets.

Rows are Python ints.  Bit ``w - 1`` is the leftmost column of a width-``w``
row, so the textual form of a bit-string maps to ``int(text, 2)``.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def parity(x: int) -> int:
    return x.bit_count() & 1


def rref(rows: Iterable[int]) -> tuple[int, ...]:
    """Reduced row echelon basis, sorted by leading bit, highest first."""
    basis: list[int] = []  # kept sorted descending; leading bits distinct
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis = [min(b, b ^ row) for b in basis]
            basis.append(row)
            basis.sort(reverse=True)
    return tuple(basis)


def rank(rows: Iterable[int]) -> int:
    return len(rref(rows))


def reduce_row(x: int, basis: Sequence[int]) -> int:
    """Residue of x modulo the span of a descending rref basis."""
    for b in basis:
        x = min(x, x ^ b)
    return x


def in_span(x: int, basis: Sequence[int]) -> bool:
    return reduce_row(x, basis) == 0


def span(basis: Sequence[int]) -> tuple[int, ...]:
    """All 2^k elements spanned by k independent rows, ascending."""
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return tuple(sorted(out))


def coords(x: int, basis: Sequence[int]) -> int:
    """Coordinates of x in a descending rref basis, basis[0] at the MSB.

    Raises ValueError when x is outside the span.
    """
    c = 0
    n = len(basis)
    for j, b in enumerate(basis):
        lead = 1 << (b.bit_length() - 1)
        if x & lead:
            x ^= b
            c |= 1 << (n - 1 - j)
    if x:
        raise ValueError("vector outside the span")
    return c


def solve_affine(equations: Sequence[tuple[int, int]], width: int) -> tuple[int, tuple[int, ...]]:
    """Solve parity(mask & x) = rhs for every (mask, rhs) pair.

    Returns (lexicographically smallest solution, rref nullspace basis).
    Raises ValueError when the system is inconsistent.
    """
    augmented: list[int] = []  # mask << 1 | rhs, sorted descending by mask
    for mask, rhs in equations:
        row = ((mask & ((1 << width) - 1)) << 1) | (rhs & 1)
        for a in augmented:
            lead = 1 << ((a >> 1).bit_length() - 1)
            if (row >> 1) & lead:
                row ^= a
        if row >> 1:
            augmented.append(row)
            augmented.sort(reverse=True)
        elif row & 1:
            raise ValueError("inconsistent linear system")

    pivots = {(r >> 1).bit_length() - 1 for r in augmented}

    def backsolve(target: int, rhs_from_row: bool) -> int:
        x = target
        for row in sorted(augmented, key=lambda r: r >> 1):
            mask, rhs = row >> 1, row & 1
            want = rhs if rhs_from_row else 0
            if parity(mask & x) != want:
                x ^= 1 << (mask.bit_length() - 1)
        return x

    particular = backsolve(0, True)
    null = [backsolve(1 << pos, False) for pos in range(width) if pos not in pivots]
    nullspace = rref(null)
    # Greedy clearing of leading bits minimises over the affine space.
    for v in nullspace:
        if particular & (1 << (v.bit_length() - 1)):
            particular ^= v
    return particular, nullspace


def all_subspaces(width: int) -> list[tuple[int, ...]]:
    """Every GF(2) subspace of Z_2^width as an rref basis (trivial = ())."""
    found: dict[tuple[int, ...], None] = {(): None}
    frontier: list[tuple[int, ...]] = [()]
    while frontier:
        nxt = []
        for basis in frontier:
            members = set(span(basis))
            for v in range(1, 1 << width):
                if v in members:
                    continue
                grown = rref(list(basis) + [v])
                if grown not in found:
                    found[grown] = None
                    nxt.append(grown)
        frontier = nxt
    return list(found)
