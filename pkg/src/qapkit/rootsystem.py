"""Root systems of the classical series and G2, and their conjugate-pair
partitions with the two compatibility criteria."""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class RankError(ValueError):
    """Rank below the minimum for the requested series."""


class UnsupportedSystemError(ValueError):
    """No conjugate-pair partition construction for this system."""


Root = tuple[int, ...]


@dataclass(frozen=True)
class RootSystem:
    kind: str
    rank_l: int
    roots: frozenset[Root]

    def __len__(self) -> int:
        return len(self.roots)

    def is_root(self, vec) -> bool:
        return tuple(vec) in self.roots

    def addable(self, r1: Root, r2: Root) -> bool:
        return self.is_root(add(r1, r2))


def add(r1, r2) -> Root:
    return tuple(a + b for a, b in zip(r1, r2))


def neg(r) -> Root:
    return tuple(-a for a in r)


def _unit(i: int, dim: int) -> Root:
    return tuple(1 if j == i else 0 for j in range(dim))


def generate(kind: str, rank_l: int) -> RootSystem:
    """Exact root sets; the A series takes rank_l as the subscript l-1."""
    kind = kind.upper()
    roots: set[Root] = set()
    if kind == "A":
        dim = rank_l + 1
        if rank_l < 1:
            raise RankError("the A series needs rank at least 1")
        for i, j in itertools.permutations(range(dim), 2):
            roots.add(add(_unit(i, dim), neg(_unit(j, dim))))
    elif kind == "D":
        if rank_l <= 3:
            raise RankError("the D series needs rank above 3")
        for i, j in itertools.combinations(range(rank_l), 2):
            for si, sj in itertools.product((1, -1), repeat=2):
                roots.add(
                    tuple(
                        si if k == i else sj if k == j else 0 for k in range(rank_l)
                    )
                )
    elif kind == "B":
        if rank_l <= 2:
            raise RankError("the B series needs rank above 2")
        for i, j in itertools.combinations(range(rank_l), 2):
            for si, sj in itertools.product((1, -1), repeat=2):
                roots.add(
                    tuple(
                        si if k == i else sj if k == j else 0 for k in range(rank_l)
                    )
                )
        for i in range(rank_l):
            roots.add(_unit(i, rank_l))
            roots.add(neg(_unit(i, rank_l)))
    elif kind == "C":
        if rank_l <= 1:
            raise RankError("the C series needs rank above 1")
        for i, j in itertools.combinations(range(rank_l), 2):
            for si, sj in itertools.product((1, -1), repeat=2):
                roots.add(
                    tuple(
                        si if k == i else sj if k == j else 0 for k in range(rank_l)
                    )
                )
        for i in range(rank_l):
            roots.add(tuple(2 if k == i else 0 for k in range(rank_l)))
            roots.add(tuple(-2 if k == i else 0 for k in range(rank_l)))
    elif kind == "G2":
        for i, j in itertools.permutations(range(3), 2):
            roots.add(add(_unit(i, 3), neg(_unit(j, 3))))
        for k in range(3):
            i, j = [x for x in range(3) if x != k]
            long = tuple(
                1 if t in (i, j) else -2 if t == k else 0 for t in range(3)
            )
            roots.add(long)
            roots.add(neg(long))
        rank_l = 2
    else:
        raise UnsupportedSystemError(f"unknown series: {kind}")
    return RootSystem(kind, rank_l, frozenset(roots))


# -- conjugate-pair partitions -------------------------------------------


@dataclass(frozen=True)
class PairPartition:
    """Displayed rows of the conjugate-pair table.

    ``pair_rows`` groups the row names making up one conjugate pair: the
    split tables list the two halves of a pair side by side, the merged
    tables one whole pair per row.
    """

    system: RootSystem
    subspaces: tuple[tuple[str, frozenset[Root]], ...]
    pair_rows: tuple[tuple[str, ...], ...]

    def pair_count(self) -> int:
        return len(self.pair_rows)

    def families(self) -> list[frozenset[frozenset[Root]]]:
        """Rows grouped with their negation partners."""
        neg_map = self.negation_map()
        if neg_map is None:
            raise ValueError("negation placement is not well defined")
        seen, out = set(), []
        rows = dict(self.subspaces)
        for name, _ in self.subspaces:
            if name in seen:
                continue
            mate = neg_map[name]
            seen |= {name, mate}
            out.append(frozenset({rows[name], rows[mate]}))
        return out

    def row_of(self, root: Root) -> str | None:
        for name, members in self.subspaces:
            if root in members:
                return name
        return None

    def negation_map(self) -> dict[str, str] | None:
        out = {}
        for name, members in self.subspaces:
            targets = {self.row_of(neg(r)) for r in members}
            if len(targets) != 1 or None in targets:
                return None
            out[name] = targets.pop()
        return out


def _pair_index(i: int, j: int) -> int:
    return (i - 1) ^ (j - 1)


def qap_partition_of(rs: RootSystem) -> PairPartition:
    """Conjugate-pair rows mirroring the worked tables for A3, D4, B3, C4
    and G2.  Index pairs group by the xor of their 0-based endpoints."""
    kind, l = rs.kind, rs.rank_l
    rows: list[tuple[str, set[Root]]] = []
    pair_rows: list[tuple[str, ...]] = []
    if kind == "A" and l == 3:
        dim = 4
        groups: dict[int, set[Root]] = {}
        for i, j in itertools.combinations(range(1, dim + 1), 2):
            g = _pair_index(i, j)
            groups.setdefault(g, set()).add(add(_unit(i - 1, dim), neg(_unit(j - 1, dim))))
        for g in sorted(groups):
            rows.append((f"W{g}", groups[g]))
            rows.append((f"Wh{g}", {neg(r) for r in groups[g]}))
            pair_rows.append((f"W{g}", f"Wh{g}"))
    elif kind == "D" and l == 4:
        groups = {}
        for i, j in itertools.combinations(range(1, 5), 2):
            g = _pair_index(i, j)
            for sj in (1, -1):
                root = tuple(
                    1 if k == i - 1 else sj if k == j - 1 else 0 for k in range(4)
                )
                groups.setdefault(g, set()).add(root)
        for g in sorted(groups):
            rows.append((f"W{g}", groups[g]))
            rows.append((f"Wh{g}", {neg(r) for r in groups[g]}))
            pair_rows.append((f"W{g}", f"Wh{g}"))
    elif kind == "B" and l == 3:
        # short roots join the row of the pair they degenerate from
        groups = {}
        for i, j in itertools.combinations(range(1, 4), 2):
            g = _pair_index(i, j)
            for si, sj in itertools.product((1, -1), repeat=2):
                groups.setdefault(g, set()).add(
                    tuple(
                        si if k == i - 1 else sj if k == j - 1 else 0
                        for k in range(3)
                    )
                )
        for i in range(1, 4):
            g = _pair_index(i, 4)
            groups.setdefault(g, set()).add(_unit(i - 1, 3))
            groups[g].add(neg(_unit(i - 1, 3)))
        for g in sorted(groups):
            rows.append((f"W{g}", groups[g]))
            pair_rows.append((f"W{g}",))
    elif kind == "C" and l == 4:
        groups = {}
        for i, j in itertools.combinations(range(1, 5), 2):
            g = _pair_index(i, j)
            for sj in (1, -1):
                root = tuple(
                    1 if k == i - 1 else sj if k == j - 1 else 0 for k in range(4)
                )
                groups.setdefault(g, set()).add(root)
        for g in sorted(groups):
            rows.append((f"W{g}", groups[g]))
            rows.append((f"Wh{g}", {neg(r) for r in groups[g]}))
            pair_rows.append((f"W{g}",))
            pair_rows.append((f"Wh{g}",))
        long = {tuple(2 if k == i else 0 for k in range(4)) for i in range(4)}
        rows.append(("W_long", long | {neg(r) for r in long}))
        pair_rows.append(("W_long",))
    elif kind == "G2":
        pairs = [(0, 1), (0, 2), (1, 2)]
        for q, (i, j) in enumerate(pairs, start=1):
            k = [x for x in range(3) if x not in (i, j)][0]
            short = add(_unit(i, 3), neg(_unit(j, 3)))
            long = tuple(
                1 if t in (i, j) else -2 if t == k else 0 for t in range(3)
            )
            rows.append(
                (f"W{q}", {short, neg(short), long, neg(long)})
            )
            pair_rows.append((f"W{q}",))
    else:
        raise UnsupportedSystemError(
            f"no conjugate-pair construction for {kind} rank {l}"
        )
    members = set()
    for _, rr in rows:
        members |= rr
    assert members == set(rs.roots), "partition must cover the root system"
    return PairPartition(
        rs, tuple((n, frozenset(r)) for n, r in rows), tuple(pair_rows)
    )


# -- the two criteria -----------------------------------------------------


@dataclass(frozen=True)
class CriteriaReport:
    negation_ok: bool
    negation_map: dict | None
    addition_ok: bool
    addition_failures: tuple
    family_table: dict

    @property
    def all_pass(self) -> bool:
        return self.negation_ok and self.addition_ok


def verify_criteria(rs: RootSystem, partition: PairPartition) -> CriteriaReport:
    """Criterion 1: negation maps each row onto exactly one row.
    Criterion 2: root addition respects a well-defined composition of
    negation-families, with the sign split multiplicative on rows."""
    neg_map = partition.negation_map()
    negation_ok = neg_map is not None

    family_of: dict[str, int] = {}
    if negation_ok:
        for fam_index, fam in enumerate(partition.families()):
            for name, members in partition.subspaces:
                if members in fam:
                    family_of[name] = fam_index

    failures = []
    table: dict[tuple[int, int], int] = {}
    if negation_ok:
        rows = dict(partition.subspaces)
        for (n1, m1), (n2, m2) in itertools.product(partition.subspaces, repeat=2):
            for r1 in m1:
                for r2 in m2:
                    total = add(r1, r2)
                    if not rs.is_root(total):
                        continue
                    target = partition.row_of(total)
                    key = (family_of[n1], family_of[n2])
                    tfam = family_of[target]
                    if key in table and table[key] != tfam:
                        failures.append((n1, n2, r1, r2, target))
                    table[key] = tfam
    addition_ok = negation_ok and not failures
    return CriteriaReport(
        negation_ok, neg_map, addition_ok, tuple(failures), table
    )


def corrupt_partition(partition: PairPartition) -> PairPartition:
    """Swap one root between two rows; a negative control for criterion 1."""
    rows = [(n, set(m)) for n, m in partition.subspaces]
    moved = None
    for idx, (name, members) in enumerate(rows):
        for root in sorted(members):
            if partition.row_of(neg(root)) != name:
                moved = (idx, root)
                break
        if moved:
            break
    if moved is None:  # every row is negation-closed: move any root over
        moved = (0, sorted(rows[0][1])[0])
    idx, root = moved
    rows[idx][1].discard(root)
    other = (idx + 1) % len(rows)
    rows[other][1].add(root)
    return PairPartition(
        partition.system,
        tuple((n, frozenset(m)) for n, m in rows),
        partition.pair_rows,
    )
