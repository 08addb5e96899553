"""Numeric KAK factorization of unitaries: SVD type for orthogonal
constraints, symplectic type, cosine-sine type for block constraints,
Clifford-style conjugators onto the diagonal frame, and recursive
factorization along a decomposition sequence."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cossin, schur

from . import gf2
from .bisubalgebra import BiSubalgebra, partner
from .cartan import AI, AII, AIII, Decomposition, decide_type
from .spinor import SpinorIndex, matrix_of_label, symplectic_product

DEFAULT_TOL = 1e-9
RECOMPOSE_TOL = 1e-8


class NumericFailure(RuntimeError):
    """Factorization could not reach the requested tolerance."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


# -- metrics --------------------------------------------------------------


@dataclass(frozen=True)
class Metric:
    kind: str
    matrix: np.ndarray

    def constraint_residual(self, k: np.ndarray) -> float:
        m = self.matrix
        if self.kind == AIII:
            return float(np.linalg.norm(k @ m @ k.conj().T @ m - np.eye(len(m))))
        return float(np.linalg.norm(k @ m @ k.T @ m.T - np.eye(len(m))))


def metric_for(kind: str, n: int, m: int | None = None) -> Metric:
    if kind == AI:
        return Metric(AI, np.eye(n))
    if kind == AII:
        if n % 2:
            raise ValueError("the symplectic metric needs an even dimension")
        h = n // 2
        j = np.zeros((n, n))
        j[:h, h:] = np.eye(h)
        j[h:, :h] = -np.eye(h)
        return Metric(AII, j)
    if kind == AIII:
        m = n // 2 if m is None else m
        return Metric(AIII, np.diag([1.0] * m + [-1.0] * (n - m)))
    raise ValueError(f"unknown metric kind: {kind}")


# -- helpers --------------------------------------------------------------


def haar_random_su(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return q / np.linalg.det(q) ** (1 / n)


def _check_unitary(u: np.ndarray, tol: float):
    n = u.shape[0]
    if u.shape != (n, n) or np.abs(u @ u.conj().T - np.eye(n)).max() > 1e-8:
        raise ValueError("input matrix is not unitary")


def _simdiag_symmetric(x: np.ndarray, y: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Orthogonal matrix diagonalizing two commuting real symmetric ones."""
    n = x.shape[0]
    evx, q = np.linalg.eigh(x)
    start = 0
    while start < n:
        end = start
        while end + 1 < n and evx[end + 1] - evx[start] < tol:
            end += 1
        if end > start:
            block = q[:, start : end + 1]
            sub = block.T @ y @ block
            _, rot = np.linalg.eigh((sub + sub.T) / 2)
            q[:, start : end + 1] = block @ rot
        start = end + 1
    return q


def _eig_clusters(values: np.ndarray, tol: float = 1e-7):
    order = np.argsort(np.angle(values), kind="stable")
    groups: list[list[int]] = []
    for idx in order:
        if groups and abs(values[idx] - values[groups[-1][-1]]) < tol:
            groups[-1].append(idx)
        else:
            groups.append([int(idx)])
    # the spectrum is on the unit circle: merge a wrap-around cluster
    if len(groups) > 1 and abs(values[groups[0][0]] - values[groups[-1][-1]]) < tol:
        groups[0] = groups.pop() + groups[0]
    return groups


# -- the three factorizations ---------------------------------------------


@dataclass
class KakResult:
    kind: str
    k0: np.ndarray
    a: np.ndarray
    k1: np.ndarray
    metric: Metric
    residual: float
    abelian_vector: np.ndarray | None = None

    def factors(self):
        return self.k0, self.a, self.k1


def kak_ai(u: np.ndarray, tol: float = DEFAULT_TOL) -> KakResult:
    """U = K0 A K1 with real special-orthogonal K and diagonal-phase A."""
    _check_unitary(u, tol)
    n = u.shape[0]
    w = u @ u.T
    x, y = (w + w.conj().T).real / 2, w.imag
    q = _simdiag_symmetric((x + x.T) / 2, (y + y.T) / 2)
    d2 = q.T @ w @ q
    if np.abs(d2 - np.diag(np.diag(d2))).max() > tol:
        raise NumericFailure(
            "simultaneous diagonalization failed", float(np.abs(d2).max())
        )
    theta = np.angle(np.diag(d2)) / 2
    a = np.exp(1j * theta)
    k0 = q.astype(complex)
    k1 = a.conj()[:, None] * (q.T @ u)
    if np.abs(k1.imag).max() > 1e-7:
        raise NumericFailure("orthogonal factor is not real", float(np.abs(k1.imag).max()))
    k1 = k1.real.astype(complex)
    if np.linalg.det(k0).real < 0:
        k0[:, 0] *= -1
        k1[0, :] *= -1
    if np.linalg.det(k1).real < 0:
        k1[0, :] *= -1
        a[0] = -a[0]
    A = np.diag(a)
    residual = float(np.linalg.norm(k0 @ A @ k1 - u))
    if residual > RECOMPOSE_TOL:
        raise NumericFailure("recomposition failed", residual)
    return KakResult(AI, k0, A, k1, metric_for(AI, n), residual, theta)


def kak_aii(u: np.ndarray, tol: float = DEFAULT_TOL) -> KakResult:
    """U = K0 A K1 with symplectic-unitary K; A has paired phases."""
    _check_unitary(u, tol)
    n = u.shape[0]
    metric = metric_for(AII, n)
    j = metric.matrix
    h = n // 2
    v = u @ j @ u.T @ j.T
    t, z = schur(v, output="complex")
    values = np.diag(t)
    firsts, partners = [], []
    for group in _eig_clusters(values):
        basis = z[:, group]
        taken: list[np.ndarray] = []
        for _ in range(len(group) // 2):
            cand = basis.copy()
            for vec in taken:
                cand = cand - np.outer(vec, vec.conj() @ cand)
            col = int(np.argmax(np.linalg.norm(cand, axis=0)))
            vec = cand[:, col]
            vec = vec / np.linalg.norm(vec)
            mate = j @ vec.conj()
            firsts.append(vec)
            partners.append(mate)
            taken += [vec, mate]
    k0 = np.column_stack(firsts + [-m for m in partners])
    if np.abs(k0 @ j @ k0.T - j).max() > 1e-6:
        k0 = np.column_stack(firsts + partners)
    if np.abs(k0 @ j @ k0.T - j).max() > 1e-6:
        raise NumericFailure(
            "could not arrange a symplectic eigenbasis",
            float(np.abs(k0 @ j @ k0.T - j).max()),
        )
    d2 = k0.conj().T @ v @ k0
    if np.abs(d2 - np.diag(np.diag(d2))).max() > 1e-7:
        raise NumericFailure("eigenbasis does not diagonalize", float(np.abs(d2).max()))
    half = np.angle(np.diag(d2)[:h]) / 2
    a = np.concatenate([np.exp(1j * half), np.exp(1j * half)])
    A = np.diag(a)
    k1 = A.conj() @ k0.conj().T @ u
    residual = float(np.linalg.norm(k0 @ A @ k1 - u))
    if residual > RECOMPOSE_TOL:
        raise NumericFailure("recomposition failed", residual)
    return KakResult(AII, k0, A, k1, metric, residual, half)


def kak_aiii(u: np.ndarray, m: int, n_low: int, tol: float = DEFAULT_TOL) -> KakResult:
    """Cosine-sine factorization with block-diagonal special-unitary K."""
    _check_unitary(u, tol)
    n = u.shape[0]
    if m + n_low != n or not m >= n_low >= 1:
        raise ValueError("block sizes must satisfy m + n = dim, m >= n >= 1")
    k0, cs, k1 = cossin(u, p=m, q=m)
    # move the rotation planes onto index pairs (k, m + k)
    perm = list(range(m - n_low, m)) + list(range(m - n_low))
    pmat = np.zeros((n, n))
    for new, old in enumerate(perm):
        pmat[new, old] = 1
    for extra in range(m, n):
        pmat[extra, extra] = 1
    k0 = (k0 @ pmat.T).astype(complex)
    a = pmat @ cs @ pmat.T
    # scalar rescale keeps the blocks and pushes the phase across
    k0 *= np.linalg.det(k0) ** (-1 / n)
    k1 = a.T @ k0.conj().T @ u
    residual = float(np.linalg.norm(k0 @ a @ k1 - u))
    if residual > RECOMPOSE_TOL:
        raise NumericFailure("recomposition failed", residual)
    metric = metric_for(AIII, n, m)
    theta = np.array([np.arcsin(np.clip(a[m + k, k].real, -1, 1)) for k in range(n_low)])
    return KakResult(AIII, k0, a.astype(complex), k1, metric, residual, theta)


def kak(kind: str, u: np.ndarray, m: int | None = None, tol: float = DEFAULT_TOL) -> KakResult:
    if kind == AI:
        return kak_ai(u, tol)
    if kind == AII:
        return kak_aii(u, tol)
    if kind == AIII:
        n = u.shape[0]
        m = n // 2 if m is None else m
        return kak_aiii(u, m, n - m, tol)
    raise ValueError(f"unknown factorization kind: {kind}")


# -- conjugator synthesis --------------------------------------------------


def _transvection_matrix(v: int, p: int) -> np.ndarray:
    pv = matrix_of_label(v, p)
    return (np.eye(1 << p) + 1j * pv) / np.sqrt(2)


def _apply_transvection(v: int, x: int, p: int) -> int:
    return x ^ (v * symplectic_product(v, x, p))


def _map_vector(u: int, a: int, fixed: list[int], p: int) -> list[int]:
    """Transvection labels carrying u to a while fixing the given labels.

    Both u and a must have the same symplectic profile against the fixed
    labels; the single-transvection move then fixes them automatically and
    the two-transvection move needs a midpoint matching that profile.
    """
    if u == a:
        return []
    if symplectic_product(u, a, p):
        return [u ^ a]
    for z in range(1, 1 << (2 * p)):
        if not (symplectic_product(u, z, p) and symplectic_product(a, z, p)):
            continue
        if all(
            symplectic_product(f, z, p) == symplectic_product(f, u, p) for f in fixed
        ):
            return [u ^ z, z ^ a]
    raise RuntimeError("no transvection chain found")


def symplectic_transvections(c_basis, d_basis, p: int) -> list[int]:
    """Transvections mapping the (c, d) symplectic basis onto the standard
    diagonal/off-diagonal one."""
    targets_a = [1 << (2 * p - 1 - k) for k in range(p)]
    targets_b = [1 << (p - 1 - k) for k in range(p)]
    current = list(c_basis) + list(d_basis)
    chain: list[int] = []
    fixed: list[int] = []
    for k in range(p):
        for idx, target in ((k, targets_a[k]), (p + k, targets_b[k])):
            u = current[idx]
            guard = fixed + ([targets_a[k]] if idx == p + k else [])
            steps = _map_vector(u, target, guard, p)
            for v in steps:
                chain.append(v)
                current = [_apply_transvection(v, x, p) for x in current]
        fixed += [targets_a[k], targets_b[k]]
    assert current == targets_a + targets_b
    return chain


def synthesize_conjugator(cartan: BiSubalgebra) -> np.ndarray:
    """Unitary Q with Q S Q+ diagonal for every member S of the frame.

    Built from a GF(2) symplectic map factored into transvections, each
    realized as a Clifford-type rotation.
    """
    from .qap import CartanFrame

    frame = CartanFrame(cartan)
    p = cartan.p
    chain = symplectic_transvections(frame.cbasis, frame.dbasis, p)
    q = np.eye(1 << p, dtype=complex)
    for v in chain:  # first transvection acts innermost under conjugation
        q = _transvection_matrix(v, p) @ q
    det = np.linalg.det(q)
    q = q * det ** (-1 / (1 << p))
    for c in cartan.basis:
        image = q @ matrix_of_label(c, p) @ q.conj().T
        if np.abs(image - np.diag(np.diag(image))).max() > 1e-10:
            raise NumericFailure(
                "conjugator does not diagonalize the frame",
                float(np.abs(image - np.diag(np.diag(image))).max()),
            )
    return q


def conjugator_label_map(cartan: BiSubalgebra) -> dict[int, int]:
    """The exact GF(2) action of the synthesized conjugator on labels."""
    from .qap import CartanFrame

    frame = CartanFrame(cartan)
    p = cartan.p
    chain = symplectic_transvections(frame.cbasis, frame.dbasis, p)
    out = {}
    for x in range(1 << (2 * p)):
        y = x
        for v in chain:
            y = _apply_transvection(v, y, p)
        out[x] = y
    return out


# -- recursive factorization ----------------------------------------------


@dataclass
class FactorTree:
    """K and A factors keyed by level and branch string."""

    n: int
    types: tuple[str, ...]
    a_factors: dict[tuple[int, str], np.ndarray] = field(default_factory=dict)
    k_leaves: dict[str, np.ndarray] = field(default_factory=dict)
    residuals: dict[tuple[int, str], float] = field(default_factory=dict)
    metric_residuals: dict[tuple[int, str], float] = field(default_factory=dict)

    @property
    def depth(self) -> int:
        return len(self.types)

    def recompose(self) -> np.ndarray:
        def walk(level: int, s: str) -> np.ndarray:
            if level == self.depth:
                return self.k_leaves[s]
            a = self.a_factors[(level, s)]
            return walk(level + 1, s + "0") @ a @ walk(level + 1, s + "1")

        return walk(0, "")

    def recomposition_residual(self, u: np.ndarray) -> float:
        return float(np.linalg.norm(self.recompose() - u))

    def to_json(self) -> dict:
        def enc(m):
            return [[_format_complex(z) for z in row] for row in m]

        return {
            "n": self.n,
            "types": list(self.types),
            "a_factors": {
                f"level{l}:s={s or '-'}": enc(m) for (l, s), m in sorted(self.a_factors.items())
            },
            "k_leaves": {f"s={s}": enc(m) for s, m in sorted(self.k_leaves.items())},
            "residuals": {
                f"level{l}:s={s or '-'}": r for (l, s), r in sorted(self.residuals.items())
            },
        }


def factorize_sequence(
    u: np.ndarray,
    types,
    tol: float = DEFAULT_TOL,
    mn: tuple[int, int] | None = None,
) -> FactorTree:
    """Recursively factor U with one factorization type per level.

    ``types`` is a list of AI/AII/AIII tags or a DecompositionSequence,
    whose per-level types are then decided from the key structure.
    """
    from .sequence import DecompositionSequence

    if isinstance(types, DecompositionSequence):
        types = tuple(decision.chosen for decision in types.types())
    types = tuple(types)
    n = u.shape[0]
    tree = FactorTree(n, types)

    def descend(mat: np.ndarray, level: int, s: str):
        if level == len(types):
            tree.k_leaves[s] = mat
            return
        kind = types[level]
        m = mn[0] if (mn and kind == AIII) else None
        result = kak(kind, mat, m=m, tol=tol)
        tree.a_factors[(level, s)] = result.a
        tree.residuals[(level, s)] = result.residual
        tree.metric_residuals[(level, s)] = max(
            result.metric.constraint_residual(result.k0),
            result.metric.constraint_residual(result.k1),
        )
        descend(result.k0, level + 1, s + "0")
        descend(result.k1, level + 1, s + "1")

    descend(u, 0, "")
    return tree


# -- compact/noncompact pairing -------------------------------------------


def weyl_trick(dec: Decomposition):
    """Matrix-level check that t with i.p satisfies the same bracket sides."""
    src = dec.source
    t_labels = sorted(x for k in dec.nonnull_t() for x in src.cells[k] if x)
    p_labels = sorted(x for k in dec.nonnull_p() for x in src.cells[k] if x)
    if not t_labels:
        raise ValueError("a decomposition needs a nontrivial subalgebra side")
    p = src.p
    n = 1 << p
    t_mats = [matrix_of_label(x, p) for x in t_labels]
    ip_mats = [1j * matrix_of_label(x, p) for x in p_labels]

    def support_ok(comm, x, y, allowed):
        if np.abs(comm).max() < 1e-12:
            return True
        basis = matrix_of_label(x ^ y, p)
        coeff = np.einsum("ij,ji->", basis.conj().T, comm) / n
        return np.abs(comm - coeff * basis).max() < 1e-9 and (x ^ y) in allowed

    t_set, p_set = set(t_labels), set(p_labels)
    for x, a in zip(t_labels, t_mats):
        for y, b in zip(t_labels, t_mats):
            assert support_ok(a @ b - b @ a, x, y, t_set)
        for y, b in zip(p_labels, ip_mats):
            assert support_ok(a @ b - b @ a, x, y, p_set)
    for x, a in zip(p_labels, ip_mats):
        for y, b in zip(p_labels, ip_mats):
            assert support_ok(a @ b - b @ a, x, y, t_set)
    return t_mats, ip_mats


# -- matrix file format ----------------------------------------------------


def _format_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}i"


def write_matrix(path, u: np.ndarray):
    n = u.shape[0]
    lines = [str(n)]
    for row in u:
        lines.append(" ".join(_format_complex(z) for z in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def parse_complex(token: str) -> complex:
    token = token.strip()
    if token.endswith("i"):
        token = token[:-1] + "j"
    return complex(token)


def read_matrix(path) -> np.ndarray:
    with open(path) as fh:
        lines = [line.strip() for line in fh if line.strip()]
    n = int(lines[0])
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} matrix rows, found {len(lines) - 1}")
    rows = []
    for line in lines[1:]:
        entries = [parse_complex(tok) for tok in line.split()]
        if len(entries) != n:
            raise ValueError("ragged matrix row")
        rows.append(entries)
    return np.array(rows, dtype=complex)
