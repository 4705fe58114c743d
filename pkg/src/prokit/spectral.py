"""Dense numerical oracle for expansion quantities.

Everything here materializes the stochastic matrix, so it is restricted to
graphs with at most :data:`DENSE_CAP` vertices (20 for exhaustive edge
expansion).  ``lambda_a`` is computed as the spectral norm of ``A - J``,
which equals the second largest absolute eigenvalue of ``A`` without having
to decide which copy of the eigenvalue 1 belongs to the stationary vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bits import BitSource
from .errors import NonConvergence, SizeExceedsCap
from .expander import ExplicitGraph

DENSE_CAP = 512
EXPANSION_CAP = 20
SLACK = 1e-9


@dataclass(frozen=True)
class DenseSym:
    """Stochastic matrix kept as exact integer slot counts plus the degree."""

    counts: np.ndarray
    degree: int

    @property
    def n(self) -> int:
        return self.counts.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return self.counts.astype(float) / float(self.degree)

    def rows_are_stochastic(self) -> bool:
        """Row sums equal 1 exactly, checked on the integer counts."""
        return all(int(s) == self.degree for s in self.counts.sum(axis=1))


def dense_stochastic(G: ExplicitGraph, cap: int = DENSE_CAP) -> DenseSym:
    if G.vertex_count > cap:
        raise SizeExceedsCap(f"{G.vertex_count} vertices exceeds the dense cap {cap}")
    counts = G.adjacency_counts()
    if not np.array_equal(counts, counts.T):
        raise ValueError("adjacency counts are not symmetric")
    return DenseSym(counts, G.degree)


def eigenvalues_sym(M, tol: float = 1e-12, max_sweeps: int = 100) -> list[float]:
    """All eigenvalues of a real symmetric matrix, in descending order.

    Cyclic Jacobi: sweep over every off-diagonal pair, annihilating it with a
    plane rotation, until the off-diagonal Frobenius norm drops below ``tol``.
    """
    A = np.array(M.matrix if isinstance(M, DenseSym) else M, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix must be square")
    if n > DENSE_CAP:
        raise SizeExceedsCap(f"dimension {n} exceeds {DENSE_CAP}")
    if not np.allclose(A, A.T, rtol=0, atol=1e-12):
        raise ValueError("matrix is not symmetric")
    A = (A + A.T) / 2
    for _ in range(max_sweeps + 1):
        off_diag = A - np.diag(np.diag(A))
        off = math.sqrt(float(np.sum(off_diag * off_diag)))
        if off < tol:
            return sorted(np.diag(A).tolist(), reverse=True)
        for p in range(n - 1):
            row = A[p]
            for q in np.flatnonzero(np.abs(row[p + 1:]) > 1e-300) + p + 1:
                apq = A[p, q]
                if abs(apq) < 1e-300:
                    continue
                app, aqq = A[p, p], A[q, q]
                theta = (aqq - app) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = A[:, p].copy()
                col_q = A[:, q]
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                A[p, :] = A[:, p]
                A[q, :] = A[:, q]
                A[p, p] = app - t * apq
                A[q, q] = aqq + t * apq
                A[p, q] = A[q, p] = 0.0
    raise NonConvergence(f"off-diagonal norm {off:.3e} after {max_sweeps} sweeps")


def lambda_a(G: ExplicitGraph) -> float:
    """Second largest absolute eigenvalue, as ``||A - J||_2``."""
    D = dense_stochastic(G)
    n = D.n
    eig = eigenvalues_sym(D.matrix - np.full((n, n), 1.0 / n))
    return max(abs(eig[0]), abs(eig[-1]))


def lambda_2(G: ExplicitGraph) -> float:
    """Second largest signed eigenvalue of the stochastic matrix."""
    if G.vertex_count < 2:
        raise ValueError("lambda_2 needs at least two vertices")
    return eigenvalues_sym(dense_stochastic(G))[1]


def spectrum(G: ExplicitGraph) -> list[float]:
    return eigenvalues_sym(dense_stochastic(G))


def edge_expansion(G: ExplicitGraph) -> Fraction:
    """Exact ``min E(S, S^c) / min(|S|, |S^c|)`` over all cuts, by enumeration.

    Loops never cross a cut; parallel edges count with multiplicity.
    """
    n = G.vertex_count
    if n > EXPANSION_CAP:
        raise SizeExceedsCap(f"{n} vertices exceeds the exhaustive cap {EXPANSION_CAP}")
    if n < 2:
        raise ValueError("edge expansion needs at least two vertices")
    counts = G.adjacency_counts()
    if counts.dtype == object or G.degree * n >= 2**62:
        counts = counts.astype(object)
    shifts = np.arange(n)
    best = {}
    chunk = 1 << 14
    for start in range(1, 1 << n, chunk):
        masks = np.arange(start, min(start + chunk, 1 << n))
        member = (masks[:, None] >> shifts) & 1
        sizes = member.sum(axis=1)
        keep = sizes <= n // 2
        member, sizes = member[keep], sizes[keep]
        if not len(sizes):
            continue
        m = member.astype(counts.dtype)
        cut = ((m @ counts) * (1 - m)).sum(axis=1)
        for size in np.unique(sizes):
            c = min(cut[sizes == size])
            size = int(size)
            if size not in best or c < best[size]:
                best[size] = c
    return min(Fraction(int(c), s) for s, c in best.items())


@dataclass(frozen=True)
class CheegerReport:
    lhs: float
    h: Fraction
    rhs: float
    lambda2: float
    passed: bool

    def lines(self) -> list[str]:
        return format_report([("lambda_2", self.lambda2), ("lhs", self.lhs), ("h", self.h),
                              ("rhs", self.rhs), ("pass", self.passed)])


def cheeger_check(G: ExplicitGraph, slack: float = SLACK) -> CheegerReport:
    """Evaluate ``d/2 (1 - l2) <= h(G) <= d sqrt(2 (1 - l2))``."""
    l2 = lambda_2(G)
    h = edge_expansion(G)
    d = G.degree
    lhs = d / 2 * (1 - l2)
    rhs = d * math.sqrt(max(2 * (1 - l2), 0.0))
    passed = lhs <= float(h) + slack and float(h) <= rhs + slack
    return CheegerReport(lhs, h, rhs, l2, passed)


@dataclass(frozen=True)
class QuadraticFormReport:
    trials: int
    lambda_a: float
    worst_general: float
    worst_orthogonal: float
    passed: bool


def quadratic_form_check(G: ExplicitGraph, trials: int, bits: BitSource,
                         slack: float = SLACK) -> QuadraticFormReport:
    """Random-vector check of ``|x'Ax| <= la |x|^2 + (1 - la)(x'u)^2`` and of its
    restriction ``|x'Ax| <= la`` to unit vectors orthogonal to ``u``.

    ``worst_*`` record the largest observed excess of left over right side.
    """
    D = dense_stochastic(G)
    A, n = D.matrix, D.n
    la = lambda_a(G)
    u = np.full(n, 1 / math.sqrt(n))
    worst_g = worst_o = -math.inf
    for _ in range(trials):
        x = np.array([2 * bits.uniform_float() - 1 for _ in range(n)])
        lhs = abs(x @ A @ x)
        rhs = la * (x @ x) + (1 - la) * (x @ u) ** 2
        worst_g = max(worst_g, lhs - rhs)
        y = x - (x @ u) * u
        norm = math.sqrt(y @ y)
        if norm > 1e-12:
            y /= norm
            worst_o = max(worst_o, abs(y @ A @ y) - la)
    passed = worst_g <= slack and worst_o <= slack
    return QuadraticFormReport(trials, la, worst_g, worst_o, passed)


def format_value(v) -> str:
    if isinstance(v, bool):
        return "PASS" if v else "FAIL"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def format_report(pairs) -> list[str]:
    """``quantity<TAB>value`` lines."""
    return [f"{name}\t{format_value(value)}" for name, value in pairs]
