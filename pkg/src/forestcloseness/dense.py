"""Dense reference computations.

Everything here inverts or factorizes full matrices, so it is restricted to
small graphs (``MAX_ORACLE_N`` vertices unless ``allow_large`` is set). These
functions are the ground truth the sampling and iterative code is tested
against.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .errors import OracleSizeError, ParameterError
from .graph import AugmentedGraph, Graph

__all__ = [
    "MAX_ORACLE_N",
    "forest_matrix",
    "forest_distance",
    "exact_farness_closeness",
    "closeness_from_farness",
    "laplacian_dense",
    "pseudo_inverse_Lstar",
    "effective_resistance",
    "grounded_inverse",
    "group_farness_exact",
    "brute_force_best_group",
]

MAX_ORACLE_N = 5000
MAX_BRUTE_FORCE_N = 15


def _guard(n, allow_large):
    if n > MAX_ORACLE_N and not allow_large:
        raise OracleSizeError(
            f"dense oracle limited to {MAX_ORACLE_N} vertices (got {n}); pass allow_large=True"
        )


def laplacian_dense(g: Graph) -> np.ndarray:
    return g.laplacian().toarray()


def _spd_inverse(a: np.ndarray) -> np.ndarray:
    factor = cho_factor(a, lower=True, check_finite=False)
    inv = cho_solve(factor, np.eye(a.shape[0]), check_finite=False)
    return 0.5 * (inv + inv.T)


def forest_matrix(g: Graph, alpha: float = 1.0, allow_large: bool = False) -> np.ndarray:
    """Return ``(alpha * L + I)^{-1}``.

    The result is symmetric and doubly stochastic with entries in [0, 1].
    """
    if not alpha > 0:
        raise ParameterError("alpha must be positive")
    if g.n < 1:
        raise ParameterError("graph must have at least one vertex")
    _guard(g.n, allow_large)
    return _spd_inverse(alpha * laplacian_dense(g) + np.eye(g.n))


def forest_distance(g: Graph, alpha: float, u: int, v: int, omega: np.ndarray | None = None) -> float:
    """Forest distance ``Omega[u,u] + Omega[v,v] - 2 Omega[u,v]``; 0 when ``u == v``."""
    if u == v:
        return 0.0
    if omega is None:
        omega = forest_matrix(g, alpha)
    return float(omega[u, u] + omega[v, v] - 2.0 * omega[u, v])


def closeness_from_farness(farness: np.ndarray, n: int) -> np.ndarray:
    """``n / farness``, with ``inf`` wherever the farness is not positive."""
    farness = np.asarray(farness, dtype=np.float64)
    out = np.full(farness.shape, np.inf)
    pos = farness > 0
    out[pos] = n / farness[pos]
    return out


def exact_farness_closeness(g: Graph, alpha: float = 1.0, allow_large: bool = False,
                            omega: np.ndarray | None = None):
    """Exact forest farness and closeness of every vertex.

    Farness is computed twice, by summing pairwise forest distances and by
    ``n * Omega[v,v] + tr(Omega) - 2``; the two must agree to 1e-9 (relative
    to the graph size).

    Returns
    -------
    farness, closeness : ndarray
        Closeness is ``inf`` where the farness is zero (only for n = 1).
    """
    n = g.n
    if omega is None:
        omega = forest_matrix(g, alpha, allow_large=allow_large)
    d = np.diag(omega)
    dist = d[:, None] + d[None, :] - 2.0 * omega
    np.fill_diagonal(dist, 0.0)
    pairwise = dist.sum(axis=1)
    via_trace = n * d + d.sum() - 2.0
    if n == 1:
        via_trace = np.zeros(1)
    if not np.allclose(pairwise, via_trace, rtol=0.0, atol=1e-9 * max(1.0, n / 100.0)):
        raise ArithmeticError("pairwise and trace farness disagree; forest matrix is ill-conditioned")
    return via_trace, closeness_from_farness(via_trace, n)


def pseudo_inverse_Lstar(ag: AugmentedGraph, allow_large: bool = False) -> np.ndarray:
    """Moore-Penrose pseudoinverse of the augmented Laplacian.

    Solves ``(L + J/N) X = I - J/N`` with one Cholesky factorization, which
    is valid because the augmented graph is always connected.
    """
    size = ag.n + 1
    _guard(size, allow_large)
    lap = laplacian_dense(ag.graph)
    shift = np.full((size, size), 1.0 / size)
    factor = cho_factor(lap + shift, lower=True, check_finite=False)
    pinv = cho_solve(factor, np.eye(size) - shift, check_finite=False)
    pinv = 0.5 * (pinv + pinv.T)
    # re-centre columns against rounding
    pinv -= pinv.mean(axis=0, keepdims=True)
    pinv -= pinv.mean(axis=1, keepdims=True)
    return pinv


def effective_resistance(pinv: np.ndarray, u: int, v: int) -> float:
    return float(pinv[u, u] + pinv[v, v] - 2.0 * pinv[u, v])


def grounded_inverse(ag: AugmentedGraph, group) -> np.ndarray:
    """Inverse of the augmented Laplacian with the rows/columns in ``group`` removed.

    The returned matrix is indexed by the remaining vertices in ascending
    order (the universal vertex last).
    """
    keep = _complement(ag, group)
    lap = laplacian_dense(ag.graph)
    return _spd_inverse(lap[np.ix_(keep, keep)])


def _complement(ag: AugmentedGraph, group):
    group = sorted(set(int(s) for s in group))
    if not group:
        raise ParameterError("group must be nonempty")
    if group[0] < 0 or group[-1] >= ag.n:
        raise ParameterError("group members must be original vertices 0..n-1")
    mask = np.ones(ag.n + 1, dtype=bool)
    mask[group] = False
    return np.flatnonzero(mask)


def group_farness_exact(ag: AugmentedGraph, group) -> float:
    """Trace of the inverse of the augmented Laplacian with ``group`` deleted."""
    _guard(ag.n + 1, False)
    return float(np.trace(grounded_inverse(ag, group)))


def brute_force_best_group(ag: AugmentedGraph, k: int):
    """Exhaustively minimize group farness over all size-``k`` subsets.

    Ties go to the lexicographically first subset. Only for ``n <= 15``.
    """
    n = ag.n
    if n > MAX_BRUTE_FORCE_N:
        raise OracleSizeError(f"brute force limited to {MAX_BRUTE_FORCE_N} vertices (got {n})")
    if not 1 <= k <= n:
        raise ParameterError(f"k must lie in 1..{n}")
    lap = laplacian_dense(ag.graph)
    best, best_val = None, math.inf
    for subset in itertools.combinations(range(n), k):
        mask = np.ones(n + 1, dtype=bool)
        mask[list(subset)] = False
        val = float(np.trace(_spd_inverse(lap[np.ix_(mask, mask)])))
        if val < best_val - 1e-12 * abs(best_val if math.isfinite(best_val) else 0.0):
            best, best_val = subset, val
    return tuple(best), best_val
