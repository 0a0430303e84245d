"""Greedy maximization of group forest closeness.

Group farness f(S) is the trace of the inverse of the augmented Laplacian
with the rows and columns of S removed. f is non-increasing and
supermodular, so greedily adding the vertex with the largest farness drop
carries the usual (1 - k / (e (k - 1))) guarantee.

The inverse of the reduced Laplacian is kept as a full (n+1)x(n+1) array.
Removing vertex v from the active set is the rank-one (Sherman-Morrison)
downdate ``M - M e_v e_v^T M / M[v, v]``, which also zeroes row and column v,
so deletion is just masking.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .dense import (
    MAX_ORACLE_N,
    group_farness_exact,
    grounded_inverse,
    pseudo_inverse_Lstar,
)
from .errors import OracleSizeError, ParameterError
from .graph import AugmentedGraph, Graph, augment

__all__ = [
    "GroupResult",
    "greedy_group",
    "marginal_gain_exact",
    "marginal_gain_blockwise",
    "greedy_bound",
]

SYMMETRY_REFRESH = 1e-6
_TIE_RTOL = 1e-12


@dataclass
class GroupResult:
    """Greedy selection in pick order.

    ``gains[i]`` is the farness drop caused by ``selected[i + 1]``;
    ``trajectory[i]`` is the farness of the first ``i + 1`` picks.
    """

    selected: list
    gains: list
    trajectory: list
    final_farness: float
    wall_time: float = 0.0
    refreshes: int = 0
    alpha: float = 1.0

    @property
    def final_closeness(self) -> float:
        return 1.0 / self.final_farness


def _pick(values, maximize):
    """Index of the best value; near-ties (relative 1e-12) go to the smallest index."""
    best = values.max() if maximize else values.min()
    slack = _TIE_RTOL * max(1.0, abs(best))
    ok = values >= best - slack if maximize else values <= best + slack
    return int(np.flatnonzero(ok)[0])


def _grounded_from_pinv(pinv, g):
    """Full-size inverse of L* grounded at ``g``; row and column ``g`` are zero."""
    col = pinv[:, g]
    m = pinv - col[:, None] - col[None, :] + pinv[g, g]
    m[g, :] = 0.0
    m[:, g] = 0.0
    return m


def _fresh_full(ag, selected):
    size = ag.n + 1
    keep = np.ones(size, dtype=bool)
    keep[list(selected)] = False
    full = np.zeros((size, size))
    idx = np.flatnonzero(keep)
    full[np.ix_(idx, idx)] = grounded_inverse(ag, selected)
    return full


def greedy_group(g: Graph, alpha: float, k: int,
                 on_step: Optional[Callable] = None,
                 allow_large: bool = False) -> GroupResult:
    """Select ``k`` vertices greedily for maximum group forest closeness.

    The first vertex minimizes ``L*^+[v, v]``; each further pick maximizes
    ``||M e_v||^2 / M[v, v]``, which equals ``f(S) - f(S + v)``. ``on_step``
    (if given) is called as ``on_step(selected, M)`` after every pick with
    the maintained full-size inverse, for verification.
    """
    n = g.n
    if not 1 <= k <= n:
        raise ParameterError(f"k must lie in 1..{n}, got {k}")
    if n + 1 > MAX_ORACLE_N and not allow_large:
        raise OracleSizeError(f"dense greedy limited to {MAX_ORACLE_N} vertices")
    start = time.perf_counter()
    ag = augment(g, alpha)
    pinv = pseudo_inverse_Lstar(ag, allow_large=allow_large)

    first = _pick(np.diag(pinv)[:n], maximize=False)
    selected = [first]
    m = _grounded_from_pinv(pinv, first)
    candidate = np.ones(n + 1, dtype=bool)
    candidate[first] = False
    candidate[n] = False
    farness = float(np.trace(m))
    trajectory = [farness]
    gains = []
    refreshes = 0
    if on_step is not None:
        on_step(list(selected), m)

    while len(selected) < k:
        diag = np.diag(m)
        colsq = np.einsum("ij,ij->j", m, m)
        idx = np.flatnonzero(candidate)
        scores = colsq[idx] / diag[idx]
        v = int(idx[_pick(scores, maximize=True)])
        gain = float(colsq[v] / diag[v])

        mv = m[:, v].copy()
        m -= np.outer(mv, mv) / mv[v]
        m[v, :] = 0.0
        m[:, v] = 0.0
        candidate[v] = False
        selected.append(v)

        if np.abs(m - m.T).max() > SYMMETRY_REFRESH:
            m = _fresh_full(ag, selected)
            refreshes += 1
        new_farness = float(np.trace(m))
        gains.append(gain)
        trajectory.append(new_farness)
        farness = new_farness
        if on_step is not None:
            on_step(list(selected), m)

    return GroupResult(
        selected=selected,
        gains=gains,
        trajectory=trajectory,
        final_farness=farness,
        wall_time=time.perf_counter() - start,
        refreshes=refreshes,
        alpha=float(alpha),
    )


def marginal_gain_exact(ag: AugmentedGraph, group, v: int) -> float:
    """``f(S) - f(S + v)`` from two fresh dense inverses."""
    group = list(group)
    if v in group:
        raise ParameterError("v is already in the group")
    return group_farness_exact(ag, group) - group_farness_exact(ag, group + [v])


def marginal_gain_blockwise(ag: AugmentedGraph, group, v: int) -> float:
    """``||M e_v||^2 / M[v, v]`` with ``M`` the fresh inverse for ``group``."""
    if v in group:
        raise ParameterError("v is already in the group")
    full = _fresh_full(ag, group)
    col = full[:, v]
    return float(col @ col / col[v])


def greedy_bound(k: int) -> float:
    """Approximation factor ``1 - k / (e (k - 1))`` for ``k >= 2``."""
    if k < 2:
        raise ParameterError("bound is stated for k >= 2")
    return 1.0 - k / (math.e * (k - 1))
