"""Accuracy measures for comparing estimated centralities against ground truth."""

from __future__ import annotations

from collections.abc import Mapping

import numpy as np
from scipy.stats import kendalltau, rankdata

from .errors import ParameterError

__all__ = ["kendall_tau", "max_abs_error", "avg_abs_error"]


def _aligned(a, b):
    if isinstance(a, Mapping) or isinstance(b, Mapping):
        if not (isinstance(a, Mapping) and isinstance(b, Mapping)):
            raise ParameterError("compare two mappings or two sequences, not a mix")
        if set(a) != set(b):
            raise ParameterError("score mappings cover different vertex sets")
        keys = sorted(a)
        a = [a[k] for k in keys]
        b = [b[k] for k in keys]
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ParameterError(f"length mismatch: {a.shape} vs {b.shape}")
    return a, b


def kendall_tau(scores_a, scores_b) -> float:
    """Tie-aware Kendall tau-b between two score vectors over the same vertices.

    Accepts aligned sequences or mappings ``vertex -> score``. When both
    inputs are fully tied the coefficient is undefined; identical inputs then
    report 1.0 and anything else NaN.
    """
    a, b = _aligned(a=scores_a, b=scores_b)
    if a.size < 2:
        return 1.0
    tau = kendalltau(a, b, variant="b").statistic
    if np.isnan(tau):
        return 1.0 if np.array_equal(rankdata(a), rankdata(b)) else float("nan")
    return float(tau)


def max_abs_error(estimate, oracle) -> float:
    a, b = _aligned(estimate, oracle)
    return float(np.max(np.abs(a - b), initial=0.0))


def avg_abs_error(estimate, oracle) -> float:
    a, b = _aligned(estimate, oracle)
    return float(np.mean(np.abs(a - b))) if a.size else 0.0
