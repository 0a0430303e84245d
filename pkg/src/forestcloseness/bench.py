"""Accuracy/time benchmark of the UST and JLT approximations against the oracle."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .approx import ApproxConfig, DiagResult, approx_diag_forest_matrix, exact_diag_result
from .errors import ParameterError
from .graph import Graph
from .jlt import JltConfig, jlt_diag
from .metrics import avg_abs_error, kendall_tau, max_abs_error

__all__ = ["BenchRow", "BENCH_COLUMNS", "run_method", "bench", "matched_budget_trial",
           "write_table"]

METHODS = ("ust", "jlt")
BENCH_COLUMNS = ("method", "eps", "seed", "samples", "time_s", "max_abs_err",
                 "avg_abs_err", "kt")


@dataclass
class BenchRow:
    method: str
    eps: float
    seed: int
    samples: int
    time_s: float
    max_abs_err: float
    avg_abs_err: float
    kt: float

    def as_tuple(self):
        return tuple(getattr(self, c) for c in BENCH_COLUMNS)


def run_method(g: Graph, method: str, eps: float, seed: int, alpha: float = 1.0,
               workers: int = 1, **kw) -> DiagResult:
    if method == "ust":
        return approx_diag_forest_matrix(
            g, ApproxConfig(alpha=alpha, eps=eps, seed=seed, workers=workers, **kw))
    if method == "jlt":
        return jlt_diag(g, alpha, JltConfig(eps=eps, seed=seed, workers=workers, **kw))
    raise ParameterError(f"unknown method {method!r}; choose from {METHODS}")


def _row(method, eps, seed, res, truth):
    return BenchRow(
        method=method, eps=float(eps), seed=int(seed), samples=int(res.samples),
        time_s=float(res.wall_time),
        max_abs_err=max_abs_error(res.diag, truth.diag),
        avg_abs_err=avg_abs_error(res.diag, truth.diag),
        kt=kendall_tau(res.closeness, truth.closeness),
    )


def bench(g: Graph, methods: Iterable[str] = METHODS,
          eps_grid: Iterable[float] = (0.05, 0.1, 0.2, 0.3, 0.4, 0.5),
          seeds: Iterable[int] = (0,), alpha: float = 1.0, workers: int = 1,
          truth: Optional[DiagResult] = None) -> list:
    """One row per (method, eps, seed), scored against the dense oracle."""
    truth = truth or exact_diag_result(g, alpha)
    rows = []
    for method in methods:
        for eps in eps_grid:
            for seed in seeds:
                res = run_method(g, method, eps, seed, alpha, workers)
                rows.append(_row(method, eps, seed, res, truth))
    return rows


def matched_budget_trial(g: Graph, eps: float, seed: int, alpha: float = 1.0,
                         truth: Optional[DiagResult] = None):
    """Run UST at ``eps``, then JLT for the same wall time.

    JLT stops after the first batch of solves that crosses the UST time, so
    it never gets less time than UST. Returns ``(ust_row, jlt_row)``.
    """
    truth = truth or exact_diag_result(g, alpha)
    t0 = time.perf_counter()
    ust = run_method(g, "ust", eps, seed, alpha)
    budget = time.perf_counter() - t0
    jlt = jlt_diag(g, alpha, JltConfig(eps=eps, seed=seed, q_override=10 ** 6,
                                       time_budget=budget))
    return _row("ust", eps, seed, ust, truth), _row("jlt", eps, seed, jlt, truth)


def write_table(rows, stream) -> None:
    stream.write("\t".join(BENCH_COLUMNS) + "\n")
    for r in rows:
        stream.write("\t".join(repr(x) if isinstance(x, float) else str(x)
                               for x in r.as_tuple()) + "\n")


def summarize(rows) -> list:
    """Mean time and errors per (method, eps)."""
    out = []
    keys = sorted({(r.method, r.eps) for r in rows})
    for method, eps in keys:
        sel = [r for r in rows if r.method == method and r.eps == eps]
        out.append((method, eps, float(np.mean([r.time_s for r in sel])),
                    float(np.mean([r.max_abs_err for r in sel])),
                    float(np.mean([r.kt for r in sel]))))
    return out
