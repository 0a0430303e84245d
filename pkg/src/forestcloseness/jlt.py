"""Random-projection baseline for diag(Omega).

Effective resistances in the augmented graph are norms
``|| W^{1/2} B L*^+ (e_u - e_v) ||^2``. Projecting the edge space onto ``q``
random sign vectors turns each row of the sketch into one Laplacian solve.
Only resistances against the universal vertex are needed, and those are the
forest-matrix diagonal.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np
import scipy.sparse as sp

from .approx import DiagResult, resolve_seed, result_from_diag
from .errors import ParameterError
from .graph import AugmentedGraph, Graph, augment
from .solver import SolverConfig, solve_laplacian_many

__all__ = ["JltConfig", "jlt_num_systems", "jlt_diag", "incidence_transpose"]

BATCH = 32


@dataclass(frozen=True)
class JltConfig:
    """Sketch settings.

    ``q_override`` fixes the number of solves. ``time_budget`` (seconds)
    stops after the first batch that exceeds the budget and uses however
    many solves were completed; runs with a budget are not reproducible.
    """

    eps: float = 0.1
    seed: Optional[int] = None
    workers: int = 1
    solver: SolverConfig = field(default_factory=lambda: SolverConfig(tol=1e-6))
    q_override: Optional[int] = None
    time_budget: Optional[float] = None

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise ParameterError("eps must lie in (0, 1)")
        if self.workers < 1:
            raise ParameterError("workers must be at least 1")
        if self.q_override is not None and self.q_override < 1:
            raise ParameterError("q_override must be at least 1")


def jlt_num_systems(n: int, eps: float) -> int:
    """``ceil(ln n / eps^2)`` (at least one)."""
    return max(1, math.ceil(math.log(n) / eps ** 2))


def incidence_transpose(ag: AugmentedGraph) -> sp.csr_matrix:
    """``B^T W^{1/2}``: column e of the weighted incidence matrix is sqrt(w_e)(e_u - e_v)."""
    u, v, w = ag.graph.edges()
    m = u.shape[0]
    sw = np.sqrt(w)
    cols = np.arange(m)
    return sp.csr_matrix(
        (np.concatenate((sw, -sw)), (np.concatenate((u, v)), np.concatenate((cols, cols)))),
        shape=(ag.n + 1, m),
    )


def _signs(seed, index, m):
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
    return rng.integers(0, 2, size=m, dtype=np.int8) * 2.0 - 1.0


def _batch_sums(lap, bt, seed, start, stop, solver, u_star):
    m = bt.shape[1]
    signs = np.stack([_signs(seed, i, m) for i in range(start, stop)], axis=1)
    rep = solve_laplacian_many(lap, bt @ signs, solver)
    z = rep.x
    diff = z[u_star][None, :] - z[:u_star]
    return np.einsum("ij,ij->i", diff, diff), rep.residual


def jlt_diag(g: Graph, alpha: float = 1.0, cfg: JltConfig = JltConfig()) -> DiagResult:
    """Estimate diag(Omega) from ``q`` sketched Laplacian solves.

    Sketch ``i`` uses sign vector stream ``(seed, i)``; solves run in fixed
    batches of 32 and partial sums are added in batch order, so the output
    is identical for every worker count.
    """
    if g.n < 2:
        raise ParameterError("random projections need at least two vertices")
    start = time.perf_counter()
    seed = resolve_seed(cfg.seed)
    ag = augment(g, alpha)
    lap = ag.laplacian()
    bt = incidence_transpose(ag)
    q = cfg.q_override or jlt_num_systems(g.n, cfg.eps)
    batches = [(a, min(a + BATCH, q)) for a in range(0, q, BATCH)]

    def run(b):
        return _batch_sums(lap, bt, seed, b[0], b[1], cfg.solver, ag.u_star)

    total = np.zeros(g.n)
    worst = 0.0
    done = 0
    if cfg.time_budget is not None:
        for b in batches:
            part, res = run(b)
            total += part
            worst = max(worst, res)
            done = b[1]
            if time.perf_counter() - start >= cfg.time_budget:
                break
    else:
        if cfg.workers > 1 and len(batches) > 1:
            with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
                parts = list(pool.map(run, batches))
        else:
            parts = [run(b) for b in batches]
        for part, res in parts:
            total += part
            worst = max(worst, res)
        done = q

    diag = np.clip(total / done, 0.0, 1.0)
    echo = asdict(cfg)
    echo.update(seed=seed, alpha=float(alpha), q=done)
    res = result_from_diag(diag, "jlt", samples=done, solver_residual=worst, config=echo)
    res.wall_time = time.perf_counter() - start
    return res
