"""Approximate diag(Omega) by UST sampling plus one Laplacian solve.

Pipeline: augment the graph, derive the solver accuracy and the sample
count from (eps, delta, kappa), sample spanning trees rooted at the
universal vertex, solve for the universal vertex's pseudoinverse column and
fill in the diagonal. Farness and closeness follow from the diagonal and
its sum because Omega is doubly stochastic.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .dense import closeness_from_farness, forest_matrix
from .errors import ParameterError
from .graph import Graph, augment
from .solver import SolverConfig, compute_eta, solve_pivot_column
from .ust import estimate_resistances, sample_usts

__all__ = [
    "ApproxConfig",
    "DiagResult",
    "ESTIMATORS",
    "compute_tau",
    "approx_diag_forest_matrix",
    "rank_vertices",
    "resolve_seed",
    "result_from_diag",
    "exact_diag_result",
]

ESTIMATORS = ("frequency", "paper")

# the solver aims this factor below eta: the bound is stated in the
# (alpha L + I)-norm, the solver checks the 2-norm residual
SOLVER_SAFETY = 0.1


@dataclass(frozen=True)
class ApproxConfig:
    """Knobs of the sampling approximation.

    ``estimator="frequency"`` uses ``R[v] / tau`` directly;
    ``estimator="paper"`` adds the pivot-column correction
    ``- x[u*] + 2 x[v]``. ``seed=None`` draws fresh entropy, which is
    recorded in the result.
    """

    alpha: float = 1.0
    eps: float = 0.1
    delta: float = 0.1
    kappa: float = 0.5
    seed: Optional[int] = None
    workers: int = 1
    estimator: str = "frequency"
    tau_override: Optional[int] = None

    def __post_init__(self):
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise ParameterError("alpha must be positive")
        for name in ("eps", "delta", "kappa"):
            val = getattr(self, name)
            if not 0 < val < 1:
                raise ParameterError(f"{name} must lie in (0, 1), got {val}")
        if self.workers < 1:
            raise ParameterError("workers must be at least 1")
        if self.estimator not in ESTIMATORS:
            raise ParameterError(f"estimator must be one of {ESTIMATORS}")
        if self.tau_override is not None and self.tau_override < 1:
            raise ParameterError("tau_override must be at least 1")


@dataclass
class DiagResult:
    """Estimated (or exact) forest-matrix diagonal with derived centralities."""

    diag: np.ndarray
    trace_estimate: float
    farness: np.ndarray
    closeness: np.ndarray
    method: str = "ust"
    samples: int = 0
    solver_residual: float = 0.0
    wall_time: float = 0.0
    config: dict = field(default_factory=dict)
    pivot_column: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return int(self.diag.shape[0])

    @property
    def tau_used(self) -> int:
        return self.samples


def compute_tau(eps: float, delta: float, kappa: float, g: Graph) -> int:
    """Sample count ``ceil(ln(2M / delta) / (2 (1 - kappa)^2 eps^2))``.

    ``M = m + n`` is the edge count of the augmented graph.
    """
    if not (0 < eps < 1 and 0 < delta < 1 and 0 < kappa < 1):
        raise ParameterError("eps, delta and kappa must lie in (0, 1)")
    big_m = g.m + g.n
    tau = math.ceil(math.log(2.0 * big_m / delta) / (2.0 * (1.0 - kappa) ** 2 * eps ** 2))
    return max(1, tau)


def resolve_seed(seed):
    """Return ``seed`` or, if None, fresh entropy from the OS."""
    if seed is None:
        return int(np.random.SeedSequence().entropy)
    return int(seed)


def result_from_diag(diag, method, **kw) -> DiagResult:
    """Derive trace, farness and closeness from a diagonal estimate."""
    diag = np.asarray(diag, dtype=np.float64)
    n = diag.shape[0]
    trace = float(diag.sum())
    if n == 1:
        farness = np.zeros(1)
    else:
        farness = n * diag + trace - 2.0
    return DiagResult(diag=diag, trace_estimate=trace, farness=farness,
                      closeness=closeness_from_farness(farness, n), method=method, **kw)


def approx_diag_forest_matrix(g: Graph, cfg: ApproxConfig = ApproxConfig()) -> DiagResult:
    """(eps, delta)-approximation of diag((alpha L + I)^{-1}) by UST sampling.

    Entries are clamped to [0, 1]. The pivot column from the linear solve is
    always computed and kept in ``pivot_column``; it only enters the
    estimate in ``paper`` mode.
    """
    if g.n < 1:
        raise ParameterError("graph must have at least one vertex")
    start = time.perf_counter()
    seed = resolve_seed(cfg.seed)
    echo = asdict(cfg)
    echo["seed"] = seed
    if g.n == 1:
        return result_from_diag(np.ones(1), "ust", samples=0, config=echo,
                                wall_time=time.perf_counter() - start)

    ag = augment(g, cfg.alpha)
    eta = compute_eta(cfg.alpha, cfg.eps, cfg.kappa, g)
    tau = cfg.tau_override or compute_tau(cfg.eps, cfg.delta, cfg.kappa, g)
    echo.update(eta=eta, tau=tau)

    acc = sample_usts(ag, tau, seed, workers=cfg.workers)
    report = solve_pivot_column(ag, SolverConfig(tol=SOLVER_SAFETY * eta))
    x = report.x

    diag = estimate_resistances(acc)
    if cfg.estimator == "paper":
        diag = diag - x[ag.u_star] + 2.0 * x[: g.n]
    diag = np.clip(diag, 0.0, 1.0)

    res = result_from_diag(diag, "ust", samples=tau, solver_residual=report.residual,
                           config=echo, pivot_column=x)
    res.wall_time = time.perf_counter() - start
    return res


RANK_DIGITS = 12


def _tie_key(closeness):
    # scores equal to 12 significant digits count as ties, so symmetric
    # vertices are not split by rounding noise in the inverse
    finite = np.isfinite(closeness)
    key = closeness.copy()
    key[finite] = [float(f"{c:.{RANK_DIGITS}g}") for c in closeness[finite]]
    return key


def rank_vertices(dr: DiagResult, top_k: Optional[int] = None):
    """``(vertex, closeness)`` pairs by descending closeness, ties by ascending id."""
    ids = np.arange(dr.n)
    order = np.lexsort((ids, -_tie_key(dr.closeness)))
    if top_k is not None:
        if top_k < 0:
            raise ParameterError("top_k must be nonnegative")
        order = order[:top_k]
    return [(int(v), float(dr.closeness[v])) for v in order]


def exact_diag_result(g: Graph, alpha: float = 1.0, allow_large: bool = False) -> DiagResult:
    """Dense ground truth packaged like the approximations."""
    start = time.perf_counter()
    diag = np.diag(forest_matrix(g, alpha, allow_large=allow_large)).copy()
    res = result_from_diag(diag, "exact", config={"alpha": float(alpha)})
    res.wall_time = time.perf_counter() - start
    return res
