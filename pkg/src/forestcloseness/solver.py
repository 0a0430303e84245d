"""Preconditioned conjugate gradient for singular Laplacian systems.

The augmented Laplacian has the all-ones vector as its only null direction.
Right-hand sides are projected onto its orthogonal complement and iterates
are re-centred after every step, so CG runs on a consistent positive
semidefinite system and returns the minimum-norm (zero-mean) solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.sparse as sp

from .errors import ParameterError, SolverError
from .graph import AugmentedGraph, Graph, volume

__all__ = [
    "SolverConfig",
    "SolveReport",
    "compute_eta",
    "solve_laplacian",
    "solve_laplacian_many",
    "solve_pivot_column",
]

PRECONDITIONERS = ("diagonal", "none")


@dataclass(frozen=True)
class SolverConfig:
    """Target relative residual, iteration cap and preconditioner kind.

    ``max_iter=None`` means ``10 * sqrt(N) + 100`` for an N-vertex system.
    """

    tol: float = 1e-9
    max_iter: Optional[int] = None
    preconditioner: str = "diagonal"

    def __post_init__(self):
        if not self.tol > 0:
            raise ParameterError("solver tolerance must be positive")
        if self.max_iter is not None and self.max_iter < 1:
            raise ParameterError("max_iter must be at least 1")
        if self.preconditioner not in PRECONDITIONERS:
            raise ParameterError(f"preconditioner must be one of {PRECONDITIONERS}")

    def iteration_cap(self, size: int) -> int:
        if self.max_iter is not None:
            return self.max_iter
        return int(10 * math.sqrt(size) + 100)


@dataclass(frozen=True)
class SolveReport:
    x: np.ndarray
    residual: float
    iterations: int


def compute_eta(alpha: float, eps: float, kappa: float, g: Graph) -> float:
    """Solver accuracy that leaves a ``kappa`` share of the error budget to the solve.

    ``eta = kappa * eps / (6 * sqrt(alpha * (c + 2) * vol))`` with
    ``c = n / (alpha * vol)``. An edgeless graph has zero volume; ``n`` is
    used in its place.
    """
    if not 0 < eps < 1:
        raise ParameterError("eps must lie in (0, 1)")
    if not 0 < kappa < 1:
        raise ParameterError("kappa must lie in (0, 1)")
    if not alpha > 0:
        raise ParameterError("alpha must be positive")
    vol = volume(g)
    if vol <= 0:
        vol = float(max(g.n, 1))
    c = g.n / (alpha * vol)
    return kappa * eps / (6.0 * math.sqrt(alpha * (c + 2.0) * vol))


def _inv_diag(lap, cfg):
    if cfg.preconditioner == "none":
        return None
    d = lap.diagonal().astype(np.float64)
    out = np.ones_like(d)
    pos = d > 0
    out[pos] = 1.0 / d[pos]
    return out


def solve_laplacian(lap: sp.spmatrix, b: np.ndarray, cfg: SolverConfig = SolverConfig()) -> SolveReport:
    """Solve ``lap @ x = b`` for a connected graph Laplacian.

    ``b`` is projected to zero mean first. Raises :class:`SolverError` if the
    relative 2-norm residual does not drop below ``cfg.tol`` within the
    iteration cap.
    """
    b = np.asarray(b, dtype=np.float64)
    b = b - b.mean()
    size = b.shape[0]
    bnorm = float(np.linalg.norm(b))
    x = np.zeros(size)
    if bnorm == 0.0:
        return SolveReport(x, 0.0, 0)
    inv_d = _inv_diag(lap, cfg)
    cap = cfg.iteration_cap(size)

    r = b.copy()
    z = r if inv_d is None else inv_d * r
    p = z.copy()
    rz = float(r @ z)
    rel = 1.0
    it = 0
    while it < cap:
        ap = lap @ p
        pap = float(p @ ap)
        if pap <= 0.0:
            break
        step = rz / pap
        x += step * p
        x -= x.mean()
        r -= step * ap
        it += 1
        rel = float(np.linalg.norm(r)) / bnorm
        if rel <= cfg.tol:
            # confirm against the true residual before accepting
            r = b - lap @ x
            rel = float(np.linalg.norm(r)) / bnorm
            if rel <= cfg.tol:
                break
        z = r if inv_d is None else inv_d * r
        rz_new = float(r @ z)
        p = z + (rz_new / rz) * p
        rz = rz_new

    rel = float(np.linalg.norm(b - lap @ x)) / bnorm
    if rel > cfg.tol:
        raise SolverError("conjugate gradient did not converge", rel, it)
    return SolveReport(x, rel, it)


def solve_laplacian_many(lap: sp.spmatrix, b: np.ndarray, cfg: SolverConfig = SolverConfig()) -> SolveReport:
    """Column-wise independent CG on a block of right-hand sides.

    Each column follows exactly the recurrence of :func:`solve_laplacian`
    (columns that have converged are frozen), so a column's result depends
    only on that column and on how the block was batched.
    ``residual`` reports the worst column.
    """
    b = np.array(b, dtype=np.float64, order="C")
    b -= b.mean(axis=0, keepdims=True)
    size, q = b.shape
    bnorm = np.linalg.norm(b, axis=0)
    x = np.zeros_like(b)
    active = bnorm > 0
    safe_bnorm = np.where(active, bnorm, 1.0)
    inv_d = _inv_diag(lap, cfg)
    precond = (lambda v: v) if inv_d is None else (lambda v: inv_d[:, None] * v)
    cap = cfg.iteration_cap(size)

    r = b.copy()
    z = precond(r)
    p = z.copy()
    rz = np.einsum("ij,ij->j", r, z)
    it = 0
    while active.any() and it < cap:
        ap = lap @ p
        pap = np.einsum("ij,ij->j", p, ap)
        ok = active & (pap > 0)
        step = np.where(ok, rz / np.where(ok, pap, 1.0), 0.0)
        x += step * p
        x -= np.where(ok, x.mean(axis=0), 0.0)
        r -= step * ap
        it += 1
        rel = np.linalg.norm(r, axis=0) / safe_bnorm
        done = ok & (rel <= cfg.tol)
        if done.any():
            idx = np.flatnonzero(done)
            true_r = b[:, idx] - lap @ x[:, idx]
            r[:, idx] = true_r
            really = np.linalg.norm(true_r, axis=0) / safe_bnorm[idx] <= cfg.tol
            active[idx[really]] = False
        active &= pap > 0
        z = precond(r)
        rz_new = np.einsum("ij,ij->j", r, z)
        beta = np.where(active, rz_new / np.where(rz != 0, rz, 1.0), 0.0)
        p = np.where(active, z + beta * p, p)
        rz = np.where(active, rz_new, rz)

    res = np.linalg.norm(b - lap @ x, axis=0) / safe_bnorm
    worst = float(res.max(initial=0.0))
    if worst > cfg.tol:
        raise SolverError("block conjugate gradient did not converge", worst, it)
    return SolveReport(x, worst, it)


def solve_pivot_column(ag: AugmentedGraph, cfg: SolverConfig = SolverConfig()) -> SolveReport:
    """Solve ``L* x = e_{u*} - 1/(n+1)``: the universal vertex's pseudoinverse column."""
    size = ag.n + 1
    rhs = np.full(size, -1.0 / size)
    rhs[ag.u_star] += 1.0
    return solve_laplacian(ag.laplacian(), rhs, cfg)
