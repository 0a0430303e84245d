"""Result files: one JSON metadata line followed by a TSV table.

Per-vertex records carry ``vertex, diag, farness, closeness``. Floats are
written with ``repr`` so reading a file back reproduces every value
exactly; infinite closeness is written as ``null``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .approx import DiagResult
from .errors import GraphFormatError

__all__ = ["ResultFile", "from_diag_result", "write_result", "read_result",
           "write_group_result", "read_group_result"]

COLUMNS = ("vertex", "diag", "farness", "closeness")
GROUP_COLUMNS = ("step", "vertex", "gain", "farness")


@dataclass
class ResultFile:
    metadata: dict
    vertex: np.ndarray
    diag: np.ndarray
    farness: np.ndarray
    closeness: np.ndarray = field(repr=False)

    def records(self):
        return list(zip(self.vertex.tolist(), self.diag.tolist(),
                        self.farness.tolist(), self.closeness.tolist()))

    def by_vertex(self, column: str) -> dict:
        return dict(zip(self.vertex.tolist(), getattr(self, column).tolist()))


def _fmt(x: float) -> str:
    return "null" if math.isinf(x) or math.isnan(x) else repr(float(x))


def _parse(tok: str) -> float:
    return math.inf if tok == "null" else float(tok)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def from_diag_result(dr: DiagResult, labels=None, order=None, extra=None) -> ResultFile:
    """Wrap a :class:`DiagResult`; ``order`` selects and orders the rows."""
    ids = np.arange(dr.n) if order is None else np.asarray(order, dtype=np.int64)
    vertex = ids if labels is None else np.asarray(labels)[ids]
    meta = {
        "method": dr.method,
        "n": dr.n,
        "samples": dr.samples,
        "trace": dr.trace_estimate,
        "solver_residual": dr.solver_residual,
        "wall_time": dr.wall_time,
        "config": dr.config,
    }
    if extra:
        meta.update(extra)
    return ResultFile(
        metadata=_jsonable(meta),
        vertex=np.asarray(vertex, dtype=np.int64),
        diag=dr.diag[ids].copy(),
        farness=dr.farness[ids].copy(),
        closeness=dr.closeness[ids].copy(),
    )


def write_result(rf: ResultFile, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# " + json.dumps(rf.metadata, sort_keys=True) + "\n")
        fh.write("\t".join(COLUMNS) + "\n")
        for v, d, f, c in rf.records():
            fh.write(f"{v}\t{_fmt(d)}\t{_fmt(f)}\t{_fmt(c)}\n")


def _read_table(path, columns):
    with open(path, "r", encoding="utf-8") as fh:
        first = fh.readline()
        if not first.startswith("# "):
            raise GraphFormatError(f"{path}: missing metadata line", 1)
        meta = json.loads(first[2:])
        header = fh.readline().rstrip("\n").split("\t")
        if tuple(header) != columns:
            raise GraphFormatError(f"{path}: unexpected columns {header}", 2)
        rows = [line.rstrip("\n").split("\t") for line in fh if line.strip()]
    return meta, rows


def read_result(path) -> ResultFile:
    meta, rows = _read_table(path, COLUMNS)
    vertex = np.array([int(r[0]) for r in rows], dtype=np.int64)
    cols = [np.array([_parse(r[i]) for r in rows], dtype=np.float64) for i in (1, 2, 3)]
    return ResultFile(meta, vertex, *cols)


def write_group_result(result, path, labels=None, extra=None) -> None:
    meta = {
        "method": "greedy-group",
        "alpha": result.alpha,
        "k": len(result.selected),
        "final_farness": result.final_farness,
        "final_closeness": result.final_closeness,
        "wall_time": result.wall_time,
    }
    if extra:
        meta.update(extra)
    ext = result.selected if labels is None else [int(labels[v]) for v in result.selected]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# " + json.dumps(_jsonable(meta), sort_keys=True) + "\n")
        fh.write("\t".join(GROUP_COLUMNS) + "\n")
        gains = [math.nan] + list(result.gains)
        for i, (v, gain, far) in enumerate(zip(ext, gains, result.trajectory), start=1):
            fh.write(f"{i}\t{v}\t{_fmt(gain)}\t{_fmt(far)}\n")


def read_group_result(path):
    """Return ``(metadata, selected, gains, trajectory)``; the first gain is absent."""
    meta, rows = _read_table(path, GROUP_COLUMNS)
    selected = [int(r[1]) for r in rows]
    gains = [float(r[2]) for r in rows[1:]]
    trajectory = [float(r[3]) for r in rows]
    return meta, selected, gains, trajectory
