"""Compact undirected weighted graphs, edge-list I/O and the augmented graph.

Adjacency is kept in CSR layout (``indptr``/``indices``/``weights``) so the
random-walk kernels can index it directly. Per-vertex prefix sums of edge
weights (``cumweights``) support weighted neighbour sampling by bisection.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, TextIO

import numpy as np
import scipy.sparse as sp

from .errors import GraphFormatError, ParameterError

__all__ = [
    "Graph",
    "AugmentedGraph",
    "LoadOptions",
    "load_edge_list",
    "read_edge_list",
    "write_edge_list",
    "augment",
    "volume",
]

_HEADER_RE = re.compile(r"n=(\d+)\s+m=(\d+)\s+weighted=([01])")


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple undirected graph with positive edge weights.

    Every edge {u, v} is stored twice, once in each endpoint's row, with
    rows sorted by neighbour id. Self-loops and duplicate entries never
    occur. ``labels`` optionally maps compacted ids back to file ids.
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    weighted: bool = False
    labels: Optional[np.ndarray] = field(default=None, repr=False)

    @classmethod
    def from_edges(cls, n, u, v, w=None, weighted=None, labels=None) -> "Graph":
        """Build a graph from parallel endpoint arrays.

        Parallel edges (in either orientation) are merged by summing their
        weights. Self-loops are silently discarded; callers that need to
        report them must count them beforehand.
        """
        u = np.asarray(u, dtype=np.int64).ravel()
        v = np.asarray(v, dtype=np.int64).ravel()
        if u.shape != v.shape:
            raise ParameterError("endpoint arrays differ in length")
        if w is None:
            w = np.ones(u.shape[0], dtype=np.float64)
        else:
            w = np.asarray(w, dtype=np.float64).ravel()
            if w.shape != u.shape:
                raise ParameterError("weight array length does not match edges")
        if n < 0:
            raise ParameterError("vertex count must be nonnegative")
        if u.size and (min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= n):
            raise ParameterError("edge endpoint outside 0..n-1")
        if w.size and not (np.all(np.isfinite(w)) and np.all(w > 0)):
            raise ParameterError("edge weights must be finite and strictly positive")
        keep = u != v
        u, v, w = u[keep], v[keep], w[keep]
        a = sp.coo_matrix((w, (u, v)), shape=(n, n))
        a = (a + a.T).tocsr()
        a.sum_duplicates()
        a.sort_indices()
        if weighted is None:
            weighted = bool(w.size) and not np.all(w == 1.0)
        return cls(
            n=int(n),
            indptr=a.indptr.astype(np.int64),
            indices=a.indices.astype(np.int64),
            weights=a.data.astype(np.float64),
            weighted=bool(weighted),
            labels=None if labels is None else np.asarray(labels),
        )

    @property
    def m(self) -> int:
        """Number of undirected edges."""
        return int(self.indices.shape[0] // 2)

    def degrees(self) -> np.ndarray:
        """Unweighted degree (neighbour count) of each vertex."""
        return np.diff(self.indptr)

    def weighted_degrees(self) -> np.ndarray:
        """Sum of incident edge weights of each vertex."""
        rows = np.repeat(np.arange(self.n), np.diff(self.indptr))
        return np.bincount(rows, weights=self.weights, minlength=self.n).astype(np.float64)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def neighbor_weights(self, v: int) -> np.ndarray:
        return self.weights[self.indptr[v]:self.indptr[v + 1]]

    @cached_property
    def cumweights(self) -> np.ndarray:
        """Per-row inclusive prefix sums of ``weights`` (restart at each row)."""
        out = np.cumsum(self.weights)
        if out.size:
            row_start = np.repeat(
                np.concatenate(([0.0], out))[self.indptr[:-1]], np.diff(self.indptr)
            )
            out = out - row_start
        return out

    def edges(self):
        """Return ``(u, v, w)`` arrays with ``u < v``, sorted by ``(u, v)``."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        upper = rows < self.indices
        return rows[upper], self.indices[upper], self.weights[upper]

    def adjacency(self) -> sp.csr_matrix:
        return sp.csr_matrix((self.weights, self.indices, self.indptr), shape=(self.n, self.n))

    def laplacian(self) -> sp.csr_matrix:
        a = self.adjacency()
        deg = np.asarray(a.sum(axis=1)).ravel()
        return (sp.diags(deg) - a).tocsr()

    def same_as(self, other: "Graph") -> bool:
        """Exact structural equality (ids, weights, weighted flag)."""
        return (
            self.n == other.n
            and self.weighted == other.weighted
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.weights, other.weights)
        )


def volume(g: Graph) -> float:
    """Sum of weighted degrees, i.e. twice the total edge weight."""
    return float(g.weights.sum())


@dataclass(frozen=True, eq=False)
class AugmentedGraph:
    """Input graph with weights scaled by ``alpha`` plus a universal vertex.

    The universal vertex has id ``n`` and is joined to every original vertex
    by an edge of weight exactly 1. ``graph`` is the full (n+1)-vertex graph.
    """

    base: Graph
    alpha: float
    graph: Graph
    source_weighted: bool = False

    @property
    def n(self) -> int:
        """Number of original vertices."""
        return self.base.n

    @property
    def u_star(self) -> int:
        return self.base.n

    def laplacian(self) -> sp.csr_matrix:
        return self.graph.laplacian()

    def source(self) -> Graph:
        """Recover the unscaled input graph (drop u_star, divide by alpha)."""
        u, v, w = self.base.edges()
        return Graph.from_edges(
            self.n, u, v, w / self.alpha, weighted=self.source_weighted, labels=self.base.labels
        )


def augment(g: Graph, alpha: float) -> AugmentedGraph:
    """Scale every edge by ``alpha`` and attach a universal vertex.

    The result is connected no matter how many components ``g`` has.
    """
    if not (alpha > 0 and math.isfinite(alpha)):
        raise ParameterError(f"alpha must be a positive finite number, got {alpha!r}")
    n = g.n
    scaled = Graph(n, g.indptr, g.indices, g.weights * alpha, g.weighted or alpha != 1.0, g.labels)
    u, v, w = scaled.edges()
    star = np.arange(n, dtype=np.int64)
    full = Graph.from_edges(
        n + 1,
        np.concatenate((u, star)),
        np.concatenate((v, np.full(n, n, dtype=np.int64))),
        np.concatenate((w, np.ones(n))),
        weighted=scaled.weighted,
    )
    return AugmentedGraph(base=scaled, alpha=float(alpha), graph=full, source_weighted=g.weighted)


@dataclass(frozen=True)
class LoadOptions:
    """Edge-list parsing knobs.

    ``compact`` relabels the ids that occur in the file to 0..k-1 in
    ascending order and keeps the original ids in ``Graph.labels``.
    """

    one_indexed: bool = False
    comment_prefixes: tuple = ("#", "%")
    default_weight: float = 1.0
    compact: bool = False


def load_edge_list(stream: Iterable[str], options: Optional[LoadOptions] = None) -> Graph:
    """Parse ``u v`` / ``u v w`` lines into a :class:`Graph`.

    The vertex count is the largest id seen plus one (or the ``n=`` value
    of a header written by :func:`write_edge_list`, whichever is larger).
    Self-loop lines are dropped with a single warning carrying their count;
    repeated edges are merged by summing weights.
    """
    opts = options or LoadOptions()
    if not opts.default_weight > 0:
        raise ParameterError("default weight must be positive")
    us, vs, ws = [], [], []
    header_n = 0
    header_weighted = None
    saw_weight_column = False
    self_loops = 0
    shift = 1 if opts.one_indexed else 0

    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(tuple(opts.comment_prefixes)):
            match = _HEADER_RE.search(line)
            if match:
                header_n = int(match.group(1))
                header_weighted = match.group(3) == "1"
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise GraphFormatError(f"expected 'u v' or 'u v w', got {line!r}", lineno)
        try:
            a, b = int(parts[0]) - shift, int(parts[1]) - shift
        except ValueError:
            raise GraphFormatError(f"vertex ids must be integers, got {line!r}", lineno) from None
        if a < 0 or b < 0:
            raise GraphFormatError(f"vertex id out of range in {line!r}", lineno)
        if len(parts) == 3:
            saw_weight_column = True
            try:
                w = float(parts[2])
            except ValueError:
                raise GraphFormatError(f"weight is not a number in {line!r}", lineno) from None
            if not (w > 0 and math.isfinite(w)):
                raise GraphFormatError(f"weight must be positive and finite, got {parts[2]}", lineno)
        else:
            w = opts.default_weight
        if a == b:
            self_loops += 1
            continue
        us.append(a)
        vs.append(b)
        ws.append(w)

    if self_loops:
        warnings.warn(f"dropped {self_loops} self-loop line(s)", stacklevel=2)

    weighted = header_weighted if header_weighted is not None else saw_weight_column
    u = np.asarray(us, dtype=np.int64)
    v = np.asarray(vs, dtype=np.int64)
    labels = None
    if opts.compact:
        labels, inverse = np.unique(np.concatenate((u, v)), return_inverse=True)
        u, v = inverse[: u.size], inverse[u.size:]
        n = int(labels.size)
    else:
        n = int(max(u.max(initial=-1), v.max(initial=-1)) + 1)
        n = max(n, header_n)
    return Graph.from_edges(n, u, v, np.asarray(ws, dtype=np.float64), weighted=weighted, labels=labels)


def read_edge_list(path, options: Optional[LoadOptions] = None) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return load_edge_list(fh, options)


def write_edge_list(g: Graph, stream: TextIO) -> None:
    """Emit a header comment and ``u v w`` lines sorted by ``(u, v)``, u < v."""
    stream.write(f"# n={g.n} m={g.m} weighted={int(g.weighted)}\n")
    for a, b, w in zip(*g.edges()):
        stream.write(f"{a} {b} {float(w)!r}\n")
