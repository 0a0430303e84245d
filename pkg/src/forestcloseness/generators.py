"""Small deterministic graph generators for tests and benchmarks."""

from __future__ import annotations

import numpy as np
from scipy.sparse.csgraph import connected_components

from .errors import ParameterError
from .graph import Graph

__all__ = ["MODELS", "generate", "erdos_renyi", "path", "star", "complete", "grid",
           "disjoint_union", "num_components"]


def _need(n, low=1):
    if int(n) != n or n < low:
        raise ParameterError(f"vertex count must be an integer >= {low}, got {n}")
    return int(n)


def erdos_renyi(n, p, seed=0) -> Graph:
    """G(n, p): draw the edge count, then that many distinct vertex pairs."""
    n = _need(n)
    if not 0 < p <= 1:
        raise ParameterError(f"p must lie in (0, 1], got {p}")
    rng = np.random.default_rng(seed)
    pairs = n * (n - 1) // 2
    count = int(rng.binomial(pairs, p)) if pairs else 0
    picks = np.sort(rng.choice(pairs, size=count, replace=False)) if count else np.zeros(0, np.int64)
    # row i of the strict upper triangle starts at i*n - i*(i+1)/2
    rows = np.arange(n, dtype=np.int64)
    starts = rows * n - rows * (rows + 1) // 2
    u = np.searchsorted(starts, picks, side="right") - 1
    v = picks - starts[u] + u + 1
    return Graph.from_edges(n, u, v)


def path(n) -> Graph:
    n = _need(n)
    a = np.arange(n - 1)
    return Graph.from_edges(n, a, a + 1)


def star(n) -> Graph:
    """Vertex 0 joined to vertices 1..n-1."""
    n = _need(n)
    leaves = np.arange(1, n)
    return Graph.from_edges(n, np.zeros_like(leaves), leaves)


def complete(n) -> Graph:
    n = _need(n)
    u, v = np.triu_indices(n, k=1)
    return Graph.from_edges(n, u, v)


def grid(rows, cols) -> Graph:
    rows, cols = _need(rows), _need(cols)
    ids = np.arange(rows * cols).reshape(rows, cols)
    u = np.concatenate((ids[:, :-1].ravel(), ids[:-1, :].ravel()))
    v = np.concatenate((ids[:, 1:].ravel(), ids[1:, :].ravel()))
    return Graph.from_edges(rows * cols, u, v)


def disjoint_union(*graphs: Graph) -> Graph:
    """Place the graphs side by side, relabelling ids consecutively."""
    us, vs, ws = [], [], []
    offset = 0
    for g in graphs:
        u, v, w = g.edges()
        us.append(u + offset)
        vs.append(v + offset)
        ws.append(w)
        offset += g.n
    weighted = any(g.weighted for g in graphs)
    if not us:
        return Graph.from_edges(0, [], [])
    return Graph.from_edges(offset, np.concatenate(us), np.concatenate(vs), np.concatenate(ws),
                            weighted=weighted)


def num_components(g: Graph) -> int:
    return int(connected_components(g.adjacency(), directed=False)[0])


MODELS = {
    "er": (erdos_renyi, ("n", "p")),
    "path": (path, ("n",)),
    "star": (star, ("n",)),
    "complete": (complete, ("n",)),
    "grid": (grid, ("rows", "cols")),
}


def generate(model: str, params: dict, seed=0) -> Graph:
    """Dispatch to a generator by name; only ``er`` consumes the seed."""
    if model not in MODELS:
        raise ParameterError(f"unknown model {model!r}; choose from {sorted(MODELS)}")
    fn, names = MODELS[model]
    missing = [k for k in names if params.get(k) is None]
    if missing:
        raise ParameterError(f"model {model!r} needs parameter(s): {', '.join(missing)}")
    args = [params[k] for k in names]
    if model == "er":
        return fn(*args, seed=seed)
    return fn(*args)
