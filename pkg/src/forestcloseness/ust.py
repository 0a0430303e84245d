"""Uniform spanning tree sampling on the augmented graph (Wilson's algorithm).

Each sampled tree is rooted at the universal vertex u*. For every tree edge
{v, u*} the accumulator ``R[v]`` is incremented; ``R[v] / tau`` is then an
unbiased estimate of the effective resistance between u* and v, which equals
the forest-matrix diagonal entry ``Omega[v, v]``.

Reproducibility contract: sample ``i`` draws all its randomness from the
stream ``RngStream(seed, i)``. Counts are integers, so merging per-worker
accumulators is exact and the result does not depend on the worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numba
import numpy as np

from .errors import ParameterError
from .graph import AugmentedGraph

__all__ = [
    "RngStream",
    "SampleAccumulator",
    "sample_ust_once",
    "sample_usts",
    "estimate_resistances",
    "wilson_order",
]

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)


@numba.njit(inline="always")
def _mix64(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@numba.njit(inline="always")
def _rotl(x, k):
    return (x << np.uint64(k)) | (x >> np.uint64(64 - k))


@numba.njit(inline="always")
def _seed_stream(key0, key1, index, s):
    # splitmix64 expansion of a per-index start value into xoshiro256** state
    x = key0 ^ _mix64(key1 + np.uint64(index) * _GOLDEN)
    for j in range(4):
        x = x + _GOLDEN
        s[j] = _mix64(x)


@numba.njit(inline="always")
def _next_double(s):
    result = _rotl(s[1] * np.uint64(5), 7) * np.uint64(9)
    t = s[1] << np.uint64(17)
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = _rotl(s[3], 45)
    return float(result >> np.uint64(11)) * (1.0 / 9007199254740992.0)


@numba.njit(cache=True)
def _stream_state(key0, key1, index):
    s = np.empty(4, dtype=np.uint64)
    _seed_stream(key0, key1, index, s)
    return s


@numba.njit(cache=True)
def _stream_doubles(key0, key1, index, count):
    s = np.empty(4, dtype=np.uint64)
    _seed_stream(key0, key1, index, s)
    out = np.empty(count)
    for i in range(count):
        out[i] = _next_double(s)
    return out


@numba.njit(nogil=True, cache=True)
def _wilson_kernel(indptr, indices, cumw, uniform, root, order, key0, key1, start, stop, counts):
    size = indptr.shape[0] - 1
    parent = np.empty(size, dtype=np.int64)
    in_tree = np.empty(size, dtype=np.bool_)
    s = np.empty(4, dtype=np.uint64)
    steps = 0
    for sample in range(start, stop):
        _seed_stream(key0, key1, sample, s)
        in_tree[:] = False
        in_tree[root] = True
        parent[root] = -1
        for v in order:
            u = v
            while not in_tree[u]:
                lo = indptr[u]
                hi = indptr[u + 1]
                r = _next_double(s)
                if uniform:
                    k = lo + int(r * (hi - lo))
                    if k >= hi:
                        k = hi - 1
                else:
                    target = r * cumw[hi - 1]
                    a = lo
                    b = hi - 1
                    while a < b:
                        mid = (a + b) >> 1
                        if cumw[mid] > target:
                            b = mid
                        else:
                            a = mid + 1
                    k = a
                parent[u] = indices[k]
                u = parent[u]
                steps += 1
            # the surviving parent pointers are the loop erasure
            u = v
            while not in_tree[u]:
                in_tree[u] = True
                u = parent[u]
        for v in range(size):
            if v != root and parent[v] == root:
                counts[v] += 1
    return steps


@dataclass(frozen=True)
class RngStream:
    """Random stream number ``index`` derived from master ``seed``.

    Streams are keyed by a :class:`numpy.random.SeedSequence` of the master
    seed; the per-index state is a splitmix64 expansion feeding xoshiro256**.
    """

    seed: int
    index: int = 0

    def key(self):
        return _master_key(self.seed)

    def state(self) -> np.ndarray:
        k0, k1 = self.key()
        return _stream_state(k0, k1, np.int64(self.index))

    def doubles(self, count: int) -> np.ndarray:
        """First ``count`` uniform doubles in [0, 1) of this stream."""
        k0, k1 = self.key()
        return _stream_doubles(k0, k1, np.int64(self.index), count)


def _master_key(seed):
    words = np.random.SeedSequence(int(seed)).generate_state(2, dtype=np.uint64)
    return words[0], words[1]


@dataclass
class SampleAccumulator:
    """Per-vertex counts of sampled tree edges to u*, and the sample count."""

    R: np.ndarray
    tau: int = 0
    steps: int = 0

    @classmethod
    def empty(cls, n: int) -> "SampleAccumulator":
        return cls(np.zeros(n, dtype=np.int64))

    def merge(self, other: "SampleAccumulator") -> "SampleAccumulator":
        self.R += other.R
        self.tau += other.tau
        self.steps += other.steps
        return self


def wilson_order(ag: AugmentedGraph) -> np.ndarray:
    """Original vertices sorted by ascending degree (ties by id)."""
    return np.argsort(ag.base.degrees(), kind="stable").astype(np.int64)


def _is_uniform(ag: AugmentedGraph) -> bool:
    w = ag.graph.weights
    return bool(w.size == 0 or np.all(w == w[0]))


def _run(ag, order, seed, start, stop):
    g = ag.graph
    counts = np.zeros(g.n, dtype=np.int64)
    k0, k1 = _master_key(seed)
    steps = _wilson_kernel(
        g.indptr, g.indices, g.cumweights, _is_uniform(ag), ag.u_star, order,
        k0, k1, np.int64(start), np.int64(stop), counts,
    )
    return counts[: ag.n], int(steps)


def sample_ust_once(ag: AugmentedGraph, rng: RngStream, acc: SampleAccumulator) -> None:
    """Draw the single tree of stream ``rng`` and add its u*-edges to ``acc``."""
    counts, steps = _run(ag, wilson_order(ag), rng.seed, rng.index, rng.index + 1)
    acc.R += counts
    acc.tau += 1
    acc.steps += steps


def _ranges(tau, workers):
    bounds = np.linspace(0, tau, workers + 1).round().astype(np.int64)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def sample_usts(ag: AugmentedGraph, tau: int, seed: int, workers: int = 1) -> SampleAccumulator:
    """Sample ``tau`` spanning trees; tree ``i`` uses ``RngStream(seed, i)``.

    ``workers`` threads each take a contiguous range of sample indices. The
    kernel releases the GIL, and integer counts make the merged result
    identical for every worker count.
    """
    if tau < 1:
        raise ParameterError("tau must be at least 1")
    if workers < 1:
        raise ParameterError("workers must be at least 1")
    order = wilson_order(ag)
    acc = SampleAccumulator.empty(ag.n)
    ranges = _ranges(tau, min(workers, tau))
    if len(ranges) == 1:
        parts = [_run(ag, order, seed, *ranges[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
            parts = list(pool.map(lambda r: _run(ag, order, seed, *r), ranges))
    for counts, steps in parts:
        acc.R += counts
        acc.steps += steps
    acc.tau = tau
    return acc


def estimate_resistances(acc: SampleAccumulator) -> np.ndarray:
    """``R[v] / tau``: estimated effective resistance between u* and each v."""
    if acc.tau < 1:
        raise ParameterError("accumulator holds no samples")
    return acc.R / float(acc.tau)
