import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import nx_pinv_lstar, random_instance
from forestcloseness.dense import brute_force_best_group, group_farness_exact
from forestcloseness.errors import OracleSizeError, ParameterError
from forestcloseness.generators import erdos_renyi, star
from forestcloseness.graph import Graph, augment
from forestcloseness.group import (
    greedy_bound,
    greedy_group,
    marginal_gain_blockwise,
    marginal_gain_exact,
)

K2 = Graph.from_edges(2, [0], [1])


def fresh_inverse(ag, selected):
    size = ag.n + 1
    keep = np.setdiff1d(np.arange(size), selected)
    lap = ag.laplacian().toarray()
    full = np.zeros((size, size))
    full[np.ix_(keep, keep)] = np.linalg.inv(lap[np.ix_(keep, keep)])
    return full


def test_k2_single():
    res = greedy_group(K2, 1.0, 1)
    assert res.selected == [0]
    assert res.final_farness == pytest.approx(4 / 3, abs=1e-12)
    assert res.final_closeness == pytest.approx(3 / 4, abs=1e-12)
    assert res.gains == []


def test_star_picks_center():
    assert greedy_group(star(4), 1.0, 1).selected == [0]


@pytest.mark.parametrize("seed", range(5))
def test_full_selection(seed):
    g = random_instance(seed, max_n=15)
    res = greedy_group(g, 1.0, g.n)
    assert sorted(res.selected) == list(range(g.n))
    assert res.final_farness == pytest.approx(1.0 / g.n, rel=1e-9)


def test_k2_gain():
    ag = augment(K2, 1.0)
    assert marginal_gain_exact(ag, [0], 1) == pytest.approx(4 / 3 - 1 / 2, abs=1e-12)
    assert marginal_gain_blockwise(ag, [0], 1) == pytest.approx(5 / 6, abs=1e-12)


def test_first_vertex_is_pinv_argmin():
    for seed in range(6):
        g = random_instance(seed + 400, weighted=True)
        p = nx_pinv_lstar(g, 1.0)
        first = greedy_group(g, 1.0, 1).selected[0]
        assert np.diag(p)[first] == pytest.approx(np.diag(p)[: g.n].min(), abs=1e-12)
        # the same vertex minimizes the singleton group farness
        ag = augment(g, 1.0)
        singles = [group_farness_exact(ag, [v]) for v in range(g.n)]
        assert singles[first] == pytest.approx(min(singles), abs=1e-9)


@pytest.mark.parametrize("seed", range(4))
def test_maintained_inverse_matches_fresh(seed):
    g = erdos_renyi(60 + 30 * seed, 0.08, seed=seed)
    ag = augment(g, 1.0)
    worst = []

    def check(selected, m):
        worst.append(np.linalg.norm(m - fresh_inverse(ag, selected)))

    res = greedy_group(g, 1.0, 12, on_step=check)
    assert len(worst) == 12
    assert max(worst) <= 1e-8
    assert all(gain > 0 for gain in res.gains)
    assert np.all(np.diff(res.trajectory) < 0)
    assert res.final_farness == pytest.approx(group_farness_exact(ag, res.selected), abs=1e-6)
    for i in range(1, len(res.selected)):
        expected = marginal_gain_exact(ag, res.selected[:i], res.selected[i])
        assert res.gains[i - 1] == pytest.approx(expected, rel=1e-8)


@pytest.mark.parametrize("seed", range(6))
def test_each_step_is_best_available(seed):
    g = random_instance(500 + seed, max_n=12)
    ag = augment(g, 0.7)
    res = greedy_group(g, 0.7, min(4, g.n))
    for i in range(1, len(res.selected)):
        base = res.selected[:i]
        gains = [marginal_gain_exact(ag, base, v) for v in range(g.n) if v not in base]
        assert res.gains[i - 1] == pytest.approx(max(gains), rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 4))
def test_bound_against_exhaustive(seed, k):
    g = random_instance(seed, max_n=12, weighted=seed % 2 == 0)
    if g.n < k:
        return
    ag = augment(g, 1.0)
    res = greedy_group(g, 1.0, k)
    v0 = res.selected[0]
    _, opt = brute_force_best_group(ag, k)
    f0 = group_farness_exact(ag, [v0])
    assert f0 - res.final_farness >= greedy_bound(k) * (f0 - opt) - 1e-9


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.data())
def test_blockwise_gain_matches_exact(seed, data):
    g = random_instance(seed, max_n=12)
    ag = augment(g, 1.0)
    size = data.draw(st.integers(1, g.n - 1)) if g.n > 1 else 0
    if size == 0:
        return
    perm = np.random.default_rng(seed).permutation(g.n)
    group, v = list(perm[:size]), int(perm[size])
    assert marginal_gain_blockwise(ag, group, v) == pytest.approx(
        marginal_gain_exact(ag, group, v), abs=1e-8)


def test_symmetric_tie_break():
    # all vertices of a cycle are equivalent: the smallest id wins
    n = 8
    g = Graph.from_edges(n, np.arange(n), (np.arange(n) + 1) % n)
    assert greedy_group(g, 1.0, 1).selected == [0]


def test_bound_value():
    assert greedy_bound(2) == pytest.approx(1 - 2 / np.e)
    with pytest.raises(ParameterError):
        greedy_bound(1)


def test_errors():
    with pytest.raises(ParameterError):
        greedy_group(K2, 1.0, 0)
    with pytest.raises(ParameterError):
        greedy_group(K2, 1.0, 3)
    with pytest.raises(OracleSizeError):
        greedy_group(Graph.from_edges(5000, [], []), 1.0, 1)
    with pytest.raises(ParameterError):
        marginal_gain_exact(augment(K2, 1.0), [0], 0)
