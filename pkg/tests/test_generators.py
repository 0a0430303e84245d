import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forestcloseness.errors import ParameterError
from forestcloseness.generators import (
    complete,
    disjoint_union,
    erdos_renyi,
    generate,
    grid,
    num_components,
    path,
    star,
)


def test_examples():
    assert star(4).degrees()[0] == 3
    g = grid(3, 3)
    assert (g.n, g.m) == (9, 12)
    assert erdos_renyi(100, 0.05, seed=7).same_as(erdos_renyi(100, 0.05, seed=7))
    assert not erdos_renyi(100, 0.05, seed=7).same_as(erdos_renyi(100, 0.05, seed=8))
    assert complete(5).m == 10
    assert path(5).m == 4


def test_er_density():
    g = erdos_renyi(1000, 0.01, seed=0)
    expected = 0.01 * 1000 * 999 / 2
    assert abs(g.m - expected) < 5 * np.sqrt(expected)
    assert erdos_renyi(10, 1.0, seed=0).m == 45


def test_disjoint_union_components():
    g = disjoint_union(path(3), star(4), complete(3))
    assert g.n == 10
    assert num_components(g) == 3
    assert num_components(erdos_renyi(5, 1e-9, seed=0)) == 5


def test_generate_dispatch():
    assert generate("grid", {"rows": 2, "cols": 5}).m == 13
    assert generate("er", {"n": 50, "p": 0.1}, seed=3).same_as(erdos_renyi(50, 0.1, seed=3))
    with pytest.raises(ParameterError):
        generate("ba", {"n": 5})
    with pytest.raises(ParameterError):
        generate("er", {"n": 5})
    with pytest.raises(ParameterError):
        generate("er", {"n": 5, "p": 1.5})
    with pytest.raises(ParameterError):
        generate("path", {"n": 0})


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 60), st.floats(0.01, 1.0), st.integers(0, 2 ** 32))
def test_er_is_simple(n, p, seed):
    g = erdos_renyi(n, p, seed=seed)
    u, v, w = g.edges()
    assert np.all(u < v)
    assert len(set(zip(u.tolist(), v.tolist()))) == g.m
    assert np.all(w == 1.0)
