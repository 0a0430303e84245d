import io
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forestcloseness.errors import GraphFormatError, ParameterError
from forestcloseness.graph import (
    Graph,
    LoadOptions,
    augment,
    load_edge_list,
    volume,
    write_edge_list,
)


def load(text, **kw):
    return load_edge_list(io.StringIO(text), LoadOptions(**kw))


def test_path_lines():
    g = load("0 1\n1 2")
    assert (g.n, g.m) == (3, 2)
    assert np.all(g.weights == 1.0)
    assert not g.weighted


def test_duplicates_merge_by_sum():
    g = load("0 1 2.0\n1 0 3.0")
    assert g.m == 1
    assert g.neighbor_weights(0).tolist() == [5.0]
    assert g.weighted


def test_self_loop_dropped_with_one_warning():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        g = load("0 0\n0 1\n1 1")
    assert g.m == 1
    assert len(caught) == 1
    assert "2 self-loop" in str(caught[0].message)


def test_comments_and_isolated_vertices():
    g = load("% konect\n# snap\n0 4\n")
    assert g.n == 5
    assert g.degrees().tolist() == [1, 0, 0, 0, 1]


def test_one_indexed_and_compact():
    assert load("1 2\n2 3", one_indexed=True).n == 3
    g = load("10 20\n20 40", compact=True)
    assert g.n == 3
    assert g.labels.tolist() == [10, 20, 40]


@pytest.mark.parametrize("text,lineno", [
    ("0 1\n0 1 2 3\n", 2),
    ("0 x\n", 1),
    ("0 1\n\n1 2 -1\n", 3),
    ("0 1 0\n", 1),
    ("0 1 nan\n", 1),
])
def test_parse_errors_carry_line(text, lineno):
    with pytest.raises(GraphFormatError) as exc:
        load(text)
    assert exc.value.lineno == lineno


def test_adjacency_symmetric():
    g = load("0 1 2.5\n1 2\n0 3 0.5")
    a = g.adjacency().toarray()
    np.testing.assert_array_equal(a, a.T)


@pytest.mark.parametrize("g,expected", [
    (Graph.from_edges(2, [0], [1]), 2.0),
    (Graph.from_edges(3, [0, 1, 0], [1, 2, 2]), 6.0),
    (Graph.from_edges(5, [], []), 0.0),
])
def test_volume(g, expected):
    assert volume(g) == expected


def test_augment_k2():
    ag = augment(Graph.from_edges(2, [0], [1]), 3.0)
    assert ag.u_star == 2
    lap = ag.laplacian().toarray()
    np.testing.assert_array_equal(lap, [[4, -3, -1], [-3, 4, -1], [-1, -1, 2]])


def test_augment_edgeless_is_star():
    ag = augment(Graph.from_edges(2, [], []), 1.0)
    assert ag.graph.m == 2
    assert ag.graph.neighbors(2).tolist() == [0, 1]


@pytest.mark.parametrize("alpha", [0.0, -1.0, float("nan"), float("inf")])
def test_augment_rejects_bad_alpha(alpha):
    with pytest.raises(ParameterError):
        augment(Graph.from_edges(2, [0], [1]), alpha)


def test_from_edges_rejects_bad_weight():
    with pytest.raises(ParameterError):
        Graph.from_edges(2, [0], [1], [0.0])


edge_lists = st.integers(1, 12).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1),
                       st.floats(0.1, 10.0)), max_size=30),
))


@settings(max_examples=60, deadline=None)
@given(edge_lists, st.sampled_from([0.5, 1.0, 3.0]))
def test_augment_roundtrip_and_invariants(data, alpha):
    n, edges = data
    u = [a for a, _, _ in edges]
    v = [b for _, b, _ in edges]
    w = [c for _, _, c in edges]
    g = Graph.from_edges(n, u, v, w, weighted=True)
    ag = augment(g, alpha)
    assert ag.graph.n == n + 1
    assert ag.graph.m == g.m + n
    assert ag.graph.degrees()[n] == n
    assert ag.graph.weighted_degrees()[n] == n
    back = ag.source()
    assert back.n == g.n and back.m == g.m
    np.testing.assert_allclose(back.weights, g.weights, rtol=1e-15)
    np.testing.assert_array_equal(back.indices, g.indices)


@settings(max_examples=60, deadline=None)
@given(edge_lists)
def test_writer_reader_roundtrip(data):
    n, edges = data
    g = Graph.from_edges(n, [e[0] for e in edges], [e[1] for e in edges],
                         [e[2] for e in edges], weighted=True)
    buf = io.StringIO()
    write_edge_list(g, buf)
    buf.seek(0)
    h = load_edge_list(buf)
    assert g.same_as(h)
    buf2 = io.StringIO()
    write_edge_list(h, buf2)
    assert buf.getvalue() == buf2.getvalue()
