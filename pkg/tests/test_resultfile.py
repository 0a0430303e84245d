import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from forestcloseness.approx import exact_diag_result, result_from_diag
from forestcloseness.generators import star
from forestcloseness.graph import Graph
from forestcloseness.group import greedy_group
from forestcloseness.resultfile import (
    from_diag_result,
    read_group_result,
    read_result,
    write_group_result,
    write_result,
)


def roundtrip(rf, tmp_path):
    path = tmp_path / "r.tsv"
    write_result(rf, path)
    return read_result(path)


def test_exact_roundtrip(tmp_path):
    rf = from_diag_result(exact_diag_result(star(6), 0.7), extra={"graph": "star"})
    back = roundtrip(rf, tmp_path)
    assert back.metadata == rf.metadata
    assert back.records() == rf.records()


def test_infinite_closeness_is_null(tmp_path):
    rf = from_diag_result(exact_diag_result(Graph.from_edges(1, [], [])))
    path = tmp_path / "one.tsv"
    write_result(rf, path)
    assert path.read_text().splitlines()[2] == "0\t1.0\t0.0\tnull"
    assert math.isinf(read_result(path).closeness[0])


def test_labels_and_order(tmp_path):
    g = Graph.from_edges(3, [0, 1], [1, 2], labels=np.array([10, 20, 40]))
    rf = from_diag_result(exact_diag_result(g), labels=g.labels, order=[1, 0, 2])
    back = roundtrip(rf, tmp_path)
    assert back.vertex.tolist() == [20, 10, 40]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=40))
def test_arbitrary_values_roundtrip(tmp_path_factory, diag):
    rf = from_diag_result(result_from_diag(np.array(diag), "ust", config={"seed": 2 ** 100}))
    back = roundtrip(rf, tmp_path_factory.mktemp("rt"))
    assert back.records() == rf.records()
    assert back.metadata["config"]["seed"] == 2 ** 100


def test_group_roundtrip(tmp_path):
    res = greedy_group(star(7), 1.0, 3)
    path = tmp_path / "g.tsv"
    write_group_result(res, path)
    meta, selected, gains, trajectory = read_group_result(path)
    assert selected == res.selected
    assert gains == res.gains
    assert trajectory == res.trajectory
    assert meta["final_farness"] == res.final_farness
