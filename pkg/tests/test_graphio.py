import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mixramsey.constructions import eoo_construction_1
from mixramsey.core import EdgeColouring, GraphError, MultiColouredGraph
from mixramsey.graphio import (colouring_from_json, dumps, edge_list_text, graph_from_json,
                               graph_to_json, load_graph, multigraph_from_json, save_graph)

from oracles import random_colouring_matrix


def test_roundtrip_file(tmp_path):
    g = eoo_construction_1(4, 5, 5)
    p = tmp_path / "g.json"
    save_graph(g, p)
    h = load_graph(p)
    assert isinstance(h, EdgeColouring)
    assert h == g
    # dumping again is byte-identical
    assert p.read_text() == dumps(graph_to_json(h))


def test_partial_graph_loads_as_multigraph():
    doc = {"n": 3, "r": 2, "edges": [[0, 1, [0, 1]]]}
    g = graph_from_json(doc)
    assert type(g) is MultiColouredGraph
    assert g.colours_of(0, 1) == {0, 1}


def test_strict_loader_rejects_partial():
    with pytest.raises(GraphError):
        colouring_from_json({"n": 3, "r": 1, "edges": [[0, 1, [0]]]})
    with pytest.raises(GraphError):
        colouring_from_json({"n": 2, "r": 2, "edges": [[0, 1, [0, 1]]]})


@pytest.mark.parametrize("doc", [
    {"n": 3, "r": 1},
    {"n": "3", "r": 1, "edges": []},
    {"n": 3, "r": 1, "edges": [[0, 1]]},
    {"n": 3, "r": 1, "edges": [[0, 1, [0]], [1, 0, [0]]]},
    {"n": 3, "r": 1, "edges": [[0, 5, [0]]]},
])
def test_malformed_documents(doc):
    with pytest.raises(GraphError):
        multigraph_from_json(doc)


def test_edge_list_text():
    g = MultiColouredGraph.from_edges(3, 2, [(0, 1, [0]), (1, 2, [1])])
    assert edge_list_text(g, 1) == "1 2\n"
    assert edge_list_text(g) == "0 1\n1 2\n"


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 10), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_json_roundtrip_property(n, r, seed):
    col = random_colouring_matrix(np.random.default_rng(seed), n, [1 / r] * r)
    g = EdgeColouring.from_matrix(col, r)
    text = dumps(graph_to_json(g))
    assert graph_from_json(json.loads(text)) == g
