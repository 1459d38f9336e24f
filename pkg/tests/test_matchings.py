from fractions import Fraction
from itertools import combinations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mixramsey.constructions import eoo_construction_1
from mixramsey.core import BLUE, RED, EdgeColouring, Graph, MultiColouredGraph
from mixramsey.cycles import HypothesisError
from mixramsey.matchings import (ConnectedMatching, almost_complete_bipartite_matching,
                                 avg_degree_connected_matching, bipartite_max_matching,
                                 dense_bipartite_matching, largest_connected_matching,
                                 largest_mono_component, max_matching, one_hole_components)

from oracles import largest_connected_matching_vertices, matching_number, random_graph, to_nx


def is_matching(h, edges):
    vs = [v for e in edges for v in e]
    return len(vs) == len(set(vs)) and all(h.has_edge(u, v) for u, v in edges)


def test_max_matching_examples():
    assert len(max_matching(Graph(4, [(0, 1), (1, 2), (2, 3)]))) == 2
    assert len(max_matching(Graph.cycle(5))) == 2
    assert max_matching(Graph(3)) == []


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10), st.floats(0.05, 0.9), st.integers(0, 2**32 - 1))
def test_max_matching_matches_oracle(n, p, seed):
    h = random_graph(np.random.default_rng(seed), n, p)
    m = max_matching(h)
    assert is_matching(h, m)
    assert len(m) == matching_number(h)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.floats(0.05, 0.9), st.integers(0, 2**32 - 1))
def test_hopcroft_karp_matches_networkx(a, b, p, seed):
    rng = np.random.default_rng(seed)
    h = Graph(a + b, [(u, a + w) for u in range(a) for w in range(b) if rng.random() < p])
    m = bipartite_max_matching(h, range(a), range(a, a + b))
    assert is_matching(h, m)
    assert len(m) == len(nx.max_weight_matching(to_nx(h), maxcardinality=True))


def test_connected_matching_examples():
    two_tri = Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    cm = largest_connected_matching(two_tri)
    assert cm.vertex_count == 2 and cm.odd
    c6c5 = Graph(11, [(i, (i + 1) % 6) for i in range(6)] + [(6 + i, 6 + (i + 1) % 5) for i in range(5)])
    cm = largest_connected_matching(c6c5, require_odd=True)
    assert cm.vertex_count == 4 and set(cm.component) == set(range(6, 11))
    assert largest_connected_matching(c6c5).vertex_count == 6
    e = eoo_construction_1(8, 7, 7)
    cm = largest_connected_matching(e, RED, require_odd=True)
    assert cm.vertex_count == 6 and cm.validate(e)
    assert largest_connected_matching(Graph(4)) is None
    assert largest_connected_matching(Graph.cycle(4), require_odd=True) is None


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10), st.floats(0.05, 0.6), st.booleans(), st.integers(0, 2**32 - 1))
def test_connected_matching_matches_oracle(n, p, odd, seed):
    h = random_graph(np.random.default_rng(seed), n, p)
    cm = largest_connected_matching(h, require_odd=odd)
    expect = largest_connected_matching_vertices(h, odd)
    assert (cm.vertex_count if cm else 0) == expect
    if cm:
        assert cm.validate(h)


def test_validate_rejects_bad_matchings():
    h = Graph(6, [(0, 1), (1, 2), (3, 4)])
    assert not ConnectedMatching(((0, 1), (3, 4)), None, (0, 1, 2), False).validate(h)
    assert not ConnectedMatching(((0, 1), (1, 2)), None, (0, 1, 2), False).validate(h)
    assert not ConnectedMatching(((0, 1),), None, (0, 1, 2), True).validate(h)
    assert ConnectedMatching(((0, 1),), None, (0, 1, 2), False).validate(h)


def test_l_eleven_examples():
    kmm = Graph(10, [(u, 5 + w) for u in range(5) for w in range(5) if u != w])
    cm = almost_complete_bipartite_matching(kmm, range(5), range(5, 10), 1)
    assert len(cm.edges) >= 4 and is_matching(kmm, cm.edges)
    k64 = Graph.complete_bipartite(6, 4)
    assert len(almost_complete_bipartite_matching(k64, range(6), range(6, 10), 0).edges) == 4
    with pytest.raises(HypothesisError):
        almost_complete_bipartite_matching(kmm, range(5), range(5, 10), 3)
    with pytest.raises(HypothesisError):
        almost_complete_bipartite_matching(Graph.complete_bipartite(3, 4), range(3), range(3, 7), 0)


def test_l_ten_examples():
    k86 = Graph.complete_bipartite(8, 6)
    cm = dense_bipartite_matching(k86, range(8), range(8, 14), Fraction(1, 200))
    assert len(cm.edges) == 6 and cm.validate(k86)
    rng = np.random.default_rng(5)
    all_edges = [(u, 200 + w) for u in range(200) for w in range(100)]
    drop = set(map(int, rng.choice(len(all_edges), 50, replace=False)))
    h = Graph(300, [e for i, e in enumerate(all_edges) if i not in drop])
    cm = dense_bipartite_matching(h, range(200), range(200, 300), Fraction(1, 200))
    assert len(cm.edges) >= 98 and is_matching(h, cm.edges)
    with pytest.raises(HypothesisError):
        dense_bipartite_matching(k86, range(8), range(8, 14), Fraction(1, 50))


def test_avg_degree_examples():
    cm = avg_degree_connected_matching(Graph.complete(6), 5)
    assert cm.vertex_count >= 5 and len(cm.edges) >= 3
    assert avg_degree_connected_matching(Graph.cycle(6), 3) is None


@settings(max_examples=120, deadline=None)
@given(st.integers(3, 9), st.floats(0.3, 0.95), st.integers(0, 2**32 - 1))
def test_avg_degree_always_succeeds(n, p, seed):
    h = random_graph(np.random.default_rng(seed), n, p)
    for m in range(3, n + 1):
        cm = avg_degree_connected_matching(h, m)
        if 2 * h.num_edges() >= m * n:
            assert cm is not None and cm.vertex_count >= m and cm.validate(h)
        else:
            assert cm is None


def two_coloured(n, red_edges):
    red = set(red_edges)
    return EdgeColouring.from_function(n, 2, lambda u, v: RED if (u, v) in red else BLUE)


def test_largest_mono_component_examples():
    allred = EdgeColouring.monochromatic(10, RED, 2)
    rep = largest_mono_component(allred, Fraction(1, 10))
    assert rep.size == 10 and rep.applicable and rep.holds
    cliques = [(u, v) for u, v in combinations(range(10), 2) if (u < 5) == (v < 5)]
    rep = largest_mono_component(two_coloured(10, cliques), Fraction(1, 10))
    assert rep.size == 10 and rep.colour == BLUE


def test_dgf0_sampled():
    rng = np.random.default_rng(17)
    eta = Fraction(1, 20)
    for _ in range(40):
        K = 40
        cb = np.zeros((K, K), dtype=np.uint16)
        for u, v in combinations(range(K), 2):
            if rng.random() < 0.02:
                continue
            cb[u, v] = cb[v, u] = 1 << int(rng.integers(2))
        g = MultiColouredGraph(K, 2, cb)
        rep = largest_mono_component(g, eta)
        if rep.applicable:
            assert rep.size >= 34


def test_one_hole_components():
    rng = np.random.default_rng(2)
    # |W| >= 4 sqrt(eta) K with W half the graph needs eta <= 1/64
    eta = Fraction(1, 64)
    hits = 0
    for _ in range(30):
        K = 64
        g = EdgeColouring.from_function(K, 2, lambda u, v: int(rng.integers(2)))
        W = range(0, 32)
        rep = one_hole_components(g, W, eta)
        assert rep.applicable
        assert rep.holds
        hits += 1
        assert set(rep.W_r) <= set(W) and set(rep.W_b) <= set(W)
    assert hits == 30


def test_one_hole_structured():
    # W joined to the rest in red only; the rest is blue inside
    K = 64
    g = EdgeColouring.from_function(K, 2, lambda u, v: RED if (u < 32) != (v < 32) else BLUE)
    rep = one_hole_components(g, range(32), Fraction(1, 64))
    assert rep.applicable and rep.holds
    assert rep.W_r == tuple(range(32)) and rep.W_b == ()
    assert rep.size == K and rep.colour == RED
