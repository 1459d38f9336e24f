from itertools import combinations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mixramsey.constructions import eoo_construction_1
from mixramsey.core import BLUE, RED, EdgeColouring, Graph, GraphError
from mixramsey.cycles import (Absence, BudgetExhausted, CycleWitness, HypothesisError,
                              bipartite_path_all_of_smaller, chvatal_check, components_with_parity,
                              dirac_check, erdos_gallai_guarantee, find_cycle_exact, find_odd_cycle,
                              hamiltonian_cycle, hamiltonian_path_between, has_odd_cycle,
                              longest_cycle_length, moon_moser_check, ore_check, validate_path)

from oracles import has_cycle_of_length, has_hamiltonian_cycle, longest_cycle, random_graph


def test_find_cycle_examples():
    g = EdgeColouring.from_function(5, 2, lambda u, v: BLUE if (v - u) % 5 in (1, 4) else RED)
    w = find_cycle_exact(g, BLUE, 5)
    assert isinstance(w, CycleWitness) and w.validate(g) and w.length == 5
    k4 = EdgeColouring.monochromatic(4)
    assert find_cycle_exact(k4, RED, 3).validate(k4)
    e = eoo_construction_1(8, 7, 7)
    res = find_cycle_exact(e, RED, 8)
    assert isinstance(res, Absence) and res.exhaustive


def test_find_cycle_range_and_budget():
    with pytest.raises(GraphError):
        find_cycle_exact(Graph.complete(4), None, 5)
    with pytest.raises(GraphError):
        find_cycle_exact(Graph.complete(4), None, 2)
    # Petersen graph has no 10-cycle but needs real search to show it
    P = Graph(10, list(nx.petersen_graph().edges()))
    assert isinstance(find_cycle_exact(P, None, 10, budget=3), BudgetExhausted)
    assert isinstance(find_cycle_exact(P, None, 10), Absence)
    assert isinstance(find_cycle_exact(P, None, 9), CycleWitness)


def test_odd_components():
    assert has_odd_cycle(Graph.cycle(6)) == {tuple(range(6)): False}
    assert has_odd_cycle(Graph.cycle(7)) == {tuple(range(7)): True}
    g = Graph(5, [(0, 1), (1, 2), (2, 0), (3, 4)])
    assert has_odd_cycle(g) == {(0, 1, 2): True, (3, 4): False}
    e = eoo_construction_1(6, 5, 5)
    assert not any(has_odd_cycle(e, BLUE).values())
    cyc = find_odd_cycle(Graph.cycle(7), range(7))
    assert len(cyc) % 2 == 1 and CycleWitness(tuple(cyc)).validate(Graph.cycle(7))
    assert find_odd_cycle(Graph.cycle(6), range(6)) is None


def test_hamiltonicity_checks():
    assert dirac_check(Graph.complete(5))
    assert not dirac_check(Graph.cycle(5))
    assert not chvatal_check(Graph.cycle(5))
    assert chvatal_check(Graph.cycle(4))
    X, Y = [0, 2], [1, 3]
    assert moon_moser_check(Graph.cycle(4), X, Y)
    with pytest.raises(GraphError):
        moon_moser_check(Graph.cycle(4), [0, 1], [2, 3])
    with pytest.raises(GraphError):
        moon_moser_check(Graph.complete_bipartite(2, 3), [0, 1], [2, 3, 4])


def test_hamiltonian_paths():
    k6 = Graph.complete(6)
    for u, v in combinations(range(6), 2):
        p = hamiltonian_path_between(k6, u, v)
        assert validate_path(k6, p) and len(p) == 6 and p[0] == u and p[-1] == v
    p = hamiltonian_path_between(Graph.cycle(4), 0, 2)
    assert isinstance(p, Absence)
    p = hamiltonian_path_between(Graph.cycle(4), 0, 1)
    assert validate_path(Graph.cycle(4), p) and len(p) == 4
    with pytest.raises(GraphError):
        hamiltonian_path_between(k6, 1, 1)


def test_hamiltonian_path_matches_brute_force_small():
    rng = np.random.default_rng(11)
    for _ in range(150):
        n = int(rng.integers(3, 8))
        h = random_graph(rng, n, 0.6)
        u, v = 0, n - 1
        res = hamiltonian_path_between(h, u, v)
        G = nx.Graph(h.edges())
        G.add_nodes_from(range(n))
        expect = any(path[0] == u and path[-1] == v or path[0] == v and path[-1] == u
                     for path in nx.all_simple_paths(G, u, v) if len(path) == n)
        assert isinstance(res, list) == expect
        if expect:
            assert validate_path(h, res) and len(res) == n


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 10), st.integers(0, 2**32 - 1))
def test_dirac2_fast_path_always_succeeds(n, seed):
    rng = np.random.default_rng(seed)
    h = random_graph(rng, n, 0.9)
    if 2 * min(h.degrees()) < n + 2:
        return
    for u, v in combinations(range(n), 2):
        p = hamiltonian_path_between(h, u, v)
        assert validate_path(h, p) and len(p) == n and {p[0], p[-1]} == {u, v}


def test_bipartite_path_all_of_smaller():
    h = Graph.complete_bipartite(5, 3)
    X1, X2 = range(5), range(5, 8)
    p = bipartite_path_all_of_smaller(h, X1, X2, 0, 4)
    assert len(p) == 7 and p[0] == 0 and p[-1] == 4 and set(X2) <= set(p)
    # K_{5,3} has no edge to spare under the degree bound; K_{7,3} does
    with pytest.raises(HypothesisError):
        bipartite_path_all_of_smaller(Graph(8, [e for e in h.edges() if e != (1, 5)]), X1, X2, 0, 4)
    X1, X2 = range(7), range(7, 10)
    minus = Graph(10, [e for e in Graph.complete_bipartite(7, 3).edges() if e != (1, 7)])
    p = bipartite_path_all_of_smaller(minus, X1, X2, 0, 4)
    assert validate_path(minus, p) and set(X2) <= set(p)
    with pytest.raises(HypothesisError):
        bipartite_path_all_of_smaller(Graph.complete_bipartite(4, 3), range(4), range(4, 7), 0, 3)


def test_erdos_gallai_examples():
    assert erdos_gallai_guarantee(Graph(6, list(combinations(range(6), 2))[:9]), 4)
    assert not erdos_gallai_guarantee(Graph.cycle(6), 4)
    with pytest.raises(GraphError):
        erdos_gallai_guarantee(Graph.cycle(6), 7)


@settings(max_examples=150, deadline=None)
@given(st.integers(3, 9), st.floats(0.2, 0.9), st.integers(0, 2**32 - 1))
def test_find_cycle_matches_networkx(n, p, seed):
    h = random_graph(np.random.default_rng(seed), n, p)
    for L in range(3, n + 1):
        res = find_cycle_exact(h, None, L)
        assert not isinstance(res, BudgetExhausted)
        if isinstance(res, CycleWitness):
            assert res.validate(h) and res.length == L
        assert isinstance(res, CycleWitness) == has_cycle_of_length(h, L)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 8), st.integers(0, 2**32 - 1))
def test_longest_cycle_matches_networkx(n, seed):
    h = random_graph(np.random.default_rng(seed), n, 0.5)
    assert longest_cycle_length(h) == longest_cycle(h)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 8), st.integers(0, 2**32 - 1))
def test_hamiltonian_cycle_matches_brute_force(n, seed):
    h = random_graph(np.random.default_rng(seed), n, 0.6)
    res = hamiltonian_cycle(h)
    assert isinstance(res, CycleWitness) == has_hamiltonian_cycle(h)
    if isinstance(res, CycleWitness):
        assert res.validate(h) and res.length == n
    if ore_check(h):
        assert isinstance(hamiltonian_cycle(h, method="closure"), CycleWitness)


def test_components_with_parity_sides():
    comps = components_with_parity(Graph.cycle(6))
    (c,) = comps
    a, b = c.sides
    assert sorted(a + b) == list(range(6)) and len(a) == 3
