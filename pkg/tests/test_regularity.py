from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mixramsey.core import BLUE, RED, EdgeColouring, Graph, GraphError
from mixramsey.cycles import CycleWitness, HypothesisError, validate_path
from mixramsey.matchings import ConnectedMatching
from mixramsey.regularity import (CapacityError, EmbeddingError, ParityError, Partition,
                                  blow_up_capacity, blow_up_matching_to_cycle, build_reduced_graph,
                                  embed_long_path, equitable_random_partition, plan_blow_up)

from builders import TEMPLATE, blocks_partition, blow_up_template


def test_partition_validation():
    with pytest.raises(GraphError):
        Partition((), ((0, 1), (2,)))
    with pytest.raises(GraphError):
        Partition((0,), ((0, 1), (2, 3)))
    p = Partition((4,), ((3, 2), (1, 0)))
    assert p.parts == ((2, 3), (0, 1)) and p.K == 2
    p.check(5)
    with pytest.raises(GraphError):
        p.check(6)
    assert Partition.from_json(p.to_json()) == p
    assert p.exceptional_small(Fraction(1, 5)) and not p.exceptional_small(Fraction(1, 10))


def test_equitable_random_partition():
    p = equitable_random_partition(20, 4, seed=1)
    assert [len(P) for P in p.parts] == [5] * 4 and p.V0 == ()
    q = equitable_random_partition(22, 4, seed=1)
    assert [len(P) for P in q.parts] == [5] * 4 and len(q.V0) == 2
    assert equitable_random_partition(22, 4, seed=9) == equitable_random_partition(22, 4, seed=9)
    with pytest.raises(GraphError):
        equitable_random_partition(3, 4)


def test_reduced_graph_recovers_template():
    g = blow_up_template(5)
    rg = build_reduced_graph(g, blocks_partition(4, 5), Fraction(1, 10), Fraction(1, 2))
    for (i, j), c in TEMPLATE.items():
        assert rg.graph.colours_of(i, j) == {c}
    assert rg.regular[~np.eye(4, dtype=bool)].all()
    assert rg.provenance()["mode"] == "exact" and not rg.sampled_pairs


def test_reduced_graph_all_red_and_high_threshold():
    g = EdgeColouring.monochromatic(20, RED, 3)
    pi = blocks_partition(4, 5)
    rg = build_reduced_graph(g, pi, Fraction(1, 10), Fraction(1, 2))
    assert all(rg.graph.colours_of(i, j) == {RED} for i, j in combinations(range(4), 2))
    empty = build_reduced_graph(g, pi, Fraction(1, 10), Fraction(11, 10))
    assert empty.graph.support().num_edges() == 0


def test_reduced_graph_mode_fallback():
    g = EdgeColouring.monochromatic(30, RED, 3)
    rg = build_reduced_graph(g, blocks_partition(2, 15), Fraction(1, 10), Fraction(1, 2))
    assert rg.sampled_pairs and rg.provenance()["sampled"]
    rg = build_reduced_graph(g, blocks_partition(2, 15), Fraction(1, 10), Fraction(1, 2), mode="claimed")
    assert not rg.sampled_pairs and rg.mode == "claimed"
    with pytest.raises(GraphError):
        build_reduced_graph(g, blocks_partition(2, 15), Fraction(1, 10), Fraction(1, 2), mode="maybe")


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.fractions(0, 1), st.fractions(0, 1))
def test_xi_monotone(seed, xi1, xi2):
    rng = np.random.default_rng(seed)
    g = EdgeColouring.from_function(12, 3, lambda u, v: int(rng.integers(3)))
    pi = blocks_partition(3, 4)
    lo, hi = sorted((xi1, xi2))
    a = build_reduced_graph(g, pi, Fraction(1, 2), lo)
    b = build_reduced_graph(g, pi, Fraction(1, 2), hi)
    for i, j in combinations(range(3), 2):
        assert b.graph.colours_of(i, j) <= a.graph.colours_of(i, j)


def random_pair(rng, a, b, p):
    return Graph(a + b, [(u, a + w) for u in range(a) for w in range(b) if rng.random() < p])


def test_embed_long_path_complete():
    h = Graph.complete_bipartite(10, 10)
    rep = embed_long_path(h, range(10), range(10, 20), 5, 0, 10, Fraction(1, 1000))
    assert rep.length == 11 and len(rep.path) == 12
    assert rep.path[0] == 0 and rep.path[-1] == 10 and validate_path(h, rep.path)


def test_embed_long_path_random_40():
    for seed in range(100):
        rng = np.random.default_rng(seed)
        h = random_pair(rng, 40, 40, 0.5)
        rep = embed_long_path(h, range(40), range(40, 80), 30, 0, 40, Fraction(1, 1000))
        assert rep.length == 61 and validate_path(h, rep.path)
        assert rep.path[0] == 0 and rep.path[-1] == 40


def test_embed_ell_zero():
    h = Graph.complete_bipartite(3, 3)
    assert embed_long_path(h, range(3), range(3, 6), 0, 0, 3, Fraction(1, 100)).path == (0, 3)
    h2 = Graph(6, [e for e in h.edges() if e != (0, 3)])
    with pytest.raises(EmbeddingError):
        embed_long_path(h2, range(3), range(3, 6), 0, 0, 3, Fraction(1, 100))


def test_embed_hypotheses():
    h = Graph.complete_bipartite(10, 10)
    with pytest.raises(HypothesisError):
        embed_long_path(h, range(10), range(10, 20), 10, 0, 10, Fraction(1, 1000))
    sparse = Graph(20, [(0, 10)])
    with pytest.raises(HypothesisError):
        embed_long_path(sparse, range(10), range(10, 20), 1, 0, 10, Fraction(1, 1000))
    with pytest.raises(HypothesisError):
        embed_long_path(h, range(10), range(10, 20), 2, 10, 0, Fraction(1, 1000))
    rep = embed_long_path(h, range(10), range(10, 20), 2, 0, 10, Fraction(1, 100))
    assert not rep.reported["eps < 1/600"] and rep.reported["k >= 1/eps"] is False


def single_red_pair(size, p=1.0, seed=0):
    rng = np.random.default_rng(seed)
    n = 2 * size
    g = EdgeColouring.from_function(
        n, 2, lambda u, v: RED if (u < size) != (v < size) and rng.random() < p else BLUE)
    pi = blocks_partition(2, size)
    rg = build_reduced_graph(g, pi, Fraction(1, 1000), Fraction(1, 2), mode="claimed")
    M = ConnectedMatching(((0, 1),), RED, (0, 1), False)
    return g, pi, rg, M


def test_blow_up_single_pair():
    g, pi, rg, M = single_red_pair(20)
    w = blow_up_matching_to_cycle(g, pi, rg, M, 24, RED)
    assert isinstance(w, CycleWitness) and w.length == 24 and w.validate(g)
    for L in (4, 6, 38):
        assert blow_up_matching_to_cycle(g, pi, rg, M, L, RED).length == L
    with pytest.raises(CapacityError):
        blow_up_matching_to_cycle(g, pi, rg, M, 40, RED)
    with pytest.raises(ParityError):
        blow_up_matching_to_cycle(g, pi, rg, M, 25, RED)


def test_blow_up_path_of_three_parts():
    size = 15
    part = lambda v: v // size  # noqa: E731
    for seed in range(10):
        rng = np.random.default_rng(seed)
        g = EdgeColouring.from_function(
            3 * size, 2,
            lambda u, v: RED if abs(part(u) - part(v)) == 1 and rng.random() < 0.8 else BLUE)
        pi = blocks_partition(3, size)
        rg = build_reduced_graph(g, pi, Fraction(1, 1000), Fraction(1, 2), mode="claimed")
        assert rg.graph.colours_of(0, 1) == {RED} and rg.graph.colours_of(1, 2) == {RED}
        M = ConnectedMatching(((0, 1),), RED, (0, 1, 2), False)
        w = blow_up_matching_to_cycle(g, pi, rg, M, 20, RED)
        assert w.length == 20 and w.validate(g)


def test_blow_up_odd_target_needs_odd_component():
    g = blow_up_template(6)
    pi = blocks_partition(4, 6)
    rg = build_reduced_graph(g, pi, Fraction(1, 10), Fraction(1, 2))
    # red in the template: 0-1 and 2-3 (bipartite); blue 0-2, 1-3; green 0-3, 1-2
    M = ConnectedMatching(((0, 1),), RED, (0, 1), False)
    with pytest.raises(ParityError):
        blow_up_matching_to_cycle(g, pi, rg, M, 7, RED)
    # an all-red K4 template has odd red cycles, so odd lengths are fine
    tri = {e: RED for e in TEMPLATE}
    g2 = blow_up_template(6, tri)
    rg2 = build_reduced_graph(g2, pi, Fraction(1, 10), Fraction(1, 2))
    M2 = ConnectedMatching(((0, 1), (2, 3)), RED, (0, 1, 2, 3), True)
    for L in (7, 9, 15, 20):
        w = blow_up_matching_to_cycle(g2, pi, rg2, M2, L, RED)
        assert w.length == L and w.validate(g2)


def test_capacity_formula():
    g, pi, rg, M = single_red_pair(20)
    plan = plan_blow_up(rg, M, 24, RED, Fraction(1, 1000))
    # cap = largest l with (20 - l)^2 >= 4 eps 20^2 = 1.6, i.e. 18; one connector edge
    assert plan.caps == (18,)
    assert blow_up_capacity(pi, M, plan.walks, Fraction(1, 1000)) == 2 * 18 + 1 + 1
    assert plan.connector_edges == 1


def test_blow_up_wrong_colour_edge():
    g, pi, rg, M = single_red_pair(6)
    with pytest.raises(GraphError):
        blow_up_matching_to_cycle(g, pi, rg, ConnectedMatching(((0, 1),), BLUE, (0, 1), False), 6, BLUE)


def test_blow_up_zero_length_segments_on_sparse_pairs():
    # at the shortest lengths some pairs carry a single edge, so connector ends must be adjacent
    size = 8
    part = lambda v: v // size  # noqa: E731
    tri = {e: RED for e in TEMPLATE}
    pi = blocks_partition(4, size)
    M = ConnectedMatching(((0, 1), (2, 3)), RED, (0, 1, 2, 3), True)
    for seed in range(20):
        rng = np.random.default_rng(seed)
        g = EdgeColouring.from_function(
            4 * size, 2,
            lambda u, v: RED if part(u) != part(v) and tri[part(u), part(v)] == RED
            and rng.random() < 0.7 else BLUE)
        rg = build_reduced_graph(g, pi, Fraction(1, 1000), Fraction(1, 2), mode="claimed")
        for L in (4, 5, 6):
            plan = plan_blow_up(rg, M, L, RED, Fraction(1, 1000))
            assert 0 in plan.lengths
            w = blow_up_matching_to_cycle(g, pi, rg, M, L, RED)
            assert w.length == L and w.validate(g)
