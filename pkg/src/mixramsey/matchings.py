"""Maximum matchings, connected-matchings and the constructive bipartite matching lemmas."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (Graph, GraphError, MultiColouredGraph, Number, as_fraction, as_graph,
                   bits, is_almost_complete_bipartite, is_complete_fraction, mask_of, popcount)
from .cycles import (DEFAULT_BUDGET, CycleWitness, HypothesisError, components_with_parity,
                     find_cycle_exact)

Edge = tuple[int, int]


@dataclass(frozen=True)
class ConnectedMatching:
    edges: tuple[Edge, ...]
    colour: int | None
    component: tuple[int, ...]
    odd: bool

    @property
    def vertex_count(self) -> int:
        return 2 * len(self.edges)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(v for e in self.edges for v in e))

    def validate(self, g: Graph | MultiColouredGraph) -> bool:
        """Disjoint edges of the colour, all inside one component whose parity matches ``odd``."""
        h = as_graph(g, self.colour)
        vs = [v for e in self.edges for v in e]
        if len(set(vs)) != len(vs) or not all(h.has_edge(u, v) for u, v in self.edges):
            return False
        for comp in components_with_parity(h):
            if set(comp.vertices) == set(self.component):
                return set(vs) <= set(comp.vertices) and comp.odd == self.odd
        return False


def _normalise(pairs) -> tuple[Edge, ...]:
    return tuple(sorted((min(u, v), max(u, v)) for u, v in pairs))


# ---------------------------------------------------------------------------
# general maximum matching (Edmonds' blossom algorithm)


def max_matching(h: Graph) -> list[Edge]:
    """Maximum-cardinality matching of a general graph, as sorted ``(u, v)`` pairs with u < v."""
    n = h.n
    adj = [list(bits(m)) for m in h.masks]
    match = [-1] * n
    for v in range(n):
        if match[v] == -1:
            for w in adj[v]:
                if match[w] == -1:
                    match[v], match[w] = w, v
                    break

    def lca(a: int, b: int, base, parent) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def find_augmenting(root: int) -> int:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])

        def mark(v: int, b: int, child: int, blossom) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to, base, parent)
                    blossom = [False] * n
                    mark(v, cur, to, blossom)
                    mark(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        # flip the alternating path ending at the free vertex ``to``
                        while to != -1:
                            pv = parent[to]
                            nxt = match[pv]
                            match[to], match[pv] = pv, to
                            to = nxt
                        return True
                    used[match[to]] = True
                    queue.append(match[to])
        return False

    for root in range(n):
        if match[root] == -1 and adj[root]:
            find_augmenting(root)
    return [(v, match[v]) for v in range(n) if match[v] > v]


def bipartite_max_matching(h: Graph, left: Sequence[int], right: Sequence[int]) -> list[Edge]:
    """Hopcroft-Karp on the cross edges between ``left`` and ``right``."""
    rmask = mask_of(right)
    adj = {u: list(bits(h.masks[u] & rmask)) for u in left}
    mate_l = {u: None for u in left}
    mate_r = {w: None for w in right}
    INF = float("inf")

    def bfs() -> bool:
        dist = {}
        q = deque()
        for u in left:
            if mate_l[u] is None:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for w in adj[u]:
                nu = mate_r[w]
                if nu is None:
                    found = True
                elif dist[nu] == INF:
                    dist[nu] = dist[u] + 1
                    q.append(nu)
        bfs.dist = dist
        return found

    def dfs(u) -> bool:
        dist = bfs.dist
        for w in adj[u]:
            nu = mate_r[w]
            if nu is None or (dist[nu] == dist[u] + 1 and dfs(nu)):
                mate_l[u], mate_r[w] = w, u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in left:
            if mate_l[u] is None:
                dfs(u)
    return list(_normalise((u, w) for u, w in mate_l.items() if w is not None))


# ---------------------------------------------------------------------------
# connected-matchings


def largest_connected_matching(g: Graph | MultiColouredGraph, c: int | None = None,
                               require_odd: bool = False) -> ConnectedMatching | None:
    """Largest per-component maximum matching of colour class ``c`` (odd components only
    when ``require_odd``); None when no eligible component has an edge."""
    h = as_graph(g, c)
    best = None
    for comp in components_with_parity(h):
        if len(comp.vertices) < 2 or (require_odd and not comp.odd):
            continue
        sub = h.induced(comp.vertices)
        if comp.sides is not None:
            local = bipartite_max_matching(sub, [comp.vertices.index(v) for v in comp.sides[0]],
                                           [comp.vertices.index(v) for v in comp.sides[1]])
        else:
            local = max_matching(sub)
        if not local:
            continue
        edges = _normalise((comp.vertices[a], comp.vertices[b]) for a, b in local)
        if best is None or len(edges) > len(best.edges):
            best = ConnectedMatching(edges, c, comp.vertices, comp.odd)
    return best


def _bipartite_setup(h: Graph, V1, V2) -> tuple[list[int], list[int]]:
    V1, V2 = list(V1), list(V2)
    if mask_of(V1) & mask_of(V2):
        raise GraphError("V1 and V2 overlap")
    return V1, V2


def _as_connected(h: Graph, V1, V2, edges, colour=None) -> ConnectedMatching:
    # the matching lives in the bipartite graph of cross edges
    cross = Graph(h.n, [(u, w) for u in V1 for w in bits(h.masks[u] & mask_of(V2))])
    comps = components_with_parity(cross)
    for comp in comps:
        if edges and edges[0][0] in comp.vertices:
            return ConnectedMatching(edges, colour, comp.vertices, comp.odd)
    return ConnectedMatching(edges, colour, (), False)


def almost_complete_bipartite_matching(h: Graph, V1: Sequence[int], V2: Sequence[int],
                                       a: int, ell: int | None = None) -> ConnectedMatching:
    """Greedy matching of at least |V2| - a edges in an a-almost-complete bipartite graph.

    Requires |V1| >= |V2| >= ell and a/ell < 1/2 (``ell`` defaults to |V2|); the
    second condition makes the graph connected.  Each unmatched vertex of V2 still
    has a free neighbour while fewer than |V2| - a edges are matched.
    """
    V1, V2 = _bipartite_setup(h, V1, V2)
    ell = len(V2) if ell is None else ell
    problems = []
    if not (len(V1) >= len(V2) >= ell >= 1):
        problems.append("|V1| >= |V2| >= ell >= 1")
    if a < 0 or Fraction(a, max(ell, 1)) >= Fraction(1, 2):
        problems.append("0 <= a/ell < 1/2")
    if not is_almost_complete_bipartite(h, V1, V2, a):
        problems.append("a-almost-complete")
    if problems:
        raise HypothesisError("hypotheses violated: " + "; ".join(problems))
    free = mask_of(V1)
    edges = []
    for w in V2:
        cand = h.masks[w] & free
        if cand:
            u = (cand & -cand).bit_length() - 1
            free &= ~(1 << u)
            edges.append((w, u))
    edges = _normalise(edges)
    assert len(edges) >= len(V2) - a
    return _as_connected(h, V1, V2, edges)


def dense_bipartite_matching(h: Graph, V1: Sequence[int], V2: Sequence[int],
                             eps: Number) -> ConnectedMatching:
    """Connected-matching of at least (1 - 3 eps)|V2| edges when e(V1, V2) >= (1 - eps)|V1||V2|.

    Needs |V1| >= |V2| and 0 < eps < 1/100.  Returns the maximum matching of the
    cross-edge component that admits the largest one.
    """
    V1, V2 = _bipartite_setup(h, V1, V2)
    eps = as_fraction(eps)
    e = sum(popcount(h.masks[u] & mask_of(V2)) for u in V1)
    problems = []
    if len(V1) < len(V2) or not V2:
        problems.append("|V1| >= |V2| > 0")
    if not 0 < eps < Fraction(1, 100):
        problems.append("0 < eps < 0.01")
    if e < (1 - eps) * len(V1) * len(V2):
        problems.append("e(V1, V2) >= (1 - eps)|V1||V2|")
    if problems:
        raise HypothesisError("hypotheses violated: " + "; ".join(problems))
    cross = Graph(h.n, [(u, w) for u in V1 for w in bits(h.masks[u] & mask_of(V2))])
    v1set = set(V1)
    best = None
    for comp in components_with_parity(cross):
        left = [v for v in comp.vertices if v in v1set]
        right = [v for v in comp.vertices if v not in v1set]
        if not left or not right:
            continue
        edges = tuple(bipartite_max_matching(cross, left, right))
        if best is None or len(edges) > len(best.edges):
            best = ConnectedMatching(edges, None, comp.vertices, comp.odd)
    if best is None or len(best.edges) < (1 - 3 * eps) * len(V2):
        raise AssertionError("matching below the guaranteed size")
    return best


def avg_degree_connected_matching(h: Graph, m: int,
                                  budget: int = DEFAULT_BUDGET) -> ConnectedMatching | None:
    """Connected-matching on at least m vertices whenever the average degree is >= m.

    A graph with average degree >= m has enough edges to force a cycle on at least
    m + 1 vertices; alternate edges of such a cycle form the matching.  Returns
    None when the average degree is below m.  If the cycle search runs out of
    budget the largest connected-matching is used instead (and still checked).
    """
    K = h.n
    if not 3 <= m <= K:
        raise GraphError(f"m must lie in 3..{K}")
    if 2 * h.num_edges() < m * K:
        return None
    for L in range(min(m + 1, K), K + 1):
        res = find_cycle_exact(h, None, L, budget)
        if isinstance(res, CycleWitness):
            vs = res.vertices
            edges = _normalise((vs[i], vs[i + 1]) for i in range(0, len(vs) - 1, 2))
            comp = next(cp for cp in components_with_parity(h) if vs[0] in cp.vertices)
            out = ConnectedMatching(edges, None, comp.vertices, comp.odd)
            break
    else:
        out = largest_connected_matching(h)
    if out is None or out.vertex_count < m:
        raise AssertionError("average-degree matching below the guaranteed size")
    return out


# ---------------------------------------------------------------------------
# monochromatic components of two-coloured almost-complete graphs


@dataclass(frozen=True)
class ComponentReport:
    vertices: tuple[int, ...]
    colour: int
    hypotheses: dict[str, bool]
    conclusion: dict[str, bool]

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def applicable(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def holds(self) -> bool:
        return any(self.conclusion.values())


def _largest_mono(g: MultiColouredGraph, colours: Sequence[int], drop_inside: int = 0):
    best = ((), colours[0])
    for c in colours:
        h = g.colour_class(c)
        if drop_inside:
            h = Graph.from_masks([m & ~drop_inside if drop_inside >> v & 1 else m
                                  for v, m in enumerate(h.masks)])
        for comp in h.components():
            if len(comp) > len(best[0]):
                best = (tuple(comp), c)
    return best


def largest_mono_component(g: MultiColouredGraph, eta: Number,
                           colours: Sequence[int] = (0, 1)) -> ComponentReport:
    """Largest monochromatic component F of a two-coloured graph, with the check that
    |F| >= (1 - 3 eta) K whenever g is (1 - eta)-complete, eta < 1/3 and K >= 1/eta."""
    eta = as_fraction(eta)
    K = g.n
    two = g.restrict_colours(colours)
    F, c = _largest_mono(two, colours)
    hyp = {
        "0 < eta < 1/3": 0 < eta < Fraction(1, 3),
        "K >= 1/eta": eta > 0 and K >= 1 / eta,
        "(1 - eta)-complete": is_complete_fraction(two, 1 - eta),
    }
    concl = {"|F| >= (1 - 3 eta) K": len(F) >= (1 - 3 * eta) * K}
    return ComponentReport(F, c, hyp, concl)


def one_hole_components(g: MultiColouredGraph, W: Sequence[int], eta: Number,
                        colours: Sequence[int] = (0, 1)) -> ComponentReport:
    """One-hole variant: edges inside W are removed first.

    Reports F, the largest monochromatic component of the holed graph, and which of
    the alternatives holds: |F| >= (1 - 2 sqrt(eta)) K, or both W_r and W_b are
    non-empty, where W_r (W_b) holds the vertices of W with first-colour
    (second-colour) edges to all but at most 3 sqrt(eta) K vertices outside W.
    Square roots are compared exactly by squaring.
    """
    eta = as_fraction(eta)
    K = g.n
    W = sorted(set(W))
    wm = mask_of(W)
    rest = ((1 << K) - 1) & ~wm
    two = g.restrict_colours(colours)
    F, c = _largest_mono(two, colours, drop_inside=wm)
    red, blue = (two.colour_class(x) for x in colours)
    n_rest = popcount(rest)

    def mostly(h: Graph, w: int) -> bool:
        missed = n_rest - popcount(h.masks[w] & rest)
        return missed * missed <= 9 * eta * K * K

    W_r = tuple(w for w in W if mostly(red, w))
    W_b = tuple(w for w in W if mostly(blue, w))
    hyp = {
        "0 < eta < 1/20": 0 < eta < Fraction(1, 20),
        "K >= 1/eta": eta > 0 and K >= 1 / eta,
        "(1 - eta)-complete": is_complete_fraction(two, 1 - eta),
        "|W|, |V \\ W| >= 4 sqrt(eta) K": min(len(W), n_rest) ** 2 >= 16 * eta * K * K,
    }
    short = K - len(F)
    concl = {
        "|F| >= (1 - 2 sqrt(eta)) K": short <= 0 or short * short <= 4 * eta * K * K,
        "|W_r|, |W_b| > 0": bool(W_r) and bool(W_b),
    }
    report = ComponentReport(F, c, hyp, concl)
    object.__setattr__(report, "W_r", W_r)
    object.__setattr__(report, "W_b", W_b)
    return report
