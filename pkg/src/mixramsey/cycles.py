"""Monochromatic cycle search and the constructive Hamiltonicity tools.

``find_cycle_exact`` is the workhorse: a depth-first search over one colour class
for a cycle on exactly ``L`` vertices.  Before searching it discards everything a
cycle cannot use (vertices outside the 2-core, blocks smaller than ``L``) and
rejects blocks outright by parity or by an independent-set count, which is what
makes absence proofs on the extremal colourings instant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import (Graph, GraphError, MultiColouredGraph, as_graph, bits, mask_of,
                   popcount)

DEFAULT_BUDGET = 10 ** 7


class HypothesisError(ValueError):
    """Raised when the hypotheses that guarantee a constructive result are not met."""


@dataclass(frozen=True)
class CycleWitness:
    vertices: tuple[int, ...]
    colour: int | None = None

    @property
    def length(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def validate(self, g: Graph | MultiColouredGraph) -> bool:
        h = as_graph(g, self.colour)
        vs = self.vertices
        if len(vs) < 3 or len(set(vs)) != len(vs):
            return False
        return all(0 <= v < h.n for v in vs) and all(h.has_edge(u, v) for u, v in self.edges())


@dataclass(frozen=True)
class Absence:
    """Exhaustive proof that no cycle of the given length exists in the colour class."""

    length: int
    colour: int | None
    expansions: int
    pruned: dict = field(default_factory=dict)
    exhaustive: bool = True


@dataclass(frozen=True)
class BudgetExhausted:
    length: int
    colour: int | None
    expansions: int
    exhaustive: bool = False


class _OutOfBudget(Exception):
    pass


def validate_path(h: Graph, path: Sequence[int]) -> bool:
    return (len(set(path)) == len(path)
            and all(h.has_edge(path[i], path[i + 1]) for i in range(len(path) - 1)))


# ---------------------------------------------------------------------------
# structural pruning helpers


def two_core(h: Graph, within: int | None = None) -> int:
    alive = h.vertex_mask if within is None else within
    changed = True
    while changed:
        changed = False
        for v in bits(alive):
            if popcount(h.masks[v] & alive) < 2:
                alive &= ~(1 << v)
                changed = True
    return alive


def blocks(h: Graph, within: int | None = None) -> list[int]:
    """Vertex masks of the biconnected components with at least three vertices."""
    within = h.vertex_mask if within is None else within
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    out = []
    t = 0
    for root in bits(within):
        if root in disc:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [root]
        parent = {root: -1}
        frames = [(root, iter(list(bits(h.masks[root] & within))))]
        while frames:
            v, nbrs = frames[-1]
            pushed = False
            for w in nbrs:
                if w not in disc:
                    parent[w] = v
                    disc[w] = low[w] = t
                    t += 1
                    stack.append(w)
                    frames.append((w, iter(list(bits(h.masks[w] & within)))))
                    pushed = True
                    break
                if w != parent[v]:
                    low[v] = min(low[v], disc[w])
            if pushed:
                continue
            frames.pop()
            if frames:
                p = frames[-1][0]
                low[p] = min(low[p], low[v])
                if low[v] >= disc[p]:
                    comp = 1 << p
                    while True:
                        x = stack.pop()
                        comp |= 1 << x
                        if x == v:
                            break
                    if popcount(comp) >= 3:
                        out.append(comp)
    return out


def greedy_independent_set(h: Graph, within: int) -> int:
    remaining = within
    chosen = 0
    while remaining:
        v = min(bits(remaining), key=lambda x: (popcount(h.masks[x] & remaining), x))
        chosen |= 1 << v
        remaining &= ~(h.masks[v] | (1 << v))
    return chosen


def _bipartite_sides(h: Graph, within: int) -> tuple[int, int] | None:
    side = h.two_colouring(list(bits(within)))
    if isinstance(side, tuple):
        return None
    a = mask_of(v for v, s in side.items() if s == 0)
    return a, within & ~a


def _reach(h: Graph, start: int, allowed: int) -> int:
    seen = 0
    frontier = h.masks[start] & allowed
    while frontier:
        seen |= frontier
        nxt = 0
        for v in bits(frontier):
            nxt |= h.masks[v]
        frontier = nxt & allowed & ~seen
    return seen


def _distance(h: Graph, start: int, allowed: int, targets: int) -> int:
    """Vertices needed to walk from ``start`` into ``targets`` through ``allowed`` (0 = unreachable)."""
    seen = 0
    frontier = h.masks[start] & allowed
    d = 1
    while frontier:
        if frontier & targets:
            return d
        seen |= frontier
        nxt = 0
        for v in bits(frontier):
            nxt |= h.masks[v]
        frontier = nxt & allowed & ~seen
        d += 1
    return 0


# ---------------------------------------------------------------------------
# exact-length search


class _Search:
    def __init__(self, h: Graph, budget: int):
        self.h = h
        self.budget = budget
        self.expansions = 0

    def tick(self) -> None:
        self.expansions += 1
        if self.expansions > self.budget:
            raise _OutOfBudget

    def cycle_in_block(self, block: int, L: int) -> list[int] | None:
        h = self.h
        candidates = block
        for s in bits(block):
            if popcount(candidates) < L:
                return None
            if not candidates >> s & 1:
                continue
            allowed = candidates & ~(1 << s)
            closing = h.masks[s] & allowed
            if popcount(closing) >= 2:
                found = self._extend([s], s, 1 << s, allowed, closing, L)
                if found:
                    return found
            candidates = two_core(h, allowed)
        return None

    def _extend(self, path, end, visited, allowed, closing, L):
        self.tick()
        h = self.h
        k = len(path)
        if k == L:
            # the reflection of every cycle is reached too; keep one orientation
            if h.masks[end] >> path[0] & 1 and path[1] < end:
                return list(path)
            return None
        avail = allowed & ~visited
        remaining = L - k
        reach = _reach(h, end, avail)
        if popcount(reach) < remaining or not reach & closing:
            return None
        d = _distance(h, end, avail, closing)
        if d == 0 or d > remaining:
            return None
        if popcount(avail) == remaining:
            # every available vertex must be used: each needs two usable neighbours
            pool = avail | (1 << end) | (1 << path[0])
            for v in bits(avail):
                if popcount(h.masks[v] & pool) < 2:
                    return None
        nxt = h.masks[end] & avail
        if remaining == 1:
            nxt &= closing
        for w in bits(nxt):
            path.append(w)
            found = self._extend(path, w, visited | (1 << w), allowed, closing, L)
            if found:
                return found
            path.pop()
        return None


def find_cycle_exact(g: Graph | MultiColouredGraph, c: int | None, L: int,
                     budget: int = DEFAULT_BUDGET):
    """Search colour class ``c`` of ``g`` for a cycle on exactly ``L`` vertices.

    Returns a :class:`CycleWitness`, an :class:`Absence` (the search space was
    exhausted) or :class:`BudgetExhausted` (inconclusive).
    """
    h = as_graph(g, c)
    if not 3 <= L <= h.n:
        raise GraphError(f"cycle length must lie in 3..{h.n}, got {L}")
    pruned = {"small_block": 0, "parity": 0, "independent_set": 0}
    search = _Search(h, budget)
    core = two_core(h)
    try:
        for block in blocks(h, core):
            size = popcount(block)
            if size < L:
                pruned["small_block"] += 1
                continue
            sides = _bipartite_sides(h, block)
            if sides is not None and (L % 2 or 2 * min(map(popcount, sides)) < L):
                pruned["parity"] += 1
                continue
            # a cycle alternates into and out of any independent set
            indep = greedy_independent_set(h, block)
            if 2 * (size - popcount(indep)) < L:
                pruned["independent_set"] += 1
                continue
            found = search.cycle_in_block(block, L)
            if found:
                return CycleWitness(tuple(found), c)
    except _OutOfBudget:
        return BudgetExhausted(L, c, search.expansions)
    return Absence(L, c, search.expansions, pruned)


def cycle_lengths(g: Graph | MultiColouredGraph, c: int | None = None,
                  budget: int = DEFAULT_BUDGET) -> dict[int, object]:
    h = as_graph(g, c)
    return {L: find_cycle_exact(h, None, L, budget) for L in range(3, h.n + 1)}


def longest_cycle_length(h: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Length of a longest cycle (0 for forests); raises if the budget runs out."""
    for L in range(h.n, 2, -1):
        res = find_cycle_exact(h, None, L, budget)
        if isinstance(res, CycleWitness):
            return L
        if isinstance(res, BudgetExhausted):
            raise RuntimeError(f"budget exhausted while testing length {L}")
    return 0


# ---------------------------------------------------------------------------
# odd components


@dataclass(frozen=True)
class Component:
    vertices: tuple[int, ...]
    odd: bool
    sides: tuple[tuple[int, ...], tuple[int, ...]] | None = None


def components_with_parity(g: Graph | MultiColouredGraph, c: int | None = None) -> list[Component]:
    """Components of the colour class, each flagged odd iff it is not bipartite."""
    h = as_graph(g, c)
    out = []
    for comp in h.components():
        side = h.two_colouring(comp)
        if isinstance(side, tuple):
            out.append(Component(tuple(comp), True))
        else:
            a = tuple(v for v in comp if side[v] == 0)
            b = tuple(v for v in comp if side[v] == 1)
            out.append(Component(tuple(comp), False, (a, b)))
    return out


def has_odd_cycle(g: Graph | MultiColouredGraph, c: int | None = None) -> dict[tuple[int, ...], bool]:
    """Map each component (as a vertex tuple) to whether it contains an odd cycle."""
    return {comp.vertices: comp.odd for comp in components_with_parity(g, c)}


def find_odd_cycle(h: Graph, vertices: Sequence[int]) -> list[int] | None:
    """An odd cycle inside ``vertices``, or None when they induce a bipartite graph."""
    allowed = mask_of(vertices)
    parent: dict[int, int] = {}
    depth: dict[int, int] = {}
    for root in vertices:
        if root in depth:
            continue
        parent[root], depth[root] = -1, 0
        queue = [root]
        for u in queue:
            for w in bits(h.masks[u] & allowed):
                if w not in depth:
                    parent[w], depth[w] = u, depth[u] + 1
                    queue.append(w)
                elif depth[w] == depth[u]:
                    a, b = [u], [w]
                    while a[-1] != b[-1]:
                        a.append(parent[a[-1]])
                        b.append(parent[b[-1]])
                    return a + b[-2::-1]
    return None


# ---------------------------------------------------------------------------
# Hamiltonicity criteria


def dirac_check(h: Graph) -> bool:
    """n >= 3 and every degree at least n/2."""
    return h.n >= 3 and 2 * min(h.degrees()) >= h.n


def ore_check(h: Graph) -> bool:
    if h.n < 3:
        return False
    deg = h.degrees()
    return all(deg[u] + deg[v] >= h.n for u in range(h.n) for v in range(u + 1, h.n)
               if not h.has_edge(u, v))


def chvatal_check(h: Graph) -> bool:
    """Degree-sequence condition: d_k <= k <= n/2 implies d_{n-k} >= n - k (1-indexed)."""
    n = h.n
    if n < 3:
        return False
    d = sorted(h.degrees())
    for k in range(1, n // 2 + 1):
        if d[k - 1] <= k and d[n - k - 1] < n - k:
            return False
    return True


def _check_bipartition(h: Graph, X: Sequence[int], Y: Sequence[int]) -> tuple[int, int]:
    xm, ym = mask_of(X), mask_of(Y)
    if xm & ym or (xm | ym) != h.vertex_mask or len(set(X)) != len(X) or len(set(Y)) != len(Y):
        raise GraphError("X and Y must partition the vertex set")
    for v in X:
        if h.masks[v] & xm:
            raise GraphError(f"vertex {v} has a neighbour on its own side")
    for v in Y:
        if h.masks[v] & ym:
            raise GraphError(f"vertex {v} has a neighbour on its own side")
    return xm, ym


def moon_moser_check(h: Graph, X: Sequence[int], Y: Sequence[int]) -> bool:
    """Balanced bipartite graph with d(x) + d(y) >= n/2 + 1 for every non-adjacent x in X, y in Y."""
    _check_bipartition(h, X, Y)
    if len(X) != len(Y):
        raise GraphError("Moon-Moser needs a balanced bipartition")
    if len(X) < 2:
        return False
    deg = h.degrees()
    half = h.n // 2
    return all(deg[x] + deg[y] >= half + 1 for x in X for y in Y if not h.has_edge(x, y))


# ---------------------------------------------------------------------------
# constructive Hamiltonian cycles and paths


def _closure(h: Graph, X: Sequence[int] | None = None, Y: Sequence[int] | None = None):
    """Bondy-Chvatal closure; returns (closure masks, edges in the order they were added)."""
    n = h.n
    masks = list(h.masks)
    if X is None:
        threshold = n
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    else:
        threshold = n // 2 + 1
        pairs = [(x, y) for x in X for y in Y]
    added = []
    changed = True
    while changed:
        changed = False
        for u, v in pairs:
            if not masks[u] >> v & 1 and popcount(masks[u]) + popcount(masks[v]) >= threshold:
                masks[u] |= 1 << v
                masks[v] |= 1 << u
                added.append((u, v))
                changed = True
    return masks, added


def closure_hamiltonian_cycle(h: Graph, X: Sequence[int] | None = None,
                              Y: Sequence[int] | None = None) -> list[int] | None:
    """Hamiltonian cycle via the closure, or None when the closure is not complete.

    Starting from a Hamiltonian cycle of the complete closure, the added edges are
    removed newest first; each removal is repaired by the crossing-pair exchange
    that the degree-sum condition guarantees.
    """
    n = h.n
    masks, added = _closure(h, X, Y)
    if X is None:
        if n < 3 or any(popcount(m) != n - 1 for m in masks):
            return None
        cyc = list(range(n))
    else:
        if len(X) != len(Y) or len(X) < 2 or any(popcount(masks[v]) != len(X) for v in range(n)):
            return None
        cyc = [v for pair in zip(X, Y) for v in pair]
    for x, y in reversed(added):
        masks[x] &= ~(1 << y)
        masks[y] &= ~(1 << x)
        i = cyc.index(x)
        if cyc[(i + 1) % n] == y:
            path = cyc[i::-1] + cyc[:i:-1]
        elif cyc[i - 1] == y:
            path = cyc[i:] + cyc[:i]
        else:
            continue
        # path runs x ... y; find k with p_k ~ y and p_{k+1} ~ x
        for k in range(1, n - 2):
            if masks[path[k]] >> y & 1 and masks[path[k + 1]] >> x & 1:
                cyc = path[: k + 1] + path[:k:-1]
                break
        else:  # pragma: no cover - excluded by the degree-sum condition
            raise AssertionError("closure exchange failed")
    return cyc


def hamiltonian_cycle(h: Graph, budget: int = DEFAULT_BUDGET, *, method: str = "auto",
                      bipartition: tuple[Sequence[int], Sequence[int]] | None = None):
    """Hamiltonian cycle of ``h``: CycleWitness, Absence or BudgetExhausted.

    ``method="auto"`` builds the cycle in polynomial time whenever the closure is
    complete (which covers the Dirac, Ore, Chvatal and, given ``bipartition``,
    Moon-Moser conditions) and otherwise falls back to exhaustive search.
    """
    if h.n < 3:
        return Absence(h.n, None, 0, {"too_small": 1})
    if method in ("auto", "closure"):
        X, Y = bipartition if bipartition is not None else (None, None)
        if bipartition is not None:
            _check_bipartition(h, X, Y)
        cyc = closure_hamiltonian_cycle(h, X, Y)
        if cyc is not None:
            return CycleWitness(tuple(cyc))
        if method == "closure":
            raise HypothesisError("closure is not complete")
    elif method != "search":
        raise ValueError(f"unknown method {method!r}")
    return find_cycle_exact(h, None, h.n, budget)


def _palmer_path(h: Graph, u: int, v: int) -> list[int]:
    """Hamiltonian u-v path by gap-closing rotations with the pair uv held adjacent."""
    n = h.n

    def adj(a, b):
        return h.has_edge(a, b) or {a, b} == {u, v}

    order = [u] + [x for x in range(n) if x not in (u, v)] + [v]
    while True:
        gap = next((i for i in range(n) if not adj(order[i], order[(i + 1) % n])), None)
        if gap is None:
            break
        seq = order[gap:] + order[:gap]
        a, b = seq[0], seq[1]
        for j in range(2, n - 1):
            if {seq[j], seq[j + 1]} == {u, v}:
                continue
            if adj(a, seq[j]) and adj(b, seq[j + 1]):
                order = [a] + seq[j:0:-1] + seq[j + 1:]
                break
        else:  # pragma: no cover - excluded by the minimum degree condition
            raise AssertionError("no rotation closes the gap")
    i = order.index(u)
    if order[(i + 1) % n] == v:
        return order[i::-1] + order[:i:-1]
    return order[i:] + order[:i]


def hamiltonian_path_between(h: Graph, u: int, v: int, budget: int = DEFAULT_BUDGET):
    """Hamiltonian path from u to v.

    When n >= 4 and every degree is at least n/2 + 1 the path is built directly and
    always exists.  Otherwise the search falls back to an exhaustive cycle search
    through an auxiliary vertex adjacent to u and v only.  Returns the vertex list,
    an :class:`Absence` or :class:`BudgetExhausted`.
    """
    if u == v:
        raise GraphError("endpoints must differ")
    n = h.n
    if n >= 4 and 2 * min(h.degrees()) >= n + 2:
        path = _palmer_path(h, u, v)
        assert validate_path(h, path) and path[0] == u and path[-1] == v
        return path
    if n == 2:
        return [u, v] if h.has_edge(u, v) else Absence(2, None, 0)
    aux = Graph.from_masks([m | ((1 << n) if x in (u, v) else 0) for x, m in enumerate(h.masks)]
                           + [(1 << u) | (1 << v)])
    res = find_cycle_exact(aux, None, n + 1, budget)
    if not isinstance(res, CycleWitness):
        return res
    cyc = list(res.vertices)
    i = cyc.index(n)
    rot = cyc[i + 1:] + cyc[:i]
    return rot if rot[0] == u else rot[::-1]


def bipartite_path_all_of_smaller(h: Graph, X1: Sequence[int], X2: Sequence[int],
                                  x_a: int, x_b: int) -> list[int]:
    """Path from x_a to x_b through every vertex of the smaller side X2.

    x_a lies in X1.  With x_b in X1 the hypotheses are n >= 4, |X1| > |X2| + 1 and
    every X2-degree at least n/2 + 1; with x_b in X2 they are n >= 5, |X1| > |X2|
    and every X2-degree at least (n + 1)/2.  In both cases consecutive X2 vertices
    have enough common neighbours that a greedy choice of connectors never fails.
    """
    X1, X2 = list(X1), list(X2)
    x1m, x2m = _check_bipartition_sides(h, X1, X2)
    n = len(X1) + len(X2)
    if x_a not in X1:
        raise GraphError("x_a must lie in X1")
    deg = {v: h.degree(v) for v in X1 + X2}
    end_in_x1 = x_b in X1
    if not end_in_x1 and x_b not in X2:
        raise GraphError("x_b must lie in X1 or X2")
    if x_a == x_b:
        raise GraphError("endpoints must differ")
    problems = []
    if end_in_x1:
        if n < 4:
            problems.append("n >= 4")
        if not len(X1) > len(X2) + 1:
            problems.append("|X1| > |X2| + 1")
        if any(2 * deg[w] < n + 2 for w in X2):
            problems.append("every X2 vertex has degree >= n/2 + 1")
        if deg[x_b] < 2:
            problems.append("d(x_b) >= 2")
        if deg[x_a] < 1:
            problems.append("d(x_a) >= 1")
    else:
        if n < 5:
            problems.append("n >= 5")
        if not len(X1) > len(X2):
            problems.append("|X1| > |X2|")
        if any(2 * deg[w] < n + 1 for w in X2):
            problems.append("every X2 vertex has degree >= (n + 1)/2")
        if deg[x_a] < 2 or deg[x_b] < 2:
            problems.append("d(x_a), d(x_b) >= 2")
    if problems:
        raise HypothesisError("hypotheses violated: " + "; ".join(problems))

    if end_in_x1:
        first = min(bits(h.masks[x_a] & x2m))
        if len(X2) == 1:
            order = [first]
        else:
            last = min(bits(h.masks[x_b] & x2m & ~(1 << first)))
            order = [first] + [w for w in X2 if w not in (first, last)] + [last]
    else:
        first = min(bits(h.masks[x_a] & x2m & ~(1 << x_b)))
        order = [first] + [w for w in X2 if w not in (first, x_b)] + [x_b]
    free = x1m & ~(1 << x_a) & ~(1 << x_b)
    path = [x_a, order[0]]
    for w_prev, w in zip(order, order[1:]):
        common = h.masks[w_prev] & h.masks[w] & free
        if not common:  # pragma: no cover - excluded by the common-neighbour count
            raise AssertionError("greedy connector choice failed")
        z = common & -common
        free &= ~z
        path += [z.bit_length() - 1, w]
    if end_in_x1:
        path.append(x_b)
    assert validate_path(h, path) and set(X2) <= set(path)
    return path


def _check_bipartition_sides(h: Graph, X1, X2) -> tuple[int, int]:
    x1m, x2m = mask_of(X1), mask_of(X2)
    if x1m & x2m:
        raise GraphError("X1 and X2 overlap")
    for v in X1:
        if h.masks[v] & x1m or h.masks[v] & ~(x1m | x2m):
            raise GraphError(f"vertex {v} has an edge that is not an X1-X2 edge")
    for v in X2:
        if h.masks[v] & x2m or h.masks[v] & ~(x1m | x2m):
            raise GraphError(f"vertex {v} has an edge that is not an X1-X2 edge")
    return x1m, x2m


def erdos_gallai_guarantee(h: Graph, m: int) -> bool:
    """True iff h has at least (m - 1)(K - 1)/2 + 1 edges (which forces a cycle of length >= m)."""
    K = h.n
    if not 3 <= m <= K:
        raise GraphError(f"m must lie in 3..{K}")
    return h.num_edges() >= Fraction((m - 1) * (K - 1), 2) + 1
