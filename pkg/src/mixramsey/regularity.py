"""Vertex partitions, reduced graphs, long paths in dense pairs and cycle blow-up.

The reduced graph of a coloured graph with respect to a partition ``V0, V1..VK`` has
one vertex per part; parts i, j are joined when the pair is eps-regular in every
colour, and the edge carries every colour whose density reaches ``xi``.  Nothing
here constructs a regular partition: partitions come from the caller or from
``equitable_random_partition`` and are only checked.
"""

from __future__ import annotations

import hashlib
import sys
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .core import (EXACT_REGULARITY_LIMIT, Graph, GraphError, MultiColouredGraph, Number,
                   as_fraction, bits, density, is_eps_regular, mask_of, popcount)
from .cycles import DEFAULT_BUDGET, CycleWitness, HypothesisError, validate_path
from .matchings import ConnectedMatching


class CapacityError(ValueError):
    pass


class ParityError(ValueError):
    pass


class EmbeddingError(RuntimeError):
    def __init__(self, message: str, state: dict | None = None):
        super().__init__(message)
        self.state = state or {}


@dataclass(frozen=True)
class Partition:
    V0: tuple[int, ...]
    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "V0", tuple(sorted(self.V0)))
        object.__setattr__(self, "parts", tuple(tuple(sorted(P)) for P in self.parts))
        if len({len(P) for P in self.parts}) > 1:
            raise GraphError("parts must have equal sizes")
        seen: set[int] = set(self.V0)
        if len(seen) != len(self.V0):
            raise GraphError("V0 repeats a vertex")
        for P in self.parts:
            for v in P:
                if v in seen:
                    raise GraphError(f"vertex {v} lies in two classes")
                seen.add(v)

    @property
    def K(self) -> int:
        return len(self.parts)

    def check(self, n: int) -> None:
        covered = set(self.V0).union(*map(set, self.parts)) if self.parts else set(self.V0)
        if covered != set(range(n)):
            raise GraphError(f"partition does not cover exactly 0..{n - 1}")

    def exceptional_small(self, eps: Number) -> bool:
        """|V0| <= eps N."""
        n = len(self.V0) + sum(map(len, self.parts))
        return len(self.V0) <= as_fraction(eps) * n

    def to_json(self) -> dict[str, Any]:
        return {"V0": list(self.V0), "parts": [list(P) for P in self.parts]}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Partition":
        return cls(tuple(data["V0"]), tuple(tuple(P) for P in data["parts"]))


def equitable_random_partition(g: MultiColouredGraph | int, K: int, seed: int = 0) -> Partition:
    """K parts of floor(n/K) vertices drawn uniformly at random; leftovers go to V0."""
    n = g if isinstance(g, int) else g.n
    if not 1 <= K <= n:
        raise GraphError(f"need 1 <= K <= {n}, got {K}")
    perm = np.random.default_rng(seed).permutation(n).tolist()
    size = n // K
    parts = tuple(tuple(perm[i * size:(i + 1) * size]) for i in range(K))
    return Partition(tuple(perm[K * size:]), parts)


def graph_fingerprint(g: MultiColouredGraph) -> str:
    return hashlib.sha256(np.ascontiguousarray(g.colour_bits).tobytes()
                          + f"{g.n}:{g.r}".encode()).hexdigest()[:16]


@dataclass
class ReducedGraph:
    graph: MultiColouredGraph
    eps: Fraction
    xi: Fraction
    partition: Partition
    mode: str
    source: str
    regular: np.ndarray
    densities: dict[tuple[int, int, int], Fraction] = field(repr=False)
    sampled_pairs: bool = False

    @property
    def K(self) -> int:
        return self.graph.n

    def provenance(self) -> dict[str, Any]:
        return {"eps": str(self.eps), "xi": str(self.xi), "mode": self.mode,
                "sampled": self.sampled_pairs, "source": self.source,
                "partition": self.partition.to_json()}


def build_reduced_graph(g: MultiColouredGraph, pi: Partition, eps: Number, xi: Number,
                        mode: str = "exact", *, trials: int = 2000, seed: int = 0) -> ReducedGraph:
    """Reduced multigraph on part indices.

    ``mode`` is ``exact`` (every subset pair, parts up to the exhaustive limit; larger
    parts fall back to sampling and set ``sampled_pairs``), ``sampled`` or ``claimed``
    (regularity taken on trust from the caller, densities still exact).
    """
    if mode not in ("exact", "sampled", "claimed"):
        raise GraphError(f"unknown regularity mode {mode!r}")
    pi.check(g.n)
    eps, xi = as_fraction(eps), as_fraction(xi)
    K = pi.K
    size = len(pi.parts[0]) if K else 0
    effective = mode
    if mode == "exact" and size > EXACT_REGULARITY_LIMIT:
        effective = "sampled"
    regular = np.zeros((K, K), dtype=bool)
    dens: dict[tuple[int, int, int], Fraction] = {}
    edges = []
    for i in range(K):
        for j in range(i + 1, K):
            A, B = pi.parts[i], pi.parts[j]
            ok = True
            cols = []
            for c in range(g.r):
                d = density(g, A, B, c)
                dens[i, j, c] = dens[j, i, c] = d
                if d >= xi:
                    cols.append(c)
                if effective != "claimed" and ok:
                    ok = bool(is_eps_regular(g, A, B, c, eps, mode=effective, trials=trials,
                                             seed=seed + 7919 * i + 104729 * j + c))
            regular[i, j] = regular[j, i] = ok
            if ok and cols:
                edges.append((i, j, cols))
    rg = MultiColouredGraph.from_edges(K, g.r, edges)
    return ReducedGraph(rg, eps, xi, pi, mode, graph_fingerprint(g), regular, dens,
                        sampled_pairs=effective == "sampled")


# ---------------------------------------------------------------------------
# long paths inside a dense pair


@dataclass(frozen=True)
class PathReport:
    path: tuple[int, ...]
    checked: dict[str, bool]
    reported: dict[str, bool]

    @property
    def length(self) -> int:
        return len(self.path) - 1


def _sq_ge(a: Fraction, b: Fraction) -> bool:
    """a >= sqrt(b), decided exactly on squares."""
    return a >= 0 and a * a >= b


def long_path_hypotheses(h: Graph, V1, V2, ell: int, v_start: int, v_end: int,
                         eps: Number, k: int | None = None) -> tuple[dict[str, bool], dict[str, bool]]:
    """(checked, reported) hypothesis maps for a path of length 2 ell + 1.

    Counting conditions are checked exactly; eps < 1/600 and k >= 1/eps only
    matter asymptotically, so they are reported without being enforced, and
    regularity itself is the caller's certificate.
    """
    eps = as_fraction(eps)
    V1, V2 = list(V1), list(V2)
    k = min(len(V1), len(V2)) if k is None else k
    m1, m2 = mask_of(V1), mask_of(V2)
    e = sum(popcount(h.masks[u] & m2) for u in V1)
    thr = Fraction(4, 9) * eps * k * k  # (2/3 eps^(1/2) k)^2
    checked = {
        "V1, V2 disjoint": not m1 & m2,
        "|V1|, |V2| >= k": len(V1) >= k and len(V2) >= k,
        "e(V1, V2) >= eps^(1/2)|V1||V2|": _sq_ge(Fraction(e), eps * (len(V1) * len(V2)) ** 2),
        "0 <= ell <= k - 2 eps^(1/2) k": ell >= 0 and _sq_ge(Fraction(k - ell), 4 * eps * k * k),
        "v' in V1, v'' in V2": v_start in V1 and v_end in V2,
        "d(v'), d(v'') >= (2/3) eps^(1/2) k":
            _sq_ge(Fraction(popcount(h.masks[v_start] & m2)), thr)
            and _sq_ge(Fraction(popcount(h.masks[v_end] & m1)), thr),
    }
    reported = {"eps < 1/600": eps < Fraction(1, 600), "k >= 1/eps": eps > 0 and k * eps >= 1}
    return checked, reported


def embed_long_path(h: Graph, V1: Sequence[int], V2: Sequence[int], ell: int, v_start: int,
                    v_end: int, eps: Number, k: int | None = None,
                    budget: int = DEFAULT_BUDGET) -> PathReport:
    """A path v_start = a0, b0, a1, ..., a_ell, b_ell = v_end alternating V1, V2.

    Interior vertices are restricted to those with at least (2/3) eps^(1/2) k
    neighbours across.  Backtracking with a fewest-onward-options ordering; a
    dead end after ``budget`` steps raises EmbeddingError with the deepest state.
    """
    checked, reported = long_path_hypotheses(h, V1, V2, ell, v_start, v_end, eps, k)
    bad = [name for name, ok in checked.items() if not ok]
    if bad:
        raise HypothesisError("hypotheses violated: " + "; ".join(bad))
    eps = as_fraction(eps)
    k = min(len(V1), len(V2)) if k is None else k
    m1, m2 = mask_of(V1), mask_of(V2)
    thr = Fraction(4, 9) * eps * k * k
    good1 = mask_of(u for u in V1 if _sq_ge(Fraction(popcount(h.masks[u] & m2)), thr))
    good2 = mask_of(u for u in V2 if _sq_ge(Fraction(popcount(h.masks[u] & m1)), thr))
    if ell == 0:
        if not h.has_edge(v_start, v_end):
            raise EmbeddingError("ell = 0 needs the edge v' v''", {"deepest": [v_start]})
        return PathReport((v_start, v_end), checked, reported)
    path = _alternating_path(h, good1 & ~(1 << v_start), good2 & ~(1 << v_end),
                             ell, v_start, v_end, budget)
    assert validate_path(h, path) and len(path) == 2 * ell + 2
    return PathReport(tuple(path), checked, reported)


def _alternating_path(h: Graph, A: int, B: int, ell: int, s: int, t: int, budget: int) -> list[int]:
    masks = h.masks
    total = 2 * ell + 2
    path = [s]
    used = (1 << s) | (1 << t)
    steps = 0
    deepest: list[int] = []
    into_t = masks[t] & A

    def grow() -> bool:
        nonlocal used, steps, deepest
        steps += 1
        if steps > budget:
            raise EmbeddingError("step budget exhausted", {"deepest": deepest})
        if len(path) > len(deepest):
            deepest = list(path)
        pos = len(path)  # index of the vertex to place next
        last = path[-1]
        if pos == total - 1:
            if masks[last] >> t & 1:
                path.append(t)
                return True
            return False
        side = B if pos % 2 else A
        cand = masks[last] & side & ~used
        if pos == total - 2:
            cand &= into_t
        elif pos == total - 3:
            # the next A vertex must still be able to reach t
            cand = mask_of(v for v in bits(cand) if masks[v] & into_t & ~used)
        if not cand:
            return False
        other = A if pos % 2 else B
        scored = sorted(bits(cand), key=lambda v: (popcount(masks[v] & other & ~used), v))
        for v in scored:
            path.append(v)
            used |= 1 << v
            if grow():
                return True
            used &= ~(1 << v)
            path.pop()
        return False

    limit = sys.getrecursionlimit()
    if total + 100 > limit:
        sys.setrecursionlimit(total + 100)
    try:
        if grow():
            return path
    finally:
        sys.setrecursionlimit(limit)
    raise EmbeddingError("no alternating path of the requested length", {"deepest": deepest})


# ---------------------------------------------------------------------------
# blow-up of a reduced connected-matching


def _walk(rg_class: Graph, src: int, dst: int) -> dict[int, list[int]]:
    """Shortest cluster walks src -> dst of each parity (keys 0, 1) with length >= 1."""
    start = (src, 0)
    prev = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        c, p = node
        for d in bits(rg_class.masks[c]):
            nxt = (d, p ^ 1)
            if nxt not in prev:
                prev[nxt] = node
                queue.append(nxt)
    out = {}
    for parity in (0, 1):
        node = (dst, parity)
        if node not in prev or node == start:
            continue
        walk = []
        while node is not None:
            walk.append(node[0])
            node = prev[node]
        out[parity] = walk[::-1]
    return out


@dataclass(frozen=True)
class BlowUpPlan:
    segments: tuple[tuple[int, int], ...]
    walks: tuple[tuple[int, ...], ...]
    caps: tuple[int, ...]
    lengths: tuple[int, ...]

    @property
    def connector_edges(self) -> int:
        return sum(len(w) - 1 for w in self.walks)


def blow_up_capacity(pi: Partition, M: ConnectedMatching, walks: Sequence[Sequence[int]],
                     eps: Number) -> int:
    """Longest cycle the plan can carry: sum over matching pairs of 2 cap + 1, plus connectors.

    cap = floor(k - 2 eps^(1/2) k) where k is the number of vertices of the smaller
    cluster of the pair left after the interior vertices of every connector walk are
    reserved (the walk ends stay available, they are the segment endpoints).
    """
    caps = _caps(pi, M, walks, as_fraction(eps))
    return sum(2 * c + 1 for c in caps) + sum(len(w) - 1 for w in walks)


def _caps(pi: Partition, M: ConnectedMatching, walks, eps: Fraction) -> list[int]:
    reserved = [0] * pi.K
    for w in walks:
        for c in w[1:-1]:
            reserved[c] += 1
    caps = []
    for x, y in M.edges:
        k = min(len(pi.parts[x]) - reserved[x], len(pi.parts[y]) - reserved[y])
        # largest integer l with l <= k - 2 sqrt(eps) k
        lo = max(0, k - 1)
        cap = -1
        for ell in range(lo, -1, -1):
            if _sq_ge(Fraction(k - ell), 4 * eps * k * k):
                cap = ell
                break
        caps.append(max(cap, 0))
    return caps


def plan_blow_up(rg: ReducedGraph, M: ConnectedMatching, target_length: int, colour: int,
                 eps: Number) -> BlowUpPlan:
    eps = as_fraction(eps)
    cls = rg.graph.colour_class(colour)
    edges = list(M.edges)
    if not edges:
        raise GraphError("empty matching")
    for x, y in edges:
        if not cls.has_edge(x, y):
            raise GraphError(f"reduced edge ({x}, {y}) does not carry colour {colour}")
    s = len(edges)
    options = [_walk(cls, edges[t][1], edges[(t + 1) % s][0]) for t in range(s)]
    for t, opt in enumerate(options):
        if not opt:
            raise GraphError(f"matching edges {t} and {(t + 1) % s} lie in different components")
    choice = [min(opt, key=lambda p: (len(opt[p]), p)) for opt in options]
    need = (target_length - s) % 2
    have = sum(len(options[t][choice[t]]) - 1 for t in range(s)) % 2
    if have != need:
        swaps = [(len(options[t][1 - choice[t]]) - len(options[t][choice[t]]), t)
                 for t in range(s) if 1 - choice[t] in options[t]]
        if not swaps:
            raise ParityError(f"length {target_length} has the wrong parity for a bipartite "
                              f"colour-{colour} component")
        _, t = min(swaps)
        choice[t] = 1 - choice[t]
    walks = tuple(tuple(options[t][choice[t]]) for t in range(s))
    caps = tuple(_caps(rg.partition, M, walks, eps))
    Q = sum(len(w) - 1 for w in walks)
    spare = target_length - Q - s
    # a single pair closed by its own edge needs an interior, or the cycle degenerates
    floor_ = 1 if s == 1 and len(walks[0]) == 2 else 0
    if spare < 2 * floor_ * s or target_length < 3:
        raise CapacityError(f"length {target_length} is below the shortest cycle the plan allows "
                            f"({Q + s + 2 * floor_})")
    total = spare // 2
    if total > sum(caps):
        raise CapacityError(f"length {target_length} exceeds capacity {Q + s + 2 * sum(caps)}")
    lengths = [floor_] * s
    total -= floor_ * s
    # spread evenly, the residual lands on the pairs with room left
    for t in range(s):
        share = min(caps[t] - lengths[t], total // (s - t))
        lengths[t] += share
        total -= share
    for t in range(s):
        add = min(caps[t] - lengths[t], total)
        lengths[t] += add
        total -= add
    assert total == 0
    return BlowUpPlan(tuple(edges), walks, caps, tuple(lengths))


def blow_up_matching_to_cycle(g: MultiColouredGraph, pi: Partition, rg: ReducedGraph,
                              M: ConnectedMatching, target_length: int, colour: int,
                              eps: Number = Fraction(1, 1000),
                              budget: int = DEFAULT_BUDGET) -> CycleWitness:
    """Lift a connected-matching of the reduced graph to a colour cycle of exact length.

    Each matching pair carries one odd path (length 2 l + 1) between the ends of
    consecutive connectors; connectors follow shortest cluster walks in the
    reduced colour class, with one walk rerouted through an odd cycle when the
    target parity requires it.  Connector vertices are fixed first, then every
    pair is embedded with ``embed_long_path``.
    """
    plan = plan_blow_up(rg, M, target_length, colour, eps)
    h = g.colour_class(colour)
    parts = [mask_of(P) for P in pi.parts]
    used = 0
    lifted = []
    s = len(plan.segments)
    for t, walk in enumerate(plan.walks):
        # the walk's ends sit in the current pair's second cluster and the next pair's first
        partner_start = plan.segments[t][0]
        partner_end = plan.segments[(t + 1) % s][1]
        # a pair with ell = 0 is a single edge, so the walk ends around it must be adjacent
        first_nbr = lifted[t - 1][-1] if t and plan.lengths[t] == 0 else None
        close = t == s - 1 and plan.lengths[0] == 0
        last_nbr = (lifted[0][0] if t else -1) if close else None
        seq = _lift_walk(h, parts, walk, used, parts[partner_start], parts[partner_end], budget,
                         first_nbr, last_nbr)
        if seq is None:
            raise EmbeddingError(f"cannot lift connector walk {list(walk)}", {"walk": list(walk)})
        lifted.append(seq)
        used |= mask_of(seq)
    cycle: list[int] = []
    for t, (x, y) in enumerate(plan.segments):
        start = lifted[t - 1][-1]
        end = lifted[t][0]
        interior = used & ~((1 << start) | (1 << end))
        V1 = [v for v in bits(parts[x] & ~interior)]
        V2 = [v for v in bits(parts[y] & ~interior)]
        rep = embed_long_path(h, V1, V2, plan.lengths[t], start, end, eps, budget=budget)
        cycle.extend(rep.path)
        cycle.extend(lifted[t][1:-1])
    witness = CycleWitness(tuple(cycle), colour)
    if len(cycle) != target_length or not witness.validate(g):
        raise EmbeddingError("assembled cycle failed validation", {"cycle": cycle})
    return witness


def _lift_walk(h: Graph, parts: list[int], walk: Sequence[int], used: int,
               start_partner: int, end_partner: int, budget: int,
               first_nbr: int | None = None, last_nbr: int | None = None) -> list[int] | None:
    """Vertices w0..wq, one per walk cluster, forming a path, avoiding ``used``.

    The ends prefer vertices with many neighbours in their pair partner so the
    segment embedding keeps its endpoint degree condition.  ``first_nbr`` and
    ``last_nbr`` force w0 (resp. wq) into that vertex's neighbourhood; a
    ``last_nbr`` of -1 means w0 itself.
    """
    q = len(walk) - 1
    chosen: list[int] = []
    taken = used
    steps = 0

    def score(i: int, v: int) -> int:
        if i == 0:
            return -popcount(h.masks[v] & start_partner)
        if i == q:
            return -popcount(h.masks[v] & end_partner)
        return -popcount(h.masks[v] & parts[walk[i + 1]])

    def go(i: int) -> bool:
        nonlocal taken, steps
        steps += 1
        if steps > budget:
            return False
        pool = parts[walk[i]] & ~taken
        if i:
            pool &= h.masks[chosen[-1]]
        elif first_nbr is not None:
            pool &= h.masks[first_nbr]
        if i == q and last_nbr is not None:
            pool &= h.masks[chosen[0] if last_nbr == -1 and q else last_nbr]
        for v in sorted(bits(pool), key=lambda v: (score(i, v), v))[:8]:
            chosen.append(v)
            taken |= 1 << v
            if i == q or go(i + 1):
                return True
            taken &= ~(1 << v)
            chosen.pop()
        return False

    return chosen if go(0) else None
