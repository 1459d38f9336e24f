"""Coloured graph model, colour-class views, densities, regularity and degree predicates.

Vertices are the integers ``0..n-1``.  Simple graphs keep one neighbour bitmask per
vertex (a Python ``int``), which keeps the search code in the rest of the package
cheap.  Coloured graphs keep an ``n x n`` matrix of colour bitmasks: bit ``c`` of
entry ``(u, v)`` is set when the edge ``uv`` carries colour ``c``; a zero entry is a
missing edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

RED, BLUE, GREEN = 0, 1, 2
COLOUR_NAMES = ("red", "blue", "green")

Number = int | float | Fraction | str


class GraphError(ValueError):
    """Malformed graph, vertex set or colour argument."""


def as_fraction(x: Number) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        # floats are taken at their shortest decimal spelling, not their binary value
        return Fraction(repr(x))
    return Fraction(x)


def colour_name(c: int) -> str:
    return COLOUR_NAMES[c] if c < len(COLOUR_NAMES) else f"colour{c}"


def parse_colour(token: str | int) -> int:
    if isinstance(token, int):
        return token
    token = token.strip().lower()
    if token in COLOUR_NAMES:
        return COLOUR_NAMES.index(token)
    if token.startswith("colour"):
        token = token[len("colour"):]
    try:
        return int(token)
    except ValueError:
        raise GraphError(f"unknown colour {token!r}") from None


# ---------------------------------------------------------------------------
# bitmask helpers


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


# ---------------------------------------------------------------------------
# graphs


class Graph:
    """Immutable simple undirected graph stored as neighbour bitmasks."""

    __slots__ = ("n", "masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        masks = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) outside vertex range 0..{n - 1}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self.n = n
        self.masks = tuple(masks)

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        g = cls.__new__(cls)
        g.n = len(masks)
        g.masks = tuple(masks)
        return g

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls.from_masks([full ^ (1 << v) for v in range(n)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls(a + b, [(u, a + w) for u in range(a) for w in range(b)])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.masks == other.masks

    def __hash__(self) -> int:
        return hash(self.masks)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges()})"

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def neighbours(self, v: int) -> list[int]:
        return list(bits(self.masks[v]))

    def degree(self, v: int, within: int | None = None) -> int:
        m = self.masks[v] if within is None else self.masks[v] & within
        return popcount(m)

    def degrees(self) -> list[int]:
        return [popcount(m) for m in self.masks]

    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.masks[u] >> (u + 1) << (u + 1))]

    def restrict(self, vertices: Iterable[int] | int) -> "Graph":
        """Same vertex labels, keeping only edges with both ends in ``vertices``."""
        keep = vertices if isinstance(vertices, int) else mask_of(vertices)
        return Graph.from_masks([m & keep if keep >> v & 1 else 0 for v, m in enumerate(self.masks)])

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Relabelled induced subgraph; vertex ``vertices[i]`` becomes ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        return Graph(len(vertices), [(index[u], index[v]) for u, v in combinations(vertices, 2)
                                     if self.has_edge(u, v)])

    def components(self, within: int | None = None) -> list[list[int]]:
        """Connected components (sorted vertex lists), ordered by smallest vertex."""
        remaining = self.vertex_mask if within is None else within
        out = []
        while remaining:
            start = remaining & -remaining
            comp = start
            frontier = start
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.masks[v]
                nxt &= remaining & ~comp
                comp |= nxt
                frontier = nxt
            remaining &= ~comp
            out.append(list(bits(comp)))
        return out

    def two_colouring(self, vertices: Iterable[int]) -> dict[int, int] | tuple[int, int]:
        """BFS side assignment of a connected vertex set.

        Returns the side map when the set induces a bipartite graph, else an edge
        ``(u, v)`` whose ends received the same side.
        """
        vs = list(vertices)
        allowed = mask_of(vs)
        side: dict[int, int] = {}
        for s in vs:
            if s in side:
                continue
            side[s] = 0
            queue = [s]
            for u in queue:
                for w in bits(self.masks[u] & allowed):
                    if w not in side:
                        side[w] = side[u] ^ 1
                        queue.append(w)
                    elif side[w] == side[u]:
                        return (u, w)
        return side


class MultiColouredGraph:
    """Graph whose present edges each carry a non-empty set of colours ``0..r-1``."""

    def __init__(self, n: int, r: int, colour_bits: np.ndarray | None = None):
        if n < 1 or r < 1:
            raise GraphError("need n >= 1 and r >= 1")
        if r > 15:
            raise GraphError("at most 15 colours are supported")
        if colour_bits is None:
            colour_bits = np.zeros((n, n), dtype=np.uint16)
        cb = np.array(colour_bits, dtype=np.uint16)
        if cb.shape != (n, n):
            raise GraphError(f"colour matrix must be {n}x{n}")
        if not np.array_equal(cb, cb.T):
            raise GraphError("colour matrix must be symmetric")
        if np.any(np.diag(cb)):
            raise GraphError("diagonal must be empty")
        if np.any(cb >> r):
            raise GraphError(f"colour index out of range for r={r}")
        cb.setflags(write=False)
        self.n = n
        self.r = r
        self._bits = cb

    @classmethod
    def from_edges(cls, n: int, r: int, edges: Iterable[tuple[int, int, Iterable[int]]]):
        cb = np.zeros((n, n), dtype=np.uint16)
        for u, v, cols in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"bad edge ({u}, {v})")
            cols = list(cols)
            if not cols:
                raise GraphError(f"edge ({u}, {v}) has no colour")
            b = 0
            for c in cols:
                if not 0 <= c < r:
                    raise GraphError(f"colour {c} out of range for r={r}")
                b |= 1 << c
            cb[u, v] = cb[v, u] = b
        return cls(n, r, cb)

    def __eq__(self, other: object) -> bool:
        return (type(self) is type(other) and self.n == other.n and self.r == other.r
                and np.array_equal(self._bits, other._bits))

    def __hash__(self) -> int:
        return hash((self.n, self.r, self._bits.tobytes()))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, r={self.r})"

    @property
    def colour_bits(self) -> np.ndarray:
        return self._bits

    def colours_of(self, u: int, v: int) -> frozenset[int]:
        b = int(self._bits[u, v])
        return frozenset(c for c in range(self.r) if b >> c & 1)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._bits[u, v])

    def edges(self) -> Iterator[tuple[int, int, frozenset[int]]]:
        us, vs = np.nonzero(np.triu(self._bits, 1))
        for u, v in zip(us.tolist(), vs.tolist()):
            yield u, v, self.colours_of(u, v)

    def _check_colour(self, c: int) -> None:
        if not 0 <= c < self.r:
            raise GraphError(f"colour {c} out of range for r={self.r}")

    def colour_class(self, c: int) -> Graph:
        self._check_colour(c)
        adj = (self._bits >> c) & 1
        return _graph_from_matrix(adj)

    def support(self) -> Graph:
        return _graph_from_matrix(self._bits != 0)

    def restrict_colours(self, colours: Iterable[int]) -> "MultiColouredGraph":
        """Drop every colour outside ``colours``; edges left with no colour become missing."""
        keep = 0
        for c in colours:
            self._check_colour(c)
            keep |= 1 << c
        return MultiColouredGraph(self.n, self.r, self._bits & keep)

    def induced(self, vertices: Sequence[int]) -> "MultiColouredGraph":
        idx = np.asarray(list(vertices), dtype=int)
        return MultiColouredGraph(len(idx), self.r, self._bits[np.ix_(idx, idx)])


class EdgeColouring(MultiColouredGraph):
    """Colouring of the complete graph K_n: every pair gets exactly one colour."""

    def __init__(self, n: int, r: int, colour_bits: np.ndarray):
        super().__init__(n, r, colour_bits)
        off = ~np.eye(n, dtype=bool)
        vals = self._bits[off]
        if np.any(vals == 0):
            u, v = [int(x) for x in np.argwhere((self._bits == 0) & off)[0]]
            raise GraphError(f"pair ({u}, {v}) is uncoloured")
        if np.any(vals & (vals - 1)):
            u, v = [int(x) for x in np.argwhere((self._bits & (self._bits - 1)) != 0)[0]]
            raise GraphError(f"pair ({u}, {v}) has more than one colour")

    @classmethod
    def from_matrix(cls, colours: np.ndarray, r: int | None = None) -> "EdgeColouring":
        """Build from an integer matrix of colour indices (diagonal ignored)."""
        col = np.asarray(colours, dtype=np.int64)
        n = col.shape[0]
        if r is None:
            off = col[~np.eye(n, dtype=bool)]
            r = int(off.max()) + 1 if off.size else 1
        cb = np.where(np.eye(n, dtype=bool), 0, np.left_shift(1, np.clip(col, 0, 15)))
        return cls(n, r, cb.astype(np.uint16))

    @classmethod
    def from_function(cls, n: int, r: int, colour) -> "EdgeColouring":
        col = np.zeros((n, n), dtype=np.int64)
        for u, v in combinations(range(n), 2):
            col[u, v] = col[v, u] = colour(u, v)
        return cls.from_matrix(col, r)

    @classmethod
    def monochromatic(cls, n: int, c: int = 0, r: int = 1) -> "EdgeColouring":
        return cls.from_function(n, r, lambda u, v: c)

    def colour_of(self, u: int, v: int) -> int:
        if u == v:
            raise GraphError("no colour on a loop")
        return int(self._bits[u, v]).bit_length() - 1

    def colour_matrix(self) -> np.ndarray:
        """Integer colour indices with -1 on the diagonal."""
        out = np.full((self.n, self.n), -1, dtype=np.int64)
        nz = self._bits != 0
        out[nz] = np.log2(self._bits[nz]).astype(np.int64)
        return out


def _graph_from_matrix(adj: np.ndarray) -> Graph:
    n = adj.shape[0]
    weights = [1 << v for v in range(n)]
    masks = []
    for row in np.asarray(adj, dtype=bool):
        m = 0
        for v in np.flatnonzero(row).tolist():
            m |= weights[v]
        masks.append(m)
    return Graph.from_masks(masks)


def as_graph(g: Graph | MultiColouredGraph, c: int | None = None) -> Graph:
    """Simple-graph view: the colour class ``c`` if given, else edge presence."""
    if isinstance(g, Graph):
        return g
    return g.support() if c is None else g.colour_class(c)


def colour_class(g: MultiColouredGraph, c: int) -> Graph:
    """Spanning subgraph of the edges carrying colour ``c``."""
    return g.colour_class(c)


# ---------------------------------------------------------------------------
# density and regularity


def _vertex_set(vs: Iterable[int], n: int, name: str) -> list[int]:
    out = sorted(set(vs))
    if not out:
        raise GraphError(f"{name} is empty")
    if out[0] < 0 or out[-1] >= n:
        raise GraphError(f"{name} has vertices outside 0..{n - 1}")
    return out


def _disjoint_pair(g: Graph, A: Iterable[int], B: Iterable[int]) -> tuple[list[int], list[int]]:
    A = _vertex_set(A, g.n, "A")
    B = _vertex_set(B, g.n, "B")
    if set(A) & set(B):
        raise GraphError("A and B overlap")
    return A, B


def edges_between(g: Graph, A: Iterable[int], B: Iterable[int]) -> int:
    bm = mask_of(B)
    return sum(popcount(g.masks[a] & bm) for a in A)


def density(g: Graph | MultiColouredGraph, A: Iterable[int], B: Iterable[int],
            c: int | None = None) -> Fraction:
    """Exact density e_c(A, B) / (|A||B|) of a disjoint pair."""
    h = as_graph(g, c)
    A, B = _disjoint_pair(h, A, B)
    return Fraction(edges_between(h, A, B), len(A) * len(B))


@dataclass(frozen=True)
class RegularityResult:
    regular: bool
    exhaustive: bool
    density: Fraction
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    witness_density: Fraction | None = None
    checks: int = 0

    def __bool__(self) -> bool:
        return self.regular


EXACT_REGULARITY_LIMIT = 14


def is_eps_regular(g: Graph | MultiColouredGraph, A: Iterable[int], B: Iterable[int],
                   c: int | None = None, eps: Number = Fraction(1, 10), *,
                   mode: str = "exact", limit: int = EXACT_REGULARITY_LIMIT,
                   trials: int = 2000, seed: int = 0) -> RegularityResult:
    """Decide (exact mode) or probe (sampled mode) whether (A, B) is eps-regular.

    Exact mode enumerates every admissible subset of the smaller side; for a fixed
    A' the extreme densities over all B' of a given size come from the B-vertices
    with the most / fewest neighbours in A', so every (A', B') pair is covered
    without enumerating B'.
    """
    h = as_graph(g, c)
    A, B = _disjoint_pair(h, A, B)
    eps = as_fraction(eps)
    if eps <= 0:
        raise GraphError("eps must be positive")
    e = edges_between(h, A, B)
    d = Fraction(e, len(A) * len(B))
    if mode == "exact":
        if max(len(A), len(B)) > limit:
            raise GraphError(f"exact regularity check limited to parts of size <= {limit}")
        return _regular_exact(h, A, B, e, eps)
    if mode == "sampled":
        return _regular_sampled(h, A, B, d, eps, trials, seed)
    raise GraphError(f"unknown mode {mode!r}")


def _regular_exact(h: Graph, A: list[int], B: list[int], e: int, eps: Fraction) -> RegularityResult:
    swapped = len(A) > len(B)
    if swapped:
        A, B = B, A
    na, nb = len(A), len(B)
    p, q = eps.numerator, eps.denominator
    amin = math.ceil(eps * na)
    bmin = max(1, math.ceil(eps * nb))
    amin = max(1, amin)
    # int64 is plenty unless eps has an enormous numerator/denominator
    dtype = np.int64 if max(p, q) < 1 << 40 else object
    adj = np.array([[int(h.has_edge(a, b)) for b in B] for a in A], dtype=dtype)
    sizes = np.arange(1, nb + 1).astype(dtype)
    checks = 0
    for sub in range(1, 1 << na):
        s = popcount(sub)
        if s < amin:
            continue
        rows = [i for i in range(na) if sub >> i & 1]
        counts = adj[rows].sum(axis=0)
        order = np.argsort(-counts, kind="stable")
        top = np.cumsum(counts[order])
        bottom = np.cumsum(counts[order[::-1]])
        t = sizes
        # d' - d >= eps  <=>  q (S na nb - e s t) >= p s t na nb
        base = e * s * t
        scale = na * nb
        hi_bad = q * (top * scale - base) >= p * s * t * scale
        lo_bad = q * (base - bottom * scale) >= p * s * t * scale
        valid = t >= bmin
        checks += int(valid.sum())
        bad = (hi_bad | lo_bad) & valid
        if bad.any():
            j = int(np.flatnonzero(bad)[0])
            chosen = order[: j + 1] if hi_bad[j] else order[::-1][: j + 1]
            A1 = tuple(A[i] for i in rows)
            B1 = tuple(sorted(B[i] for i in chosen.tolist()))
            wd = Fraction(int(top[j] if hi_bad[j] else bottom[j]), s * (j + 1))
            wit = (B1, A1) if swapped else (A1, B1)
            return RegularityResult(False, True, Fraction(e, na * nb), wit, wd, checks)
    return RegularityResult(True, True, Fraction(e, na * nb), checks=checks)


def _regular_sampled(h: Graph, A, B, d: Fraction, eps: Fraction, trials: int, seed: int):
    rng = np.random.default_rng(seed)
    amin = max(1, math.ceil(eps * len(A)))
    bmin = max(1, math.ceil(eps * len(B)))
    for t in range(trials):
        sa = int(rng.integers(amin, len(A) + 1))
        sb = int(rng.integers(bmin, len(B) + 1))
        A1 = sorted(rng.choice(A, size=sa, replace=False).tolist())
        B1 = sorted(rng.choice(B, size=sb, replace=False).tolist())
        d1 = Fraction(edges_between(h, A1, B1), sa * sb)
        if abs(d1 - d) >= eps:
            return RegularityResult(False, False, d, (tuple(A1), tuple(B1)), d1, t + 1)
    return RegularityResult(True, False, d, checks=trials)


# ---------------------------------------------------------------------------
# completeness / sparseness predicates


def is_almost_complete(g: Graph | MultiColouredGraph, a: Number) -> bool:
    """Minimum degree at least (N - 1) - a."""
    h = as_graph(g)
    if h.n == 0:
        return True
    return min(h.degrees()) >= (h.n - 1) - as_fraction(a)


def is_complete_fraction(g: Graph | MultiColouredGraph, fraction: Number) -> bool:
    """``fraction``-complete: minimum degree at least fraction * (N - 1).

    A graph the literature calls (1 - c)-complete is ``is_complete_fraction(g, 1 - c)``.
    """
    h = as_graph(g)
    if h.n == 0:
        return True
    return min(h.degrees()) >= as_fraction(fraction) * (h.n - 1)


def is_sparse(g: Graph | MultiColouredGraph, c: Number) -> bool:
    """Maximum degree at most c * (N - 1)."""
    h = as_graph(g)
    if h.n == 0:
        return True
    return max(h.degrees()) <= as_fraction(c) * (h.n - 1)


def _cross_degrees(h: Graph, U, W) -> tuple[list[int], list[int]]:
    um, wm = mask_of(U), mask_of(W)
    if um & wm:
        raise GraphError("U and W overlap")
    return [h.degree(u, wm) for u in U], [h.degree(w, um) for w in W]


def is_almost_complete_bipartite(g: Graph | MultiColouredGraph, U: Sequence[int],
                                 W: Sequence[int], a: Number) -> bool:
    """Every u in U has >= |W| - a neighbours in W and vice versa (cross edges only)."""
    du, dw = _cross_degrees(as_graph(g), U, W)
    a = as_fraction(a)
    return all(x >= len(W) - a for x in du) and all(x >= len(U) - a for x in dw)


def is_complete_fraction_bipartite(g: Graph | MultiColouredGraph, U: Sequence[int],
                                   W: Sequence[int], fraction: Number) -> bool:
    du, dw = _cross_degrees(as_graph(g), U, W)
    f = as_fraction(fraction)
    return all(x >= f * len(W) for x in du) and all(x >= f * len(U) for x in dw)


def is_sparse_bipartite(g: Graph | MultiColouredGraph, U: Sequence[int], W: Sequence[int],
                        c: Number) -> bool:
    du, dw = _cross_degrees(as_graph(g), U, W)
    c = as_fraction(c)
    return all(x <= c * len(W) for x in du) and all(x <= c * len(U) for x in dw)


# ---------------------------------------------------------------------------
# parity floors


def floor_even(x: Number) -> int:
    """Largest even integer not greater than x (x >= 2)."""
    x = as_fraction(x)
    if x < 2:
        raise ValueError(f"floor_even needs x >= 2, got {x}")
    f = math.floor(x)
    return f - (f % 2)


def floor_odd(x: Number) -> int:
    """Largest odd integer not greater than x (x >= 1)."""
    x = as_fraction(x)
    if x < 1:
        raise ValueError(f"floor_odd needs x >= 1, got {x}")
    f = math.floor(x)
    return f if f % 2 else f - 1


def rational_root(x: Number, k: int, bits_: int = 64) -> Fraction:
    """Rational approximation of x**(1/k) from below, accurate to 2**-bits_."""
    x = as_fraction(x)
    if x < 0:
        raise ValueError("negative radicand")
    scale = 1 << bits_
    # floor((x * scale**k) ** (1/k)) via integer Newton iteration
    target = x.numerator * scale ** k // x.denominator
    return Fraction(_iroot(target, k), scale)


def _iroot(a: int, k: int) -> int:
    if a < 2:
        return a
    y = 1 << ((a.bit_length() + k - 1) // k)
    while True:
        z = ((k - 1) * y + a // y ** (k - 1)) // k
        if z >= y:
            break
        y = z
    while y ** k > a:
        y -= 1
    while (y + 1) ** k <= a:
        y += 1
    return y
