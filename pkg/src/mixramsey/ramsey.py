"""Lower-bound certificates and exhaustive small Ramsey numbers for cycles.

A spec lists one target cycle length per colour.  ``verify_lower_bound`` proves a
colouring avoids every target.  ``ramsey_exact`` runs an edge-by-edge search for
colourings of K_N that avoid every target.  Each new edge is checked for a target
cycle through it.  Two symmetries are broken: row 0 of the colouring is sorted, and
colours with equal targets are used in index order within row 0.
"""

from __future__ import annotations

import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Any, Iterator, Sequence

import numpy as np

from . import __version__
from .constructions import theorem_c_value
from .core import EdgeColouring, GraphError, colour_name, parse_colour
from .cycles import DEFAULT_BUDGET, Absence, CycleWitness, find_cycle_exact

WORKERS_ENV = "MIXRAMSEY_WORKERS"
PRUNING_SCHEME = "row0-sorted+equal-target-colour-order/v1"


@dataclass(frozen=True)
class RamseySpec:
    targets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        if not self.targets:
            raise GraphError("need at least one target")
        if any(t < 3 for t in self.targets):
            raise GraphError("cycle lengths must be >= 3")

    @property
    def r(self) -> int:
        return len(self.targets)

    @classmethod
    def parse(cls, text: str) -> "RamseySpec":
        """``"C8:red,C7:blue,C7:green"``; colours may be omitted to mean 0, 1, 2, ..."""
        slots: dict[int, int] = {}
        for i, item in enumerate(t for t in text.split(",") if t.strip()):
            m = re.fullmatch(r"\s*[Cc]?(\d+)\s*(?::\s*(\w+))?\s*", item)
            if not m:
                raise GraphError(f"cannot parse target {item!r}")
            c = parse_colour(m.group(2)) if m.group(2) else i
            if c in slots:
                raise GraphError(f"colour {c} given twice")
            slots[c] = int(m.group(1))
        if sorted(slots) != list(range(len(slots))):
            raise GraphError("targets must cover colours 0..r-1")
        return cls(tuple(slots[c] for c in range(len(slots))))

    def describe(self) -> str:
        return ",".join(f"C{t}:{colour_name(c)}" for c, t in enumerate(self.targets))


@dataclass
class Certificate:
    claim: dict[str, Any]
    evidence: dict[str, Any]
    verified: bool
    stats: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {"claim": self.claim, "evidence": self.evidence, "verified": self.verified,
                "tool": {"name": "mixramsey", "version": __version__}, "stats": self.stats}


def theorem_c_formula(n: int, m: int, l: int) -> int:
    """max{4n, n + 2m, n + 2l} - 3 for n even, m and l odd."""
    return theorem_c_value(n, m, l)


def verify_lower_bound(g: EdgeColouring, spec: RamseySpec, budget: int = DEFAULT_BUDGET) -> Certificate:
    """Certify that ``g`` has no colour-i cycle of length targets[i] for every i.

    A verified certificate shows R > g.n, that is R >= g.n + 1.
    """
    if g.r != spec.r:
        raise GraphError(f"colouring has {g.r} colours but the spec has {spec.r} targets")
    per_colour = []
    verified = True
    exhaustive = True
    for c, L in enumerate(spec.targets):
        if L > g.n:
            per_colour.append({"colour": c, "length": L, "status": "absent",
                               "reason": "longer than the vertex count", "expansions": 0})
            continue
        res = find_cycle_exact(g, c, L, budget)
        if isinstance(res, CycleWitness):
            verified = False
            per_colour.append({"colour": c, "length": L, "status": "found",
                               "cycle": list(res.vertices)})
        elif isinstance(res, Absence):
            per_colour.append({"colour": c, "length": L, "status": "absent",
                               "expansions": res.expansions, "pruned": res.pruned})
        else:
            verified = exhaustive = False
            per_colour.append({"colour": c, "length": L, "status": "budget-exhausted",
                               "expansions": res.expansions})
    claim = {"targets": list(spec.targets), "N": g.n + 1, "direction": "lower",
             "statement": f"R({spec.describe()}) >= {g.n + 1}"}
    evidence = {"colouring_vertices": g.n, "per_colour": per_colour, "exhaustive": exhaustive,
                "budget": budget}
    return Certificate(claim, evidence, verified)


# ---------------------------------------------------------------------------
# exhaustive search


def edge_order(N: int) -> list[tuple[int, int]]:
    """Pairs ordered by their larger endpoint, so each new vertex closes cycles at once."""
    return [(u, v) for v in range(1, N) for u in range(v)]


def _closes_cycle(masks: list[int], u: int, v: int, L: int) -> bool:
    """Is there a u-v path with exactly L - 1 edges in the graph given by ``masks``?"""
    need = L - 1

    def go(x: int, used: int, depth: int) -> bool:
        if depth == need - 1:
            return bool(masks[x] >> v & 1)
        nb = masks[x] & ~used & ~(1 << v)
        while nb:
            low = nb & -nb
            y = low.bit_length() - 1
            if go(y, used | low, depth + 1):
                return True
            nb ^= low
        return False

    return go(u, (1 << u) | (1 << v), 0)


class _Stop(Exception):
    pass


@dataclass
class SearchOutcome:
    avoider: list[int] | None
    nodes: int
    complete: bool


def _predecessors(targets: Sequence[int]) -> list[int]:
    """For each colour, the previous colour with the same target, or -1."""
    out = []
    for c, t in enumerate(targets):
        out.append(max((d for d in range(c) if targets[d] == t), default=-1))
    return out


def _search(N: int, targets: tuple[int, ...], budget: int, prefix: Sequence[int] = (),
            pruned: bool = True, collect: list | None = None) -> SearchOutcome:
    """Depth-first edge colouring of K_N avoiding every target; first avoider or exhaustion.

    With ``collect`` given every avoiding colouring is appended instead of stopping.
    """
    r = len(targets)
    order = edge_order(N)
    E = len(order)
    masks = [[0] * N for _ in range(r)]
    colours = [-1] * E
    pred = _predecessors(targets)
    row0_used = [0] * r
    nodes = 0

    def assign(i: int, c: int) -> bool:
        u, v = order[i]
        if pruned and u == 0:
            if v > 1 and c < colours[i - _row0_gap(v)]:
                return False
            if pred[c] >= 0 and not row0_used[pred[c]]:
                return False
        L = targets[c]
        if L <= N and _closes_cycle(masks[c], u, v, L):
            return False
        return True

    def place(i: int, c: int) -> None:
        u, v = order[i]
        masks[c][u] |= 1 << v
        masks[c][v] |= 1 << u
        colours[i] = c
        if u == 0:
            row0_used[c] += 1

    def unplace(i: int, c: int) -> None:
        u, v = order[i]
        masks[c][u] &= ~(1 << v)
        masks[c][v] &= ~(1 << u)
        colours[i] = -1
        if u == 0:
            row0_used[c] -= 1

    def go(i: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _Stop
        if i == E:
            if collect is not None:
                collect.append(list(colours))
                return False
            return True
        choices = [prefix[i]] if i < len(prefix) else range(r)
        for c in choices:
            if assign(i, c):
                place(i, c)
                if go(i + 1):
                    return True
                unplace(i, c)
        return False

    try:
        found = go(0)
    except _Stop:
        return SearchOutcome(None, nodes, False)
    return SearchOutcome(list(colours) if found else None, nodes, True)


def _row0_gap(v: int) -> int:
    """Distance in ``edge_order`` from pair (0, v) back to pair (0, v - 1)."""
    return v - 1


def colouring_from_order(N: int, r: int, colours: Sequence[int]) -> EdgeColouring:
    mat = np.full((N, N), -1, dtype=np.int64)
    for (u, v), c in zip(edge_order(N), colours):
        mat[u, v] = mat[v, u] = c
    return EdgeColouring.from_matrix(mat, r)


def _prefixes(N: int, targets: tuple[int, ...], depth: int) -> list[tuple[int, ...]]:
    """Pruning-consistent assignments of the first ``depth`` edges (for work splitting)."""
    out = []
    r = len(targets)
    for pre in product(range(r), repeat=depth):
        if _search_prefix_ok(N, targets, pre):
            out.append(pre)
    return out


def _search_prefix_ok(N, targets, pre) -> bool:
    # replay the pruning rules on the prefix alone
    order = edge_order(N)
    r = len(targets)
    masks = [[0] * N for _ in range(r)]
    pred = _predecessors(targets)
    used = [0] * r
    for i, c in enumerate(pre):
        u, v = order[i]
        if u == 0:
            if v > 1 and c < pre[i - _row0_gap(v)]:
                return False
            if pred[c] >= 0 and not used[pred[c]]:
                return False
            used[c] += 1
        if targets[c] <= N and _closes_cycle(masks[c], u, v, targets[c]):
            return False
        masks[c][u] |= 1 << v
        masks[c][v] |= 1 << u
    return True


def _worker(args) -> tuple[list[int] | None, int, bool]:
    N, targets, budget, prefix = args
    out = _search(N, targets, budget, prefix)
    return out.avoider, out.nodes, out.complete


def find_avoiding_colouring(spec: RamseySpec, N: int, budget: int = DEFAULT_BUDGET,
                            workers: int | None = None) -> SearchOutcome:
    """Search K_N for a colouring with no colour-i C_{targets[i]}."""
    if N < 1:
        raise GraphError("N must be positive")
    if N == 1:
        return SearchOutcome([], 1, True)
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    if workers <= 1:
        return _search(N, spec.targets, budget)
    depth = min(len(edge_order(N)), 4)
    jobs = [(N, spec.targets, budget, pre) for pre in _prefixes(N, spec.targets, depth)]
    nodes = 0
    complete = True
    best = None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # results come back in job order, so the reported avoider does not depend on timing
        for avoider, n_nodes, done in pool.map(_worker, jobs):
            nodes += n_nodes
            complete &= done
            if best is None and avoider is not None:
                best = avoider
    return SearchOutcome(best, nodes, complete or best is not None)


@dataclass
class RamseyResult:
    spec: RamseySpec
    lower: int
    upper: int | None
    exact: bool
    per_N: dict[int, dict[str, Any]]
    witness: EdgeColouring | None = None

    @property
    def value(self) -> int | None:
        return self.lower if self.exact else None

    def to_json(self) -> dict[str, Any]:
        out = {"targets": list(self.spec.targets), "lower": self.lower, "upper": self.upper,
               "exact": self.exact, "pruning": PRUNING_SCHEME,
               "per_N": {str(k): v for k, v in sorted(self.per_N.items())}}
        if self.witness is not None:
            out["witness"] = {"n": self.witness.n,
                              "colours": self.witness.colour_matrix().tolist()}
        return out


def ramsey_exact(spec: RamseySpec, N_lo: int, N_hi: int, budget: int = DEFAULT_BUDGET,
                 workers: int | None = None) -> RamseyResult:
    """Smallest N in [N_lo, N_hi] where every colouring of K_N contains a target.

    ``lower`` is one more than the largest N with an avoiding colouring found (or
    N_lo - 1 checked below the range when needed), ``upper`` the first N proved
    unavoidable.  When the budget stops a level, or the range ends first, the
    result is an interval with ``exact`` false.
    """
    if N_lo > N_hi or N_lo < 1:
        raise GraphError("empty search range")
    per_N: dict[int, dict[str, Any]] = {}
    lower = None
    witness = None
    for N in range(N_lo, N_hi + 1):
        out = find_avoiding_colouring(spec, N, budget, workers)
        per_N[N] = {"avoider_found": out.avoider is not None, "complete": out.complete,
                    "nodes": out.nodes}
        if out.avoider is not None:
            lower = N + 1
            witness = colouring_from_order(N, spec.r, out.avoider) if N > 1 else None
            continue
        if not out.complete:
            return RamseyResult(spec, lower or N_lo, None, False, per_N, witness)
        if lower is None:
            below = N - 1
            if below >= 1:
                prev = find_avoiding_colouring(spec, below, budget, workers)
                per_N[below] = {"avoider_found": prev.avoider is not None,
                                "complete": prev.complete, "nodes": prev.nodes}
                if prev.avoider is not None:
                    witness = colouring_from_order(below, spec.r, prev.avoider) if below > 1 else None
                    return RamseyResult(spec, N, N, True, per_N, witness)
            return RamseyResult(spec, 1, N, False, per_N, None)
        return RamseyResult(spec, N, N, True, per_N, witness)
    return RamseyResult(spec, lower, None, False, per_N, witness)


# ---------------------------------------------------------------------------
# naive enumeration for cross-checking


def naive_avoiders(spec: RamseySpec, N: int) -> Iterator[tuple[int, ...]]:
    """Every colouring (in ``edge_order``) of K_N that avoids all targets, no pruning."""
    order = edge_order(N)
    for cols in product(range(spec.r), repeat=len(order)):
        masks = [[0] * N for _ in range(spec.r)]
        for (u, v), c in zip(order, cols):
            masks[c][u] |= 1 << v
            masks[c][v] |= 1 << u
        if not any(L <= N and _has_cycle(masks[c], N, L) for c, L in enumerate(spec.targets)):
            yield cols


def _has_cycle(masks: list[int], N: int, L: int) -> bool:
    for u in range(N):
        nb = masks[u]
        while nb:
            low = nb & -nb
            v = low.bit_length() - 1
            nb ^= low
            if u < v:
                trimmed = list(masks)
                trimmed[u] &= ~(1 << v)
                trimmed[v] &= ~(1 << u)
                if _closes_cycle(trimmed, u, v, L):
                    return True
    return False


def pruned_avoiders(spec: RamseySpec, N: int, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    found: list[list[int]] = []
    out = _search(N, spec.targets, budget, collect=found)
    if not out.complete:
        raise RuntimeError("budget exhausted while collecting avoiders")
    return [tuple(c) for c in found]


def orbit(spec: RamseySpec, N: int, cols: Sequence[int]) -> set[tuple[int, ...]]:
    """All images of a colouring under vertex relabelling and swaps of equal-target colours."""
    order = edge_order(N)
    index = {e: i for i, e in enumerate(order)}
    groups: dict[int, list[int]] = {}
    for c, t in enumerate(spec.targets):
        groups.setdefault(t, []).append(c)
    colour_maps = []
    for combo in product(*(permutations(gr) for gr in groups.values())):
        m = list(range(spec.r))
        for gr, perm in zip(groups.values(), combo):
            for a, b in zip(gr, perm):
                m[a] = b
        colour_maps.append(m)
    out = set()
    for perm in permutations(range(N)):
        moved = [0] * len(order)
        for (u, v), c in zip(order, cols):
            a, b = perm[u], perm[v]
            moved[index[(a, b) if a < b else (b, a)]] = c
        for m in colour_maps:
            out.add(tuple(m[c] for c in moved))
    return out


def canonical_form(spec: RamseySpec, N: int, cols: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least image under vertex relabelling and swaps of equal-target colours."""
    return min(orbit(spec, N, cols))


def canonical_classes(spec: RamseySpec, N: int, colourings) -> set[tuple[int, ...]]:
    """Canonical forms of an iterable of colourings, computing each orbit once."""
    seen: set[tuple[int, ...]] = set()
    out = set()
    for cols in colourings:
        cols = tuple(cols)
        if cols in seen:
            continue
        images = orbit(spec, N, cols)
        seen |= images
        out.add(min(images))
    return out
