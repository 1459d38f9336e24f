"""Coloured structure classes H, J and L: verifiers, searchers and the stability-outcome classifier.

A witness is a partition of the host vertex set ``X1 u X2`` (or ``X1 u X2 u Y1 u Y2``)
plus the class parameters.  Verification is done on ``g`` induced on the union of the
parts.  In the default strict mode that induced graph must itself be in the class.
With ``subgraph=True`` the question becomes whether it *contains* a spanning member:
each edge keeps only the colours its position allows, edges left without a colour
are dropped, and the almost-completeness test runs on what remains.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .core import (BLUE, GREEN, RED, GraphError, MultiColouredGraph, Number, as_fraction,
                   bits, mask_of, popcount, rational_root)
from .cycles import DEFAULT_BUDGET, components_with_parity
from .matchings import largest_connected_matching


@dataclass(frozen=True)
class HWitness:
    X1: tuple[int, ...]
    X2: tuple[int, ...]
    x1: Number
    x2: Number
    c1: Number
    c2: Number
    gamma1: int
    gamma2: int

    @property
    def parts(self) -> tuple[tuple[int, ...], ...]:
        return (self.X1, self.X2)


@dataclass(frozen=True)
class JWitness:
    X1: tuple[int, ...]
    X2: tuple[int, ...]
    x: Number
    c: Number
    gamma1: int
    gamma2: int

    @property
    def parts(self) -> tuple[tuple[int, ...], ...]:
        return (self.X1, self.X2)


@dataclass(frozen=True)
class LWitness:
    X1: tuple[int, ...]
    X2: tuple[int, ...]
    Y1: tuple[int, ...]
    Y2: tuple[int, ...]
    x: Number
    c: Number
    gamma1: int = RED
    gamma2: int = BLUE
    gamma3: int = GREEN

    @property
    def parts(self) -> tuple[tuple[int, ...], ...]:
        return (self.X1, self.X2, self.Y1, self.Y2)


Witness = HWitness | JWitness | LWitness


@dataclass
class StructureReport:
    conditions: dict[str, bool]
    witnesses: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.conditions.values())

    def __bool__(self) -> bool:
        return self.ok


# ---------------------------------------------------------------------------
# colour patterns


def _pattern(w: Witness) -> list[list[int]]:
    """Allowed colour mask for each ordered pair of part indices."""
    if isinstance(w, LWitness):
        g1, g2, g3 = 1 << w.gamma1, 1 << w.gamma2, 1 << w.gamma3
        # parts: 0 = X1, 1 = X2, 2 = Y1, 3 = Y2
        P = [[g1, g3, g2, g2 | g3],
             [g3, g1, g2 | g3, g2],
             [g2, g2 | g3, g1, g3],
             [g2 | g3, g2, g3, g1]]
        return P
    g1, g2 = 1 << w.gamma1, 1 << w.gamma2
    if isinstance(w, JWitness):
        return [[g1, g2], [g2, g1]]
    return [[g1, g1 | g2], [g1 | g2, g1 | g2]]


def _condition_names(w: Witness) -> dict[tuple[int, int], str]:
    if isinstance(w, LWitness):
        names = {}
        for p in range(4):
            names[p, p] = "(iii)(a)"
        for p, q in ((0, 2), (1, 3)):
            names[p, q] = names[q, p] = "(iii)(b)"
        for p, q in ((0, 1), (2, 3)):
            names[p, q] = names[q, p] = "(iii)(c)"
        for p, q in ((0, 3), (1, 2)):
            names[p, q] = names[q, p] = "(iii)(d)"
        return names
    return {(0, 0): "(iii)(a)", (1, 1): "(iii)(a)", (0, 1): "(iii)(b)", (1, 0): "(iii)(b)"}


def _check_parts(g: MultiColouredGraph, parts: Sequence[Sequence[int]]) -> list[int]:
    seen: set[int] = set()
    for P in parts:
        for v in P:
            if not 0 <= v < g.n:
                raise GraphError(f"vertex {v} outside 0..{g.n - 1}")
            if v in seen:
                raise GraphError(f"vertex {v} appears in two parts")
            seen.add(v)
    return sorted(seen)


def _realise(g: MultiColouredGraph, w: Witness, subgraph: bool) -> tuple[list[int], list[int], dict]:
    """Host vertices, part index per host vertex and the colour mask of every kept pair."""
    vs = _check_parts(g, w.parts)
    part = {v: i for i, P in enumerate(w.parts) for v in P}
    pat = _pattern(w)
    bits_ = g.colour_bits
    if isinstance(w, HWitness):
        keep_mask = (1 << w.gamma1) | (1 << w.gamma2)
    kept: dict[tuple[int, int], int] = {}
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            cols = int(bits_[u, v])
            if isinstance(w, HWitness):
                cols &= keep_mask
                if subgraph and cols:
                    # keep the colour the position asks for when the edge offers it
                    if part[u] == part[v] == 0:
                        cols = cols & (1 << w.gamma1) or cols
                    elif part[u] != part[v]:
                        cols = cols & (1 << w.gamma2) or cols
            elif subgraph:
                cols &= pat[part[u]][part[v]]
            if cols:
                kept[u, v] = cols
    return vs, [part[v] for v in vs], kept


def _almost_complete(vs, kept, c: Fraction) -> tuple[bool, Any]:
    deg = {v: 0 for v in vs}
    for u, v in kept:
        deg[u] += 1
        deg[v] += 1
    if not vs:
        return True, None
    worst = min(vs, key=lambda v: (deg[v], v))
    return deg[worst] >= len(vs) - 1 - c, {"vertex": worst, "degree": deg[worst]}


def verify_J(g: MultiColouredGraph, w: JWitness, *, subgraph: bool = False) -> StructureReport:
    return _verify_exclusive(g, w, subgraph, [w.x, w.x])


def verify_L(g: MultiColouredGraph, w: LWitness, *, subgraph: bool = False) -> StructureReport:
    return _verify_exclusive(g, w, subgraph, [w.x] * 4)


def _verify_exclusive(g, w, subgraph, minima) -> StructureReport:
    vs, part_of, kept = _realise(g, w, subgraph)
    pat = _pattern(w)
    names = _condition_names(w)
    conds: dict[str, bool] = {}
    wit: dict[str, Any] = {}
    small = [i for i, (P, lo) in enumerate(zip(w.parts, minima)) if len(P) < as_fraction(lo)]
    conds["(i)"] = not small
    if small:
        wit["(i)"] = {"part": small[0], "size": len(w.parts[small[0]])}
    conds["(ii)"], wit_ii = _almost_complete(vs, kept, as_fraction(w.c))
    if not conds["(ii)"]:
        wit["(ii)"] = wit_ii
    for name in sorted(set(names.values())):
        conds[name] = True
    index = {v: i for i, v in enumerate(vs)}
    for (u, v), cols in kept.items():
        p, q = part_of[index[u]], part_of[index[v]]
        if cols & ~pat[p][q]:
            name = names[p, q]
            if conds[name]:
                conds[name] = False
                wit[name] = {"edge": [u, v], "colours": sorted(bits(cols))}
    return StructureReport(conds, wit)


def verify_H(g: MultiColouredGraph, w: HWitness, *, subgraph: bool = False) -> StructureReport:
    vs, part_of, kept = _realise(g, w, subgraph)
    c2 = as_fraction(w.c2)
    conds: dict[str, bool] = {}
    wit: dict[str, Any] = {}
    n1, n2 = len(w.X1), len(w.X2)
    conds["(i)"] = n1 >= as_fraction(w.x1) and n2 >= as_fraction(w.x2)
    if not conds["(i)"]:
        wit["(i)"] = {"sizes": [n1, n2]}
    conds["(ii)"], wit_ii = _almost_complete(vs, kept, as_fraction(w.c1))
    if not conds["(ii)"]:
        wit["(ii)"] = wit_ii
    g1, g2 = 1 << w.gamma1, 1 << w.gamma2
    # per-vertex colour degrees inside X1 and across
    inner = {v: [0, 0] for v in w.X1}
    cross = {v: [0, 0] for v in vs}
    index = {v: i for i, v in enumerate(vs)}
    for (u, v), cols in kept.items():
        p, q = part_of[index[u]], part_of[index[v]]
        if p == q == 0:
            for a in (u, v):
                inner[a][0] += bool(cols & g1)
                inner[a][1] += bool(cols & g2)
        elif p != q:
            for a in (u, v):
                cross[a][0] += bool(cols & g1)
                cross[a][1] += bool(cols & g2)

    def first(pred, items):
        return next((v for v in items if not pred(v)), None)

    bad = first(lambda v: inner[v][0] >= (1 - c2) * (n1 - 1), w.X1)
    bad2 = first(lambda v: inner[v][1] <= c2 * (n1 - 1), w.X1)
    conds["(iii)(a)"] = bad is None and bad2 is None
    if not conds["(iii)(a)"]:
        wit["(iii)(a)"] = {"vertex": bad if bad is not None else bad2}
    other = {v: (n2 if part_of[index[v]] == 0 else n1) for v in vs}
    bad = first(lambda v: cross[v][1] >= (1 - c2) * other[v], vs)
    bad2 = first(lambda v: cross[v][0] <= c2 * other[v], vs)
    conds["(iii)(b)"] = bad is None and bad2 is None
    if not conds["(iii)(b)"]:
        wit["(iii)(b)"] = {"vertex": bad if bad is not None else bad2}
    return StructureReport(conds, wit)


def verify(g: MultiColouredGraph, w: Witness, *, subgraph: bool = False) -> StructureReport:
    if isinstance(w, LWitness):
        return verify_L(g, w, subgraph=subgraph)
    if isinstance(w, JWitness):
        return verify_J(g, w, subgraph=subgraph)
    return verify_H(g, w, subgraph=subgraph)


# ---------------------------------------------------------------------------
# search


@dataclass(frozen=True)
class NotFound:
    exhaustive: bool
    nodes: int
    reason: str = ""

    def __bool__(self) -> bool:
        return False


EXHAUSTIVE_LIMIT = 12
H_EXHAUSTIVE_LIMIT = 14


def _make(cls: str, parts, params: dict) -> Witness:
    parts = [tuple(sorted(P)) for P in parts]
    if cls == "L":
        return LWitness(*parts, params["x"], params["c"], params.get("gamma1", RED),
                        params.get("gamma2", BLUE), params.get("gamma3", GREEN))
    if cls == "J":
        return JWitness(*parts, params["x"], params["c"], params["gamma1"], params["gamma2"])
    return HWitness(*parts, params["x1"], params["x2"], params["c1"], params["c2"],
                    params["gamma1"], params["gamma2"])


class _Budget(Exception):
    pass


def search_structure(g: MultiColouredGraph, cls: str, params: dict, budget: int = DEFAULT_BUDGET,
                     *, vertices: Sequence[int] | None = None, subgraph: bool = False,
                     limit: int | None = None) -> Witness | NotFound:
    """Find a partition of ``vertices`` (default: all) witnessing membership in ``cls``.

    J and L are searched by backtracking over vertices (in breadth-first order of the
    support) with a per-vertex budget of pairs that may be lost to the
    almost-completeness slack ``c``; this is exact at every size, the cap only guards
    running time.  H has no exclusivity to prune on, so it is seeded from closed
    gamma1-neighbourhoods and refined; below ``limit`` vertices every bipartition is
    tried, which makes a NotFound exhaustive.
    """
    cls = cls.upper()
    vs = sorted(range(g.n) if vertices is None else set(vertices))
    if cls in ("J", "L"):
        return _search_exclusive(g, cls, params, vs, budget, subgraph)
    if cls == "H":
        return _search_H(g, params, vs, budget, subgraph,
                         H_EXHAUSTIVE_LIMIT if limit is None else limit)
    raise GraphError(f"unknown structure class {cls!r}")


def _search_exclusive(g, cls, params, vs, budget, subgraph) -> Witness | NotFound:
    P = 4 if cls == "L" else 2
    probe = _make(cls, [[]] * P, params)
    pat = _pattern(probe)
    c = as_fraction(params["c"])
    slack = int(c // 1) if c >= 0 else -1
    x = as_fraction(params["x"])
    if len(vs) < P * x or slack < 0:
        return NotFound(True, 0, "too few vertices for the part minima")
    cb = g.colour_bits
    vmask = mask_of(vs)
    support = g.support()
    # breadth-first order keeps each new vertex adjacent to placed ones
    order, seen = [], 0
    for s in vs:
        if seen >> s & 1:
            continue
        seen |= 1 << s
        queue = [s]
        for u in queue:
            order.append(u)
            for w in bits(support.masks[u] & vmask & ~seen):
                seen |= 1 << w
                queue.append(w)
    n = len(order)
    loss = {v: len(vs) - 1 - popcount(support.masks[v] & vmask) for v in vs}
    if any(loss[v] > slack for v in vs):
        return NotFound(True, 0, "host graph is not c-almost-complete")
    assign: dict[int, int] = {}
    sizes = [0] * P
    nodes = [0]

    def place(i: int) -> bool:
        nodes[0] += 1
        if nodes[0] > budget:
            raise _Budget
        if i == n:
            return all(s >= x for s in sizes)
        v = order[i]
        remaining = n - i
        need = sum(max(0, int(-(-x // 1)) - s) for s in sizes)
        if need > remaining:
            return False
        # the class symmetries act transitively on parts, so the first vertex goes to part 0
        choices = [0] if i == 0 else range(P)
        for p in choices:
            changed = []
            ok = True
            for u, q in assign.items():
                cols = int(cb[u, v])
                if not cols:
                    continue
                allowed = pat[p][q]
                if cols & ~allowed:
                    if not subgraph or not cols & allowed:
                        if not subgraph:
                            ok = False
                            break
                        changed.append(u)
            if ok and subgraph:
                if loss[v] + len(changed) > slack:
                    ok = False
                else:
                    for u in changed:
                        if loss[u] + 1 > slack:
                            ok = False
                            break
            if not ok:
                continue
            for u in changed:
                loss[u] += 1
            loss[v] += len(changed)
            assign[v] = p
            sizes[p] += 1
            if place(i + 1):
                return True
            sizes[p] -= 1
            del assign[v]
            loss[v] -= len(changed)
            for u in changed:
                loss[u] -= 1
        return False

    try:
        found = place(0)
    except _Budget:
        return NotFound(False, nodes[0], "budget exhausted")
    if not found:
        return NotFound(True, nodes[0], "search space exhausted")
    parts = [[v for v in vs if assign[v] == p] for p in range(P)]
    w = _make(cls, parts, params)
    assert verify(g, w, subgraph=subgraph), "search produced a witness that fails verification"
    return w


def _search_H(g, params, vs, budget, subgraph, limit) -> Witness | NotFound:
    g1 = g.colour_class(params["gamma1"])
    vmask = mask_of(vs)
    tried = set()
    nodes = 0

    def attempt(X1mask: int):
        nonlocal nodes
        nodes += 1
        if X1mask in tried:
            return None
        tried.add(X1mask)
        w = _make("H", [list(bits(X1mask)), list(bits(vmask & ~X1mask))], params)
        return w if verify_H(g, w, subgraph=subgraph) else None

    for v in vs:
        X1 = (g1.masks[v] & vmask) | (1 << v)
        for _ in range(4):
            w = attempt(X1)
            if w:
                return w
            # keep the vertices seeing most of X1 in gamma1
            keep = 0
            for u in bits(vmask):
                others = X1 & ~(1 << u)
                if 2 * popcount(g1.masks[u] & others) > popcount(others):
                    keep |= 1 << u
            if keep == X1 or not keep >> v & 1:
                break
            X1 = keep
    if len(vs) > limit:
        return NotFound(False, nodes, "heuristic seeds failed above the exhaustive limit")
    # (ii) does not depend on the bipartition
    keep = g.colour_class(params["gamma1"]).masks, g.colour_class(params["gamma2"]).masks
    if any(popcount((keep[0][v] | keep[1][v]) & vmask) < len(vs) - 1 - as_fraction(params["c1"])
           for v in vs):
        return NotFound(True, nodes, "host graph is not c1-almost-complete")
    c2 = as_fraction(params["c2"])
    lo1 = max(1, _ceil(as_fraction(params["x1"])))
    lo2 = max(1, _ceil(as_fraction(params["x2"])))
    deg1 = {v: popcount(g1.masks[v] & vmask) for v in vs}
    for n1 in range(lo1, len(vs) - lo2 + 1):
        # every X1 vertex needs gamma1-degree (1 - c2)(n1 - 1) inside X1
        cand = [v for v in vs if deg1[v] >= (1 - c2) * (n1 - 1)]
        miss = int(c2 * (n1 - 1))
        for X1 in _near_cliques(g1, cand, n1, miss):
            if nodes > budget:
                return NotFound(False, nodes, "budget exhausted")
            w = attempt(mask_of(X1))
            if w:
                return w
    return NotFound(True, nodes, "all bipartitions rejected")


# ---------------------------------------------------------------------------
# stability outcomes


def _near_cliques(h, cand: list[int], size: int, miss: int):
    """Subsets of ``cand`` of the given size in which every vertex misses at most
    ``miss`` of the others in ``h``."""
    chosen: list[int] = []
    missed: list[int] = []

    def go(start: int):
        if len(chosen) == size:
            yield tuple(chosen)
            return
        for i in range(start, len(cand) - (size - len(chosen)) + 1):
            v = cand[i]
            adj = h.masks[v]
            own = sum(1 for u in chosen if not adj >> u & 1)
            if own > miss:
                continue
            bumped = [j for j, u in enumerate(chosen) if not adj >> u & 1]
            if any(missed[j] + 1 > miss for j in bumped):
                continue
            for j in bumped:
                missed[j] += 1
            chosen.append(v)
            missed.append(own)
            yield from go(i + 1)
            chosen.pop()
            missed.pop()
            for j in bumped:
                missed[j] -= 1

    yield from go(0)


def _ceil(x: Fraction) -> int:
    return -(-x.numerator // x.denominator)


def _root(x: Fraction, k: int) -> Fraction:
    return rational_root(x, k)


@dataclass(frozen=True)
class TheoremDParams:
    alpha1: Fraction
    alpha2: Fraction
    alpha3: Fraction
    eta: Fraction
    k: int

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "alpha3", "eta"):
            val = as_fraction(getattr(self, name))
            if val <= 0:
                raise ValueError(f"{name} must be positive")
            object.__setattr__(self, name, val)
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError("k must be a positive integer")

    @property
    def c(self) -> Fraction:
        a1, a2, a3 = self.alpha1, self.alpha2, self.alpha3
        return max(4 * a1, a1 + 2 * a2, a1 + 2 * a3)

    @property
    def beta(self) -> Fraction:
        return max(self.alpha2, self.alpha3)

    @property
    def eta_D(self) -> Fraction:
        a = (self.alpha1, self.alpha2, self.alpha3)
        return min([Fraction(1, 10 ** 40)] + [(x / 50) ** 16 for x in a]
                   + [(min(a) / (100 * max(a))) ** 4])

    def window(self) -> tuple[Fraction, Fraction]:
        return (self.c - self.eta) * self.k, (self.c - self.eta / 2) * self.k


@dataclass
class Outcome:
    label: str
    witness: Any
    report: dict[str, Any]

    @property
    def found(self) -> bool:
        return self.label != "none-found"


def _class_H_params(x1, x2, c1, c2, gamma1, gamma2) -> dict:
    return {"x1": x1, "x2": x2, "c1": c1, "c2": c2, "gamma1": gamma1, "gamma2": gamma2}


def theorem_d_classify(g: MultiColouredGraph, p: TheoremDParams,
                       budget: int = DEFAULT_BUDGET) -> Outcome:
    """First outcome among (i)..(vi) that verifiably holds in the three-multicoloured ``g``.

    Side conditions of the statement (completeness, vertex window, eta < eta_D and
    the "occurs only if" clauses) are evaluated and reported, never enforced.
    """
    if g.r < 3:
        raise GraphError("need a three-multicoloured graph")
    K, k, eta = g.n, p.k, p.eta
    lo, hi = p.window()
    eta4 = eta ** 4
    side = {
        "(1 - eta^4)-complete": g.n < 2 or min(g.support().degrees()) >= (1 - eta4) * (K - 1),
        "K in window": lo <= K <= hi,
        "eta < eta_D": eta < p.eta_D,
        "asymptotic k > k_D": "unchecked: k_D has no explicit value, so desk-scale instances "
                              "may legitimately yield none-found",
    }
    searches: dict[str, Any] = {}

    def done(label, witness, **extra):
        report = {"side_conditions": side, "searches": searches}
        report.update(extra)
        return Outcome(label, witness, report)

    for label, colour, alpha, odd in (("(i)", RED, p.alpha1, False), ("(ii)", BLUE, p.alpha2, True),
                                      ("(iii)", GREEN, p.alpha3, True)):
        m = largest_connected_matching(g, colour, require_odd=odd)
        searches[label] = {"exhaustive": True, "best": m.vertex_count if m else 0}
        if m is not None and m.vertex_count >= alpha * k:
            return done(label, m)

    # (iv): W is the union of the odd gamma-components
    r64 = _root(eta, 64)
    half_root = _root(eta, 2)
    for alpha_star, gamma in ((p.alpha2, BLUE), (p.alpha3, GREEN)):
        comps = [cp for cp in components_with_parity(g, gamma) if cp.odd]
        W = sorted(v for cp in comps for v in cp.vertices)
        families = {
            "H1": _class_H_params((p.alpha1 - 2 * r64) * k, (alpha_star / 2 - 2 * r64) * k,
                                  4 * eta ** 2 * k, r64, RED, gamma),
            "H2": _class_H_params((alpha_star - 2 * r64) * k, (p.alpha1 / 2 - 2 * r64) * k,
                                  4 * eta ** 2 * k, r64, gamma, RED),
        }
        key = f"(iv) gamma={gamma}"
        if len(W) < (p.c - half_root) * k:
            searches[key] = {"W": len(W), "reason": "W below (c - eta^(1/2))k"}
            continue
        pair = _two_copies(g, [cp.vertices for cp in comps], families, budget)
        searches[key] = {"W": len(W), "copies": len(pair)}
        if len(pair) == 2:
            furthermore = p.alpha1 <= p.beta <= alpha_star + 24 * _root(eta, 4)
            return done("(iv)", {"W": W, "X": pair[0], "Y": pair[1], "gamma": gamma},
                        furthermore={"alpha1 <= beta <= alpha* + 24 eta^(1/4)": furthermore})

    r32 = _root(eta, 32)
    for gamma in (BLUE, GREEN):
        families = {
            "H2*": _class_H_params((p.beta - 2 * r32) * k, (p.alpha1 / 2 - 2 * r32) * k,
                                   4 * eta4 * k, r32, gamma, RED),
            "Jb": {"x": (p.alpha1 - 18 * half_root) * k, "c": 4 * eta4 * k,
                   "gamma1": RED, "gamma2": gamma},
        }
        cands = [tuple(c) for c in g.colour_class(gamma).components() if len(c) > 1]
        pair = _two_copies(g, cands, families, budget)
        searches[f"(v) gamma={gamma}"] = {"copies": len(pair)}
        if len(pair) == 2:
            return done("(v)", {"X": pair[0], "Y": pair[1], "gamma": gamma},
                        furthermore={"alpha1 <= beta": p.alpha1 <= p.beta})

    params = {"x": (p.alpha1 / 2 + eta / 4) * k, "c": 4 * eta4 * k}
    res = search_structure(g, "L", params, budget, subgraph=True)
    searches["(vi)"] = {"exhaustive": not isinstance(res, NotFound) or res.exhaustive}
    if not isinstance(res, NotFound):
        return done("(vi)", res, furthermore={"alpha1 >= beta": p.alpha1 >= p.beta})
    return done("none-found", None)


def _two_copies(g, candidates, families, budget) -> list[tuple[str, Witness]]:
    """Greedily pick up to two disjoint candidate vertex sets hosting a structure."""
    found: list[tuple[str, Witness]] = []
    used = 0
    for cand in sorted(candidates, key=lambda c: (-len(c), c)):
        if mask_of(cand) & used:
            continue
        for name, params in families.items():
            cls = "J" if "x" in params else "H"
            res = search_structure(g, cls, params, budget, vertices=cand, subgraph=True)
            if not isinstance(res, NotFound):
                found.append((name, res))
                used |= mask_of(cand)
                break
        if len(found) == 2:
            break
    return found
