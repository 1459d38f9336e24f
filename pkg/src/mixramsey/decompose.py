"""Bipartite / odd split of a graph without large odd connected-matchings.

If no odd component of a graph on K vertices has a matching on m or more vertices,
its vertex set splits as V' u V'' where V' induces a bipartite graph, every
component of G[V''] is odd, G[V''] has at most m|V''|/2 edges and nothing crosses.
The construction takes V' to be the bipartite components and V'' the rest; the edge
bound is then checked rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .core import (Graph, GraphError, MultiColouredGraph, as_graph, bits, mask_of,
                   popcount)
from .cycles import HypothesisError, components_with_parity, find_odd_cycle
from .matchings import largest_connected_matching


@dataclass(frozen=True)
class Decomposition:
    V_prime: tuple[int, ...]
    V_doubleprime: tuple[int, ...]
    m: int


@dataclass
class DecompositionReport:
    conditions: dict[str, bool]
    witnesses: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.conditions.values())

    def __bool__(self) -> bool:
        return self.ok


def decompose_no_odd_matching(g: Graph | MultiColouredGraph, c: int | None, m: int) -> Decomposition:
    """Split colour class ``c`` of ``g`` into its bipartite and non-bipartite components.

    Raises HypothesisError (with the offending matching attached as ``.matching``)
    when some odd component has a matching on at least m vertices.
    """
    h = as_graph(g, c)
    if not 3 <= m <= h.n:
        raise GraphError(f"m must lie in 3..{h.n}")
    big = largest_connected_matching(h, require_odd=True)
    if big is not None and big.vertex_count >= m:
        err = HypothesisError(f"odd component {list(big.component)} has a matching on "
                              f"{big.vertex_count} >= {m} vertices")
        err.matching = big
        raise err
    vp, vpp = [], []
    for comp in components_with_parity(h):
        (vpp if comp.odd else vp).extend(comp.vertices)
    d = Decomposition(tuple(sorted(vp)), tuple(sorted(vpp)), m)
    report = verify_decomposition(h, None, d)
    # the edge bound follows from the matching-number bound; failure here is a bug
    assert report.ok, f"decomposition failed its own check: {report.witnesses}"
    return d


def verify_decomposition(g: Graph | MultiColouredGraph, c: int | None, d: Decomposition) -> DecompositionReport:
    """Check the four split conditions independently, with a witness for each failure."""
    h = as_graph(g, c)
    vp, vpp = list(d.V_prime), list(d.V_doubleprime)
    pm, ppm = mask_of(vp), mask_of(vpp)
    if pm & ppm or (pm | ppm) != h.vertex_mask or len(vp) + len(vpp) != h.n:
        raise GraphError("V' and V'' must partition the vertex set")
    conds: dict[str, bool] = {}
    wit: dict[str, Any] = {}

    cyc = find_odd_cycle(h, vp)
    conds["(i) G[V'] bipartite"] = cyc is None
    if cyc is not None:
        wit["(i)"] = {"odd_cycle": cyc}

    inside = set(vpp)
    even = [comp.vertices for comp in components_with_parity(h.restrict(ppm))
            if not comp.odd and comp.vertices[0] in inside]
    conds["(ii) components of G[V''] odd"] = not even
    if even:
        wit["(ii)"] = {"even_component": list(even[0])}

    e = sum(popcount(h.masks[v] & ppm) for v in vpp) // 2
    conds["(iii) e(G[V'']) <= m|V''|/2"] = 2 * e <= d.m * len(vpp)
    wit_e = {"edges": e, "bound_times_two": d.m * len(vpp)}
    if not conds["(iii) e(G[V'']) <= m|V''|/2"]:
        wit["(iii)"] = wit_e

    crossing = next(((u, w) for u in vp for w in bits(h.masks[u] & ppm)), None)
    conds["(iv) no V'-V'' edges"] = crossing is None
    if crossing is not None:
        wit["(iv)"] = {"edge": list(crossing)}
    return DecompositionReport(conds, wit)

