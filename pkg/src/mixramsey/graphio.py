"""JSON interchange for coloured graphs and plain edge-list export.

Graph documents look like ``{"n": N, "r": R, "edges": [[u, v, [c, ...]], ...]}``.
Pairs are written with ``u < v`` in lexicographic order so that dumping is
deterministic and a reload compares equal.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .core import EdgeColouring, Graph, GraphError, MultiColouredGraph


def graph_to_json(g: MultiColouredGraph) -> dict[str, Any]:
    edges = [[u, v, sorted(cols)] for u, v, cols in g.edges()]
    return {"n": g.n, "r": g.r, "edges": edges}


def _parse_edges(data: dict[str, Any]) -> tuple[int, int, list[tuple[int, int, list[int]]]]:
    try:
        n, r, raw = data["n"], data["r"], data["edges"]
    except (KeyError, TypeError) as exc:
        raise GraphError(f"graph document missing field {exc}") from None
    if not isinstance(n, int) or not isinstance(r, int):
        raise GraphError("'n' and 'r' must be integers")
    edges = []
    seen = set()
    for i, item in enumerate(raw):
        if not (isinstance(item, list) and len(item) == 3 and isinstance(item[2], list)):
            raise GraphError(f"edges[{i}] must be [u, v, [colours]]")
        u, v, cols = item
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphError(f"edges[{i}] repeats pair {key}")
        seen.add(key)
        edges.append((u, v, cols))
    return n, r, edges


def multigraph_from_json(data: dict[str, Any]) -> MultiColouredGraph:
    n, r, edges = _parse_edges(data)
    return MultiColouredGraph.from_edges(n, r, edges)


def colouring_from_json(data: dict[str, Any]) -> EdgeColouring:
    """Strict loader: every pair present exactly once with exactly one colour."""
    n, r, edges = _parse_edges(data)
    if len(edges) != n * (n - 1) // 2:
        raise GraphError(f"edge colouring of K_{n} needs {n * (n - 1) // 2} pairs, got {len(edges)}")
    for i, (_, _, cols) in enumerate(edges):
        if len(cols) != 1:
            raise GraphError(f"edges[{i}] must carry exactly one colour")
    g = MultiColouredGraph.from_edges(n, r, edges)
    return EdgeColouring(n, r, g.colour_bits)


def graph_from_json(data: dict[str, Any]) -> MultiColouredGraph:
    """Load as an EdgeColouring when the document is total and single-coloured."""
    g = multigraph_from_json(data)
    try:
        return EdgeColouring(g.n, g.r, g.colour_bits)
    except GraphError:
        return g


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def save_graph(g: MultiColouredGraph, path: str | Path, extra: dict[str, Any] | None = None) -> None:
    doc = graph_to_json(g)
    if extra:
        doc.update(extra)
    Path(path).write_text(dumps(doc))


def load_graph(path: str | Path) -> MultiColouredGraph:
    return graph_from_json(json.loads(Path(path).read_text()))


def edge_list_text(g: Graph | MultiColouredGraph, c: int | None = None) -> str:
    """One ``u v`` line per edge of the colour class ``c`` (or of a simple graph)."""
    h = g if isinstance(g, Graph) else (g.support() if c is None else g.colour_class(c))
    return "".join(f"{u} {v}\n" for u, v in h.edges())
