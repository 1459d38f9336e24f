"""Command-line front end: ``mixramsey <subcommand> ...`` (or ``python -m mixramsey``).

Every command prints one JSON document (or writes it to ``--out``).  Exit status is
0 when the computation completed and any claim checked out, 1 on errors and refuted
claims, 2 when a budget stopped the computation first.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__
from . import constructions as cons
from .core import GraphError, MultiColouredGraph, as_fraction, parse_colour
from .cycles import DEFAULT_BUDGET, Absence, CycleWitness, HypothesisError, find_cycle_exact
from .decompose import decompose_no_odd_matching, verify_decomposition
from .graphio import dumps, graph_to_json, graph_from_json
from .matchings import ConnectedMatching, largest_connected_matching
from .ramsey import WORKERS_ENV, RamseySpec, ramsey_exact, verify_lower_bound
from .regularity import (CapacityError, EmbeddingError, ParityError, Partition,
                         blow_up_matching_to_cycle, build_reduced_graph, equitable_random_partition)
from .structures import (HWitness, JWitness, LWitness, NotFound, TheoremDParams, search_structure,
                         theorem_d_classify, verify)

OK, FAILED, INCONCLUSIVE = 0, 1, 2


class CliError(Exception):
    pass


# ---------------------------------------------------------------------------
# input helpers


def _read_json(path: str) -> Any:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None


def _load_graph(path: str) -> MultiColouredGraph:
    return graph_from_json(_read_json(path))


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise CliError(f"expected comma-separated integers, got {text!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise CliError(f"not a rational number: {text!r}") from None


def _kv(text: str) -> dict[str, Any]:
    """``x=7,c=0,gamma1=red`` -> dict; gamma values are colours, the rest rationals."""
    out: dict[str, Any] = {}
    for item in (t for t in text.split(",") if t.strip()):
        if "=" not in item:
            raise CliError(f"expected key=value, got {item!r}")
        k, v = (s.strip() for s in item.split("=", 1))
        out[k] = parse_colour(v) if k.startswith("gamma") else _rational(v)
    return out


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise CliError(f"expected a range like 5..8, got {text!r}")
    return int(lo), int(hi)


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        seq = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in seq]
    if hasattr(x, "item"):
        return x.item()
    return x


def _matching_json(m: ConnectedMatching | None) -> Any:
    if m is None:
        return None
    return {"edges": [list(e) for e in m.edges], "colour": m.colour, "component": list(m.component),
            "odd": m.odd, "vertex_count": m.vertex_count}


def _witness_json(w) -> dict[str, Any]:
    out: dict[str, Any] = {"class": type(w).__name__[0]}
    for name in w.__dataclass_fields__:
        out[name] = _jsonable(getattr(w, name))
    return out


def _outcome_witness(w) -> Any:
    if w is None:
        return None
    if isinstance(w, ConnectedMatching):
        return _matching_json(w)
    if isinstance(w, dict):
        out = {}
        for k, v in w.items():
            if isinstance(v, tuple) and len(v) == 2 and isinstance(v[0], str):
                out[k] = {"family": v[0], "witness": _witness_json(v[1])}
            else:
                out[k] = _jsonable(v)
        return out
    return _witness_json(w)


# ---------------------------------------------------------------------------
# commands (each returns (document, exit status))


FAMILIES = {
    "eoo1": (3, lambda p: cons.eoo_construction_1(*p)),
    "eoo2": (2, lambda p: cons.eoo_construction_2(*p)),
    "eoo3": (2, lambda p: cons.eoo_construction_3(*p)),
    "even2": (1, lambda p: cons.two_colour_even_extremal(*p)),
    "evenr": (2, lambda p: cons.r_colour_even_extremal(*p)),
    "odd2": (1, lambda p: cons.two_colour_odd_extremal(*p)),
    "oddr": (2, lambda p: cons.odd_extremal(*p)),
    "mixed4": (3, lambda p: cons.mixed_parity_doubling(*p)),
    "lower-bound": (3, lambda p: cons.lower_bound_colouring(*p)),
}


def cmd_construct(a) -> tuple[dict, int]:
    if a.family not in FAMILIES:
        raise CliError(f"unknown family {a.family!r}; choose from {', '.join(FAMILIES)}")
    arity, make = FAMILIES[a.family]
    params = _ints(a.params)
    if len(params) != arity:
        raise CliError(f"family {a.family} takes {arity} parameters, got {len(params)}")
    g = make(params)
    doc = graph_to_json(g)
    doc["construction"] = {"family": a.family, "params": params}
    return doc, OK


def cmd_verify_lb(a) -> tuple[dict, int]:
    g = _load_graph(a.graph)
    spec = RamseySpec.parse(a.targets)
    if g.r != spec.r:
        raise CliError(f"graph has {g.r} colours, targets name {spec.r}")
    cert = verify_lower_bound(g, spec, a.budget)
    status = OK if cert.verified else (INCONCLUSIVE if not cert.evidence["exhaustive"] else FAILED)
    return cert.to_json(), status


def cmd_detect_cycle(a) -> tuple[dict, int]:
    g = _load_graph(a.graph)
    c = parse_colour(a.colour)
    res = find_cycle_exact(g, c, a.length, a.budget)
    doc = {"colour": c, "length": a.length}
    if isinstance(res, CycleWitness):
        doc.update(status="found", cycle=list(res.vertices))
        return doc, OK
    doc["expansions"] = res.expansions
    if isinstance(res, Absence):
        doc.update(status="absent", pruned=res.pruned, exhaustive=True)
        return doc, OK
    doc.update(status="budget-exhausted", exhaustive=False)
    return doc, INCONCLUSIVE


def cmd_matching(a) -> tuple[dict, int]:
    g = _load_graph(a.graph)
    c = parse_colour(a.colour)
    m = largest_connected_matching(g, c, require_odd=a.odd)
    best = m.vertex_count if m else 0
    doc = {"colour": c, "require_odd": a.odd, "matching": _matching_json(m)}
    if a.min_vertices is None:
        return doc, OK
    holds = best >= a.min_vertices
    doc["claim"] = {"min_vertices": a.min_vertices, "verified": holds}
    return doc, OK if holds else FAILED


def cmd_decompose(a) -> tuple[dict, int]:
    g = _load_graph(a.graph)
    c = parse_colour(a.colour)
    try:
        d = decompose_no_odd_matching(g, c, a.m)
    except HypothesisError as exc:
        return {"error": str(exc), "counterexample": _matching_json(exc.matching)}, FAILED
    rep = verify_decomposition(g, c, d)
    return {"v_prime": list(d.V_prime), "v_doubleprime": list(d.V_doubleprime), "m": d.m,
            "report": {"conditions": rep.conditions, "witnesses": _jsonable(rep.witnesses)}}, OK


WITNESS_TYPES = {"H": HWitness, "J": JWitness, "L": LWitness}


def cmd_structure(a) -> tuple[dict, int]:
    g = _load_graph(a.graph)
    cls = a.cls.upper()
    params = _kv(a.params or "")
    if a.witness:
        data = _read_json(a.witness)
        fields = WITNESS_TYPES[cls].__dataclass_fields__
        merged = {**params, **data}
        kwargs = {}
        for f in fields:
            if f not in merged:
                continue
            v = merged[f]
            if f[0] in "XY":
                v = tuple(v)
            elif f.startswith("gamma"):
                v = parse_colour(v)
            else:
                v = _rational(str(v))
            kwargs[f] = v
        try:
            w = WITNESS_TYPES[cls](**kwargs)
        except TypeError as exc:
            raise CliError(f"incomplete witness: {exc}") from None
        rep = verify(g, w, subgraph=a.subgraph)
        doc = {"mode": "verify", "witness": _witness_json(w), "conditions": rep.conditions,
               "failures": _jsonable(rep.witnesses), "verified": rep.ok}
        return doc, OK if rep.ok else FAILED
    res = search_structure(g, cls, params, a.budget, subgraph=a.subgraph)
    if isinstance(res, NotFound):
        doc = {"mode": "search", "found": False, "exhaustive": res.exhaustive, "nodes": res.nodes,
               "reason": res.reason}
        return doc, OK if res.exhaustive else INCONCLUSIVE
    return {"mode": "search", "found": True, "witness": _witness_json(res)}, OK


def cmd_classify_d(a) -> tuple[dict, int]:
    g = _load_graph(a.graph)
    p = TheoremDParams(_rational(a.alpha1), _rational(a.alpha2), _rational(a.alpha3),
                       _rational(a.eta), a.k)
    out = theorem_d_classify(g, p, a.budget)
    wj = _outcome_witness(out.witness)
    doc = {"params": {"alpha1": str(p.alpha1), "alpha2": str(p.alpha2), "alpha3": str(p.alpha3),
                      "eta": str(p.eta), "k": p.k, "c": str(p.c)},
           "outcome": out.label, "witness": wj, "report": _jsonable(out.report)}
    return doc, OK


def _partition_for(a, g) -> Partition:
    if a.partition:
        return Partition.from_json(_read_json(a.partition))
    if a.K is None:
        raise CliError("give --partition or --K")
    return equitable_random_partition(g, a.K, a.seed)


def cmd_reduce(a) -> tuple[dict, int]:
    g = _load_graph(a.graph)
    pi = _partition_for(a, g)
    rg = build_reduced_graph(g, pi, _rational(a.eps), _rational(a.xi), a.mode, seed=a.seed)
    doc = graph_to_json(rg.graph)
    doc["provenance"] = rg.provenance()
    return doc, OK


def cmd_blowup(a) -> tuple[dict, int]:
    g = _load_graph(a.graph)
    pi = _partition_for(a, g)
    rg = build_reduced_graph(g, pi, _rational(a.reg_eps), _rational(a.xi), a.mode, seed=a.seed)
    c = parse_colour(a.colour)
    data = _read_json(a.matching)
    edges = tuple(tuple(e) for e in (data["edges"] if isinstance(data, dict) else data))
    cls = rg.graph.colour_class(c)
    comp = next((tuple(cp) for cp in cls.components() if edges and edges[0][0] in cp), ())
    M = ConnectedMatching(edges, c, comp, False)
    try:
        cyc = blow_up_matching_to_cycle(g, pi, rg, M, a.length, c, _rational(a.eps), a.budget)
    except (CapacityError, ParityError) as exc:
        return {"error": type(exc).__name__, "message": str(exc)}, FAILED
    except EmbeddingError as exc:
        return {"error": "EmbeddingError", "message": str(exc), "state": _jsonable(exc.state)}, INCONCLUSIVE
    return {"cycle": list(cyc.vertices), "length": cyc.length, "colour": c,
            "reduced": {"provenance": rg.provenance()}}, OK


def cmd_search_ramsey(a) -> tuple[dict, int]:
    spec = RamseySpec.parse(a.targets)
    lo, hi = _range(a.range)
    res = ramsey_exact(spec, lo, hi, a.budget, a.workers)
    doc = res.to_json()
    complete = all(v["complete"] for v in res.per_N.values())
    return doc, OK if complete else INCONCLUSIVE


COMMANDS = {
    "construct": cmd_construct, "verify-lb": cmd_verify_lb, "detect-cycle": cmd_detect_cycle,
    "matching": cmd_matching, "decompose": cmd_decompose, "structure": cmd_structure,
    "classify-d": cmd_classify_d, "reduce": cmd_reduce, "blowup": cmd_blowup,
    "search-ramsey": cmd_search_ramsey,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--mode", choices=("exact", "sampled", "claimed"), default="exact",
                        help="regularity checking mode")
    common.add_argument("--out", help="write the JSON document here instead of stdout")
    common.add_argument("--timing", action="store_true", help="add wall-clock timing to the output")

    p = argparse.ArgumentParser(prog="mixramsey", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"mixramsey {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("construct", parents=[common], help="build an extremal colouring")
    s.add_argument("--family", required=True, help=", ".join(FAMILIES))
    s.add_argument("--params", required=True, help="comma-separated integers, e.g. 8,7,7")

    s = sub.add_parser("verify-lb", parents=[common], help="certify a colouring avoids the targets")
    s.add_argument("--graph", required=True)
    s.add_argument("--targets", required=True, help='e.g. "C8:red,C7:blue,C7:green"')

    s = sub.add_parser("detect-cycle", parents=[common], help="exact monochromatic cycle search")
    s.add_argument("--graph", required=True)
    s.add_argument("--colour", required=True)
    s.add_argument("--length", type=int, required=True)

    s = sub.add_parser("matching", parents=[common], help="largest connected-matching")
    s.add_argument("--graph", required=True)
    s.add_argument("--colour", required=True)
    s.add_argument("--odd", action="store_true")
    s.add_argument("--min-vertices", type=int)

    s = sub.add_parser("decompose", parents=[common], help="bipartite/odd split of a colour class")
    s.add_argument("--graph", required=True)
    s.add_argument("--colour", required=True)
    s.add_argument("--m", type=int, required=True)

    s = sub.add_parser("structure", parents=[common], help="verify or search H, J, L structures")
    s.add_argument("--graph", required=True)
    s.add_argument("--class", dest="cls", choices=("H", "J", "L", "h", "j", "l"), required=True)
    s.add_argument("--params", help="e.g. x=7,c=0 or x1=3,x2=2,c1=0,c2=1/5,gamma1=red,gamma2=blue")
    s.add_argument("--witness", help="JSON witness file; verify instead of search")
    s.add_argument("--subgraph", action="store_true", help="ask for a spanning member, not equality")

    s = sub.add_parser("classify-d", parents=[common], help="connected-matching stability outcome")
    s.add_argument("--graph", required=True)
    for name in ("alpha1", "alpha2", "alpha3", "eta"):
        s.add_argument(f"--{name}", required=True)
    s.add_argument("--k", type=int, required=True)

    s = sub.add_parser("reduce", parents=[common], help="reduced multigraph of a partition")
    s.add_argument("--graph", required=True)
    s.add_argument("--K", type=int)
    s.add_argument("--partition")
    s.add_argument("--eps", required=True)
    s.add_argument("--xi", required=True)

    s = sub.add_parser("blowup", parents=[common], help="lift a reduced matching to a cycle")
    s.add_argument("--graph", required=True)
    s.add_argument("--partition")
    s.add_argument("--K", type=int)
    s.add_argument("--matching", required=True, help="JSON list of reduced edges [[i, j], ...]")
    s.add_argument("--length", type=int, required=True)
    s.add_argument("--colour", required=True)
    s.add_argument("--xi", default="1/2")
    s.add_argument("--reg-eps", default="1/10", help="regularity eps for the reduced graph")
    s.add_argument("--eps", default="1/1000", help="eps for the path-embedding thresholds")

    s = sub.add_parser("search-ramsey", parents=[common], help="exhaustive small Ramsey search")
    s.add_argument("--targets", required=True)
    s.add_argument("--range", required=True, help="N range, e.g. 5..8")
    s.add_argument("--workers", type=int, default=int(os.environ.get(WORKERS_ENV, "1") or 1))
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    if a.budget <= 0:
        parser.error("--budget must be positive")
    start = time.perf_counter()
    try:
        doc, status = COMMANDS[a.command](a)
    except (CliError, GraphError, HypothesisError, ValueError, OSError, KeyError) as exc:
        doc, status = {"error": type(exc).__name__, "message": str(exc)}, FAILED
    doc = _jsonable(doc)
    doc["meta"] = {"tool": "mixramsey", "version": __version__, "command": a.command,
                   "seed": a.seed, "budget": a.budget, "mode": a.mode}
    if a.timing:
        doc["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    text = dumps(doc)
    if a.out:
        Path(a.out).write_text(text)
    else:
        sys.stdout.write(text)
    if status == FAILED and "error" in doc:
        print(f"mixramsey {a.command}: {doc.get('message', doc['error'])}", file=sys.stderr)
    return status


def main() -> None:
    sys.exit(run())
