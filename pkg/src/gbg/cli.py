"""Command-line front end.

Graph files are UTF-8 text with one directive per line::

    e <u> <v>        an edge
    v <name>         a vertex (needed only for isolated ones)
    loops <v> <k>    k triangles hung at stem vertex v (grape commands only)
    # ...            comment

Exit status is 0 on success, 1 for bad input, 2 for requests outside
what the library supports.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .classify import braid_free, braid_hyperbolic, detect_elementary, free_abelian_witness, free_rank_report
from .config_space import build_UD, complex_from_configs, configuration_of
from .cube_complex import CubeComplex, homology_summary, is_npc, specialness_report
from .errors import GbgError, InvalidInputError, UnsupportedError
from .grapes import (
    Grapes,
    dynkin_witness,
    free_factor_rank,
    grape_icomplex,
    grape_status,
    icomplex_filtration,
    make_grapes,
    qi_raag_verdict,
    recognize_grapes,
    tripod_set,
)
from .graph_core import Graph, Subgraph, has_two_disjoint_cycles, is_planar, is_sufficiently_subdivided
from .intersection_complex import IntersectionComplex, build_intersection_complex, ic_analysis
from .product_analysis import build_UP2, enumerate_maximal_products, hierarchy_report, missing_squares


class UsageError(Exception):
    pass


@dataclass
class GraphFile:
    graph: Graph
    loops: Dict[str, int]
    digest: str
    path: str


def parse_graph_text(text: str, path: str = "<input>") -> GraphFile:
    edges: List[Tuple[str, str]] = []
    seen = set()
    vertices: List[str] = []
    loops: Dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        col = len(raw) - len(raw.lstrip()) + 1
        tokens = stripped.split()

        def fail(msg: str, at: int = col) -> None:
            raise InvalidInputError(f"{path}:{lineno}:{at}: {msg}")

        kind = tokens[0]
        if kind == "e":
            if len(tokens) != 3:
                fail("an edge line needs exactly two vertex names")
            u, v = tokens[1], tokens[2]
            if u == v:
                fail(f"loop at {u!r}; graphs must be simple", raw.index(v, raw.index(u) + len(u)) + 1)
            key = (u, v) if u < v else (v, u)
            if key in seen:
                fail(f"duplicate edge {u} {v}")
            seen.add(key)
            edges.append(key)
        elif kind == "v":
            if len(tokens) != 2:
                fail("a vertex line needs exactly one name")
            vertices.append(tokens[1])
        elif kind == "loops":
            if len(tokens) != 3:
                fail("a loops line needs a vertex and a count")
            try:
                k = int(tokens[2])
            except ValueError:
                fail(f"loop count {tokens[2]!r} is not an integer", raw.index(tokens[2], raw.index(tokens[1])) + 1)
            if k < 0:
                fail("loop counts must be nonnegative")
            if tokens[1] in loops:
                fail(f"loops given twice for {tokens[1]!r}")
            loops[tokens[1]] = k
        else:
            fail(f"unknown directive {kind!r}")
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    return GraphFile(Graph(edges, vertices), loops, digest, path)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidInputError(f"{path}: cannot read file ({exc.strerror})") from exc
    except UnicodeDecodeError as exc:
        raise InvalidInputError(f"{path}: not UTF-8 text") from exc


def load_graph(path: str) -> GraphFile:
    return parse_graph_text(_read(path), path)


def _connected(gf: GraphFile) -> Graph:
    g = gf.graph
    if not g.vertices:
        raise InvalidInputError(f"{gf.path}: the graph is empty")
    if not g.is_connected():
        raise InvalidInputError(f"{gf.path}: the graph must be connected")
    return g


def _grapes_of(gf: GraphFile) -> Grapes:
    if gf.loops:
        for v in gf.loops:
            if v not in gf.graph.vertices:
                raise InvalidInputError(f"{gf.path}: loops given for unknown vertex {v!r}")
        return make_grapes(_connected(gf), gf.loops)
    grapes = recognize_grapes(_connected(gf))
    if grapes is None:
        raise InvalidInputError(f"{gf.path}: the graph is not a bunch of grapes")
    return grapes


# ---------------------------------------------------------------------------
# JSON helpers


def _subgraph_json(s: Subgraph) -> Dict[str, Any]:
    return {"edges": [list(e) for e in sorted(s.edge_set)], "vertices": sorted(s.vertex_set)}


def _pair_json(pair) -> List[List[List[str]]]:
    return [[list(e) for e in sorted(pair.first.edge_set)], [list(e) for e in sorted(pair.second.edge_set)]]


def _cells_json(x: CubeComplex) -> List[List[List[List[str]]]]:
    return [[[list(cell) for cell in key] for key in x.cubes(d)] for d in range(x.dim + 1)]


def _icomplex_json(ic: IntersectionComplex) -> Dict[str, Any]:
    return {
        "vertices": [_pair_json(v) for v in ic.vertices],
        "simplices": [{"vertices": list(s), "label": _pair_json(ic.labels[s])} for s in ic.simplices()],
    }


# ---------------------------------------------------------------------------
# commands; each returns (result payload, text lines, warnings)


def _subdivision_warning(g: Graph, n: int) -> List[str]:
    if not is_sufficiently_subdivided(g, n):
        return [f"graph is not sufficiently subdivided for n={n}; the complex need not model the braid group"]
    return []


def cmd_info(args, gf: GraphFile):
    g = gf.graph
    grapes = recognize_grapes(g) if g.vertices and g.is_connected() else None
    result = {
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "components": len(g.components()),
        "essential_vertices": g.essential_vertices(),
        "planar": is_planar(g),
        "two_disjoint_cycles": has_two_disjoint_cycles(g),
        "grapes": None if grapes is None else grape_status(grapes),
    }
    lines = [f"{k}: {result[k]}" for k in sorted(result)]
    return result, lines, []


def cmd_ud(args, gf: GraphFile):
    g = _connected(gf)
    x = build_UD(g, args.n)
    result = {"n": args.n, "counts": x.counts(), "cells": _cells_json(x),
              "sufficiently_subdivided": x.metadata["sufficiently_subdivided"]}
    lines = [f"UD_{args.n}: cells per dimension {tuple(x.counts())}"]
    return result, lines, _subdivision_warning(g, args.n)


def _complex_from_json(text: str, path: str) -> CubeComplex:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if isinstance(data, dict) and "result" in data:
        data = data["result"]
    if not isinstance(data, dict) or "cells" not in data:
        raise InvalidInputError(f"{path}: JSON input has no 'cells' entry")
    configs = []
    try:
        for per_dim in data["cells"]:
            for key in per_dim:
                configs.append(configuration_of(key))
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"{path}: malformed cell list ({exc})") from exc
    return complex_from_configs(configs)


def cmd_homology(args, gf: Optional[GraphFile], text: str = ""):
    warnings: List[str] = []
    if gf is None:
        x = _complex_from_json(text, args.file)
    else:
        g = _connected(gf)
        x = build_UD(g, args.n)
        warnings = _subdivision_warning(g, args.n)
    chi, betti = homology_summary(x)
    result = {"counts": x.counts(), "chi": chi, "betti": betti}
    return result, [f"chi = {chi}", f"betti = {tuple(betti)}"], warnings


def cmd_special(args, gf: GraphFile):
    g = _connected(gf)
    x = build_UD(g, args.n)
    rep = specialness_report(x)
    result = {
        "npc": is_npc(x),
        "special": rep.special,
        "self_intersecting": len(rep.self_intersecting),
        "self_osculating": len(rep.self_osculating),
        "one_sided": len(rep.one_sided),
        "inter_osculating": len(rep.inter_osculating),
    }
    lines = [f"{k}: {result[k]}" for k in sorted(result)]
    return result, lines, _subdivision_warning(g, args.n)


def cmd_up2(args, gf: GraphFile):
    g = _connected(gf)
    products = enumerate_maximal_products(g)
    up2 = build_UP2(g)
    missing = missing_squares(g)
    result = {
        "counts": up2.counts(),
        "ud2_counts": up2.metadata["ambient_counts"],
        "maximal_products": [_pair_json(p) for p in products],
        "missing_squares": [[list(c) for c in sq] for sq in missing],
    }
    lines = [
        f"maximal products: {len(products)}",
        f"UP_2 cells: {tuple(up2.counts())}  UD_2 cells: {tuple(up2.metadata['ambient_counts'])}",
        f"squares of UD_2 outside UP_2: {len(missing)}",
    ]
    return result, lines, []


def cmd_hierarchy(args, gf: GraphFile):
    rep = hierarchy_report(_connected(gf))
    result = {
        "in_G0": rep.in_G0, "cond_A": rep.cond_A, "cond_B": rep.cond_B, "cond_C": rep.cond_C,
        "in_G3": rep.in_G3, "in_G45": rep.in_G45, "sip": rep.sip,
        "in_G1": {"value": rep.in_G1.value, "reason": rep.in_G1.reason},
        "in_G2": {"value": rep.in_G2.value, "reason": rep.in_G2.reason},
    }
    lines = [f"{k}: {result[k]}" for k in sorted(result) if not isinstance(result[k], dict)]
    lines += [f"{k}: {result[k]['value']} ({result[k]['reason']})" for k in ("in_G1", "in_G2")]
    return result, lines, []


def cmd_icomplex(args, gf: GraphFile):
    if args.filtration is not None:
        ic = icomplex_filtration(_grapes_of(gf), args.filtration)
    elif gf.loops:
        ic = grape_icomplex(_grapes_of(gf))
    else:
        ic = build_intersection_complex(_connected(gf))
    an = ic_analysis(ic)
    counts = ic.counts() + [0] * max(0, 3 - len(ic.counts()))
    result = {"icomplex": _icomplex_json(ic), "counts": counts,
              "connected": an.connected, "skeleton_betti1": an.skeleton_betti1, "flag": an.flag}
    lines = [
        f"vertices: {counts[0]}  edges: {counts[1]}  triangles: {counts[2]}",
        f"connected: {an.connected}  b1(2-skeleton): {an.skeleton_betti1}  flag: {an.flag}",
    ]
    return result, lines, []


def cmd_grapes(args, gf: GraphFile):
    grapes = _grapes_of(gf)
    status = grape_status(grapes)
    result: Dict[str, Any] = {
        "status": status,
        "stem_edges": [list(e) for e in grapes.stem.sorted_edges()],
        "loops": {v: grapes.loops[v] for v in sorted(grapes.loops)},
        "diameter": grapes.diameter,
        "dynkin": dynkin_witness(grapes),
        "tripods": [list(t) for t in tripod_set(grapes)],
    }
    if status == "normal" and grapes.minimal:
        result["free_factor_rank"] = free_factor_rank(grapes)[0]
    lines = [f"status: {status}", f"stem: {len(grapes.stem.vertices)} vertices, diameter {grapes.diameter}",
             f"loops: {sum(grapes.loops.values())} triangles on "
             f"{sum(1 for k in grapes.loops.values() if k)} stem vertices"]
    if "free_factor_rank" in result:
        lines.append(f"free factor rank: {result['free_factor_rank']}")
    return result, lines, []


def cmd_qi_raag(args, gf: GraphFile):
    verdict = qi_raag_verdict(_grapes_of(gf))
    payload: Dict[str, Any] = {"value": verdict.value, "rule": verdict.rule}
    lines = [f"verdict: {verdict.value} ({verdict.rule})"]
    if verdict.raag is not None:
        r = verdict.raag
        payload["raag"] = {"vertices": list(r.vertices), "edges": [list(e) for e in r.edges],
                           "isolated_rank": r.isolated_rank}
        lines.append(f"RAAG graph: {r.describe()}")
    if verdict.witness is not None:
        payload["witness"] = list(verdict.witness)
        lines.append(f"witness: {verdict.witness}")
    return {"verdict": payload}, lines, []


def cmd_classify(args, gf: GraphFile):
    g = _connected(gf)
    n = args.n
    rank = free_rank_report(g, n)
    elem = detect_elementary(g)
    wit = free_abelian_witness(g, n)
    result = {
        "n": n,
        "free": braid_free(g, n),
        "hyperbolic": braid_hyperbolic(g, n),
        "free_rank": None if rank is None else rank.rank,
        "free_rank_method": None if rank is None else rank.method,
        "elementary": None if elem is None else [elem.k, elem.l],
        "free_abelian": {"p": wit.p, "q": wit.q, "cycles": [list(c) for c in wit.cycles],
                         "vertices": list(wit.vertices)},
    }
    lines = [f"free: {result['free']}", f"hyperbolic: {result['hyperbolic']}",
             f"free rank: {result['free_rank']}", f"elementary: {result['elementary']}",
             f"free abelian rank witness: p={wit.p} q={wit.q}"]
    return result, lines, []


COMMANDS = {
    "info": cmd_info,
    "ud": cmd_ud,
    "homology": cmd_homology,
    "special": cmd_special,
    "up2": cmd_up2,
    "hierarchy": cmd_hierarchy,
    "icomplex": cmd_icomplex,
    "grapes": cmd_grapes,
    "qi-raag": cmd_qi_raag,
    "classify": cmd_classify,
}

NEEDS_N = {"ud", "homology", "special", "classify"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", default=None, help="accepted for compatibility; every algorithm is deterministic")
    parser = _Parser(prog="gbg", description="Configuration spaces and braid groups of graphs.")
    parser.add_argument("--version", action="version", version=f"gbg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name in NEEDS_N:
            p.add_argument("--n", type=_positive, default=2 if name != "ud" else None, required=name == "ud")
        if name == "icomplex":
            p.add_argument("--filtration", type=int, default=None, metavar="K")
        p.add_argument("file")
    return parser


def run(argv: Sequence[str]) -> Tuple[int, str]:
    """Execute one command; returns the exit status and the text to print."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except UsageError as exc:
        return 1, f"error: {exc}\n"
    try:
        text = _read(args.file)
        if args.command == "homology" and text.lstrip().startswith("{"):
            gf = None
            digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
            result, lines, warnings = cmd_homology(args, None, text)
        else:
            gf = parse_graph_text(text, args.file)
            digest = gf.digest
            result, lines, warnings = COMMANDS[args.command](args, gf)
    except InvalidInputError as exc:
        return 1, f"error: {exc}\n"
    except UnsupportedError as exc:
        return 2, f"unsupported: {exc}\n"
    except GbgError as exc:
        return 1, f"error: {exc}\n"
    if args.json:
        report = {"command": args.command, "input_sha256": digest, "result": result, "warnings": warnings}
        return 0, json.dumps(report, sort_keys=True, indent=2) + "\n"
    out = [f"# {args.command} {args.file}"] + lines + [f"warning: {w}" for w in warnings]
    return 0, "\n".join(out) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code == 0 else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
