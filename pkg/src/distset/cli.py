"""Batch command line: analyze described distance sets, build spaces,
run oracles and reductions, grow saturation stages, probe metric
preserving functions.

Exit codes: 0 on success, 1 when a domain error from a library module is
rendered verbatim, 2 on usage, file, or JSON-shape problems. Reports are
emitted as canonical JSON (sorted keys, rationals as "p/q" strings) so that
identical requests produce byte-identical artifacts; analysis reports also
carry the tool version and a digest of the input bytes. Construction and
slope outputs are bare module formats with no report envelope, so they can
be fed back in as inputs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import __version__
from .classifier import build_report, render_report_text
from .constructions import (
    TreeData,
    glue,
    graph_from_json_dict,
    graph_space,
    graph_to_json_dict,
    max_product,
    space_to_graph,
    tree_space,
)
from .distance_sets import FiniteSet, desc_from_json
from .errors import DistSetError, InvalidDescription
from .metric import space_from_json_dict, space_to_json_dict
from .metric_preserving import (
    check_sufficient_condition,
    func_from_json,
    func_to_json,
    is_metric_preserving_finite,
    slope_construction,
)
from .oracles import find_embedding, find_isometry, graph_embed, graph_iso, verify_reduction
from .rationals import format_rational, parse_rational
from .urysohn import urysohn_stage, verify_one_point_homogeneity, verify_universality

_ORACLES = {
    "isometry": (find_isometry, space_from_json_dict),
    "embedding": (find_embedding, space_from_json_dict),
    "graph-iso": (graph_iso, graph_from_json_dict),
    "graph-embed": (graph_embed, graph_from_json_dict),
}


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {key: _jsonable(val) for key, val in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    return value


def _emit(payload, output: str | None) -> None:
    text = json.dumps(_jsonable(payload), sort_keys=True, indent=2) + "\n"
    _write(text, output)


def _write(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)


def _read_json(path: str):
    with open(path, "rb") as handle:
        return json.load(handle)


def _digest(paths) -> str:
    h = hashlib.sha256()
    for path in paths:
        with open(path, "rb") as handle:
            h.update(handle.read())
    return h.hexdigest()


def _cmd_analyze(args) -> int:
    desc = desc_from_json(_read_json(args.input))
    report = build_report(desc)
    report["tool_version"] = __version__
    report["input_digest"] = _digest([args.input])
    if args.format == "text":
        text = render_report_text(report)
        text += f"tool_version: {__version__}\n"
        text += f"input_digest: {report['input_digest']}\n"
        _write(text, args.output)
    else:
        _emit(report, args.output)
    return 0


def _cmd_construct(args) -> int:
    name = args.name
    files = args.inputs

    def need(count: int) -> None:
        if len(files) != count:
            raise ValueError(f"construct {name} takes {count} input file(s), got {len(files)}")

    def need_flag(value, flag: str):
        if value is None:
            raise ValueError(f"construct {name} requires {flag}")
        return parse_rational(value)

    if name == "glue":
        need(2)
        r = need_flag(args.r, "--r")
        X = space_from_json_dict(_read_json(files[0]))
        Y = space_from_json_dict(_read_json(files[1]))
        _emit(space_to_json_dict(glue(X, Y, r)), args.output)
    elif name == "max-product":
        need(2)
        X = space_from_json_dict(_read_json(files[0]))
        Z = space_from_json_dict(_read_json(files[1]))
        _emit(space_to_json_dict(max_product(X, Z)), args.output)
    elif name == "tree-space":
        need(1)
        raw = _read_json(files[0])
        data = TreeData(
            nodes=tuple(tuple(int(i) for i in node) for node in raw["nodes"]),
            r_seq=tuple(parse_rational(v) for v in raw["r_seq"]),
            rp_seq=tuple(parse_rational(v) for v in raw["rp_seq"]),
            x=parse_rational(raw["x"]),
        )
        _emit(space_to_json_dict(tree_space(data)), args.output)
    elif name == "graph-space":
        need(1)
        r = need_flag(args.r, "--r")
        rp = need_flag(args.rp, "--rp")
        G = graph_from_json_dict(_read_json(files[0]))
        _emit(space_to_json_dict(graph_space(G, r, rp)), args.output)
    elif name == "space-to-graph":
        need(1)
        r = need_flag(args.r, "--r")
        X = space_from_json_dict(_read_json(files[0]))
        _emit(graph_to_json_dict(space_to_graph(X, r)), args.output)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown construction {name}")
    return 0


def _cmd_oracle(args) -> int:
    search, load = _ORACLES[args.relation]
    A = load(_read_json(args.files[0]))
    B = load(_read_json(args.files[1]))
    witness = search(A, B, max_points=args.max_points)
    payload = {
        "relation": args.relation,
        "found": witness is not None,
        "witness": list(witness) if witness is not None else None,
        "tool_version": __version__,
        "input_digest": _digest(args.files),
    }
    _emit(payload, args.output)
    return 0


def _cmd_reduce(args) -> int:
    search_in, load_in = _ORACLES[args.relation_in]
    search_out, load_out = _ORACLES[args.relation_out]
    raw = _read_json(args.input)
    if not isinstance(raw, list):
        raise ValueError("reduction input must be a JSON list of pair objects")
    pairs = []
    for entry in raw:
        a, b = entry["input"]
        fa, fb = entry["transformed"]
        pairs.append(((load_in(a), load_in(b)), (load_out(fa), load_out(fb))))

    def wrap(search):
        return lambda u, v: search(u, v, max_points=args.max_points)

    payload = verify_reduction(pairs, wrap(search_in), wrap(search_out))
    payload["tool_version"] = __version__
    payload["input_digest"] = _digest([args.input])
    _emit(payload, args.output)
    return 0


def _cmd_urysohn(args) -> int:
    desc = desc_from_json(_read_json(args.input))
    values: set = set()
    for comp in desc.components:
        if not isinstance(comp, FiniteSet):
            raise InvalidDescription(
                "stage construction needs an explicit finite set of distances"
            )
        values.update(comp.values)
    result = urysohn_stage(values, args.budget, args.embed_bound, args.homog_bound)
    uni_ok, missing = verify_universality(result.space, values, args.embed_bound)
    hom_ok, stuck = verify_one_point_homogeneity(result.space, args.homog_bound)
    payload = {
        "space": space_to_json_dict(result.space),
        "log": [list(row) for row in result.log],
        "saturated": result.saturated,
        "universality": {
            "holds": uni_ok,
            "witness": space_to_json_dict(missing) if missing is not None else None,
        },
        "homogeneity": {
            "holds": hom_ok,
            "witness": None
            if stuck is None
            else {
                "domain": list(stuck[0]),
                "codomain": list(stuck[1]),
                "stuck_point": stuck[2],
            },
        },
        "tool_version": __version__,
        "input_digest": _digest([args.input]),
    }
    _emit(payload, args.output)
    return 0


def _cmd_mpf(args) -> int:
    raw = _read_json(args.input)
    if args.action == "slope":
        f = slope_construction(
            parse_rational(raw["a"]),
            parse_rational(raw["b"]),
            [parse_rational(v) for v in raw["tail"]],
            [parse_rational(v) for v in raw["pool"]],
        )
        _emit(func_to_json(f), args.output)
        return 0
    f = func_from_json(raw)
    if args.action == "check":
        ok, witness = is_metric_preserving_finite(f)
        payload = {
            "metric_preserving": ok,
            "witness": list(witness) if witness is not None else None,
        }
    else:
        payload = {"sufficient": check_sufficient_condition(f)}
    payload["tool_version"] = __version__
    payload["input_digest"] = _digest([args.input])
    _emit(payload, args.output)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="distset",
        description="analyze rational distance sets and the finite spaces over them",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classification report for a description file")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(run=_cmd_analyze)

    p = sub.add_parser("construct", help="build a space or graph from inputs")
    p.add_argument(
        "name",
        choices=("glue", "max-product", "tree-space", "graph-space", "space-to-graph"),
    )
    p.add_argument("inputs", nargs="*")
    p.add_argument("--r")
    p.add_argument("--rp")
    p.add_argument("--output")
    p.set_defaults(run=_cmd_construct)

    p = sub.add_parser("oracle", help="search for a witness of a relation")
    p.add_argument("relation", choices=tuple(_ORACLES))
    p.add_argument("files", nargs=2)
    p.add_argument("--max-points", type=int)
    p.add_argument("--output")
    p.set_defaults(run=_cmd_oracle)

    p = sub.add_parser("reduce", help="certify a reduction over explicit pairs")
    p.add_argument("relation_in", choices=tuple(_ORACLES))
    p.add_argument("relation_out", choices=tuple(_ORACLES))
    p.add_argument("--input", required=True)
    p.add_argument("--max-points", type=int)
    p.add_argument("--output")
    p.set_defaults(run=_cmd_reduce)

    p = sub.add_parser("urysohn", help="grow and verify a saturation stage")
    p.add_argument("--input", required=True)
    p.add_argument("--budget", type=int, default=40)
    p.add_argument("--embed-bound", type=int, default=3)
    p.add_argument("--homog-bound", type=int, default=2)
    p.add_argument("--output")
    p.set_defaults(run=_cmd_urysohn)

    p = sub.add_parser("mpf", help="metric preserving function tools")
    p.add_argument("action", choices=("check", "sufficient", "slope"))
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.set_defaults(run=_cmd_mpf)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except DistSetError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except (ValueError, KeyError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
