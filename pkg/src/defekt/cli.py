"""Command-line entry point.

Seven subcommands wire the library together: ``analyze`` (density report),
``detect`` (structure searches), ``colour`` (the four colouring modes),
``verify`` (re-check colourings and certificates), ``bounds`` (closed-form
formulas), ``gadget`` (named constructions), and ``experiment`` (seeded
check suites).  Exit codes: 0 success, 1 structural failure with a witness
in the report, 2 usage error.  Output is deterministic for a fixed argv:
keys are sorted and nothing is stamped with times or paths.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import caps as caps_mod
from . import gadgets
from .bounds import FORMULAS, earth_moon_table, evaluate
from .colouring import (
    TreeEmbedding,
    build_peel_trace,
    colour_kell,
    colour_tree_free,
    defective_list_colour,
    edge_partition_forest_bounded,
    validate_tree_embedding,
    verify_defective,
)
from .density import build_report
from .errors import (
    CapExceededError,
    ParseError,
    StructuralError,
    ValidationError,
)
from .experiments import EXPERIMENTS, run_experiment
from .graphs import Graph, sniff, to_dimacs, to_edge_list, to_json
from .structure import (
    KstStarEmbedding,
    LightEdge,
    LowDegreeVertex,
    MinorModel,
    find_kst_star,
    find_light_edge,
    minor_test_bruteforce,
    tree_depth,
    validate_certificate,
    validate_kst_star,
    validate_minor_model,
    vertex_cover_number,
)

USAGE_ERROR = 2
STRUCTURAL_ERROR = 1


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> Graph:
    return sniff(_read_text(path))


def _graph_payload(g: Graph) -> dict:
    return json.loads(to_json(g))


def _witness_payload(witness) -> object:
    if witness is None:
        return None
    if isinstance(witness, Graph):
        return _graph_payload(witness)
    if isinstance(witness, tuple) and witness and isinstance(witness[0], Graph):
        sub, remap = witness
        return {"graph": _graph_payload(sub), "vertices": list(remap)}
    return repr(witness)


def _colour_map(colours) -> dict:
    return {str(v): c for v, c in enumerate(colours)}


def _parse_colouring(text: str, n: int) -> tuple:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"colouring is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ValidationError("colouring must be a JSON object {vertex: colour}")
    out = [None] * n
    for key, value in data.items():
        try:
            v = int(key)
        except ValueError:
            raise ValidationError(f"vertex key {key!r} is not an integer") from None
        if not 0 <= v < n:
            raise ValidationError(f"vertex {v} is out of range for n={n}")
        out[v] = value
    missing = [v for v, c in enumerate(out) if c is None]
    if missing:
        raise ValidationError(f"colouring misses vertices {missing[:8]}")
    return tuple(out)


def _apply_caps(pairs: list[str] | None) -> None:
    """Overlay --cap pairs onto DEFEKT_CAPS for this process."""
    if not pairs:
        return
    raw = os.environ.get(caps_mod.ENV_VAR)
    merged = json.loads(raw) if raw else {}
    if not isinstance(merged, dict):
        raise ValidationError(f"{caps_mod.ENV_VAR} must be a JSON object")
    for pair in pairs:
        name, sep, value = pair.partition("=")
        if not sep:
            raise ValidationError(f"--cap needs NAME=VALUE, got {pair!r}")
        try:
            merged[name] = int(value)
        except ValueError:
            raise ValidationError(f"cap {name!r} needs an integer, got {value!r}") from None
    os.environ[caps_mod.ENV_VAR] = json.dumps(merged, sort_keys=True)
    caps_mod.current_caps()  # validates names and ranges now, not mid-run


# ---------------------------------------------------------------------------
# emission

def _flatten(value) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def _emit_rows(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        for row in rows:
            out.write(json.dumps(row, sort_keys=True) + "\n")
    elif fmt == "csv":
        fields = sorted({k for row in rows for k in row})
        writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _flatten(v) for k, v in row.items()})
    else:
        for row in rows:
            tag = "PASS" if row.get("pass") else "FAIL"
            rest = " ".join(
                f"{k}={_flatten(v)}" for k, v in sorted(row.items())
                if k not in ("pass", "check_id")
            )
            out.write(f"{tag} {row.get('check_id', '?')} {rest}\n")


def _emit_payload(payload, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    elif fmt == "csv":
        if isinstance(payload, list):
            _emit_rows(payload, "csv", out)
            return
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key in sorted(payload):
            writer.writerow([key, _flatten(payload[key])])
    else:
        if isinstance(payload, list):
            for item in payload:
                out.write(_flatten(item) + "\n")
            return
        for key in sorted(payload):
            out.write(f"{key}: {_flatten(payload[key])}\n")


# ---------------------------------------------------------------------------
# subcommand handlers; each returns (exit_code, payload or None)

def _cmd_analyze(args) -> tuple[int, object]:
    g = _load_graph(args.graph)
    return 0, build_report(g).to_payload()


def _cmd_detect(args) -> tuple[int, object]:
    g = _load_graph(args.graph)
    requested = False
    payload: dict = {}
    if args.kst_star is not None:
        requested = True
        s, t = args.kst_star
        emb = find_kst_star(g, s, t)
        payload["kst-star"] = emb.to_payload() if emb else None
    if args.light_edge is not None:
        requested = True
        edge = find_light_edge(g, args.light_edge)
        payload["light-edge"] = list(edge) if edge else None
    if args.minor is not None:
        requested = True
        pattern = _load_graph(args.minor)
        model = minor_test_bruteforce(g, pattern)
        payload["minor"] = model.to_payload() if model else None
    if args.tau:
        requested = True
        value, cover = vertex_cover_number(g)
        payload["tau"] = {"value": value, "cover": list(cover)}
    if args.treedepth:
        requested = True
        payload["treedepth"] = tree_depth(g)
    if not requested:
        raise ValidationError("detect needs at least one search flag")
    return 0, payload


def _trace_payload(g: Graph, vertex_limit: int, edge_limit: int) -> list[dict]:
    trace = build_peel_trace(g, vertex_limit, edge_limit)
    steps = []
    for step in trace.steps:
        if step.kind == "remove-vertex":
            steps.append(
                {"kind": step.kind, "vertex": step.vertex,
                 "neighbours": list(step.neighbours)}
            )
        else:
            steps.append({"kind": step.kind, "edge": list(step.edge)})
    return steps


def _cmd_colour(args) -> tuple[int, object]:
    g = _load_graph(args.graph)
    if args.mode == "list":
        if args.k is None or args.ell is None:
            raise ValidationError("list mode needs --k and --ell")
        lists = [tuple(range(1, args.k + 2))] * g.n
        colours = defective_list_colour(g, lists, args.k, args.ell)
        payload = {
            "mode": "list",
            "colours": _colour_map(colours),
            "defect_bound": args.ell - args.k,
        }
        if args.trace:
            payload["trace"] = _trace_payload(g, args.k, args.ell)
        return 0, payload
    if args.mode == "kell":
        if args.k is None or args.ell is None:
            raise ValidationError("kell mode needs --k and --ell")
        res = colour_kell(g, args.ell, args.k)
        payload = {"mode": "kell", "kind": res.kind, "diagnostics": res.diagnostics}
        if res.kind == "colouring":
            payload["colours"] = _colour_map(res.colours)
            payload["defect_bound"] = res.defect_bound
        else:
            payload["minor_model"] = res.minor_model.to_payload()
        return 0, payload
    if args.mode == "treefree":
        if args.tree is None:
            raise ValidationError("treefree mode needs --tree FILE")
        t = _load_graph(args.tree)
        outcome = colour_tree_free(g, t)
        payload = {
            "mode": "treefree",
            "num_colours": outcome.num_colours,
            "defect_bound": outcome.defect_bound,
        }
        if outcome.colours is not None:
            payload["colours"] = _colour_map(outcome.colours)
        else:
            payload["embedding"] = {
                "kind": outcome.embedding.kind,
                "mapping": list(outcome.embedding.mapping),
            }
        return 0, payload
    if args.limit is None:
        raise ValidationError("partition mode needs --limit")
    forest, bounded = edge_partition_forest_bounded(g, args.limit)
    payload = {
        "mode": "partition",
        "forest": [list(e) for e in forest],
        "bounded": [list(e) for e in bounded],
        "degree_bound": args.limit - 1,
    }
    if args.trace:
        payload["trace"] = _trace_payload(g, 1, args.limit)
    return 0, payload


def _verify_certificate(args, g: Graph) -> tuple[int, object]:
    data = json.loads(_read_text(args.certificate))
    kind = data.get("kind")
    if kind == "low-degree-vertex":
        cert = LowDegreeVertex(vertex=data["vertex"], degree=data["degree"])
    elif kind == "light-edge":
        cert = LightEdge(edge=tuple(data["edge"]), degrees=tuple(data["degrees"]))
    elif kind == "kst-star":
        cert = KstStarEmbedding(
            centres=tuple(data["centres"]),
            outer=tuple(data["outer"]),
            pair_vertices=tuple(
                (tuple(p), w) for p, w in data["pair_vertices"]
            ),
        )
    elif kind == "minor-model":
        if args.pattern is None:
            raise ValidationError("minor-model certificates need --pattern FILE")
        model = MinorModel(
            branch_sets=tuple(tuple(b) for b in data["branch_sets"])
        )
        problems = validate_minor_model(g, _load_graph(args.pattern), model)
        return (0, {"valid": True, "kind": kind}) if not problems else (
            STRUCTURAL_ERROR, {"valid": False, "kind": kind, "problems": problems}
        )
    elif kind == "tree-embedding":
        if args.tree is None:
            raise ValidationError("tree-embedding certificates need --tree FILE")
        emb = TreeEmbedding(mapping=tuple(data["mapping"]))
        problems = validate_tree_embedding(g, _load_graph(args.tree), emb)
        return (0, {"valid": True, "kind": kind}) if not problems else (
            STRUCTURAL_ERROR, {"valid": False, "kind": kind, "problems": problems}
        )
    else:
        raise ValidationError(f"unknown certificate kind {kind!r}")
    if isinstance(cert, KstStarEmbedding):
        if args.s is None or args.t is None:
            raise ValidationError("kst-star certificates need --s and --t")
        problems = validate_kst_star(g, cert, args.s, args.t)
    else:
        if args.s is None or args.ell is None:
            raise ValidationError(f"{kind} certificates need --s and --ell")
        problems = validate_certificate(g, cert, args.s, args.t or 1, args.ell)
    if problems:
        return STRUCTURAL_ERROR, {"valid": False, "kind": kind, "problems": problems}
    return 0, {"valid": True, "kind": kind}


def _cmd_verify(args) -> tuple[int, object]:
    g = _load_graph(args.graph)
    if args.colouring is not None:
        if args.defect is None:
            raise ValidationError("verify --colouring needs --defect")
        colours = _parse_colouring(_read_text(args.colouring), g.n)
        ok, violations = verify_defective(g, colours, args.defect)
        if ok:
            return 0, {"valid": True, "defect": args.defect}
        return STRUCTURAL_ERROR, {
            "valid": False,
            "defect": args.defect,
            "violations": [
                {"vertex": v, "same_coloured": c} for v, c in violations
            ],
        }
    if args.certificate is not None:
        return _verify_certificate(args, g)
    raise ValidationError("verify needs --colouring or --certificate")


def _cmd_bounds(args) -> tuple[int, object]:
    name = args.table or args.formula
    if name is None:
        raise ValidationError(
            f"bounds needs a formula id or --table; formulas: {sorted(FORMULAS)}"
        )
    if name == "earth-moon":
        return 0, earth_moon_table()
    if args.table is not None:
        raise ValidationError(f"unknown table {args.table!r}; only earth-moon")
    try:
        params = json.loads(args.params) if args.params else {}
    except json.JSONDecodeError as exc:
        raise ValidationError(f"--params is not valid JSON: {exc}") from None
    if not isinstance(params, dict):
        raise ValidationError("--params must be a JSON object")
    return 0, evaluate(name, **params).to_payload()


GADGETS: dict[str, tuple] = {
    "gsn": (gadgets.gen_gsn, 2),
    "kst-star": (gadgets.gen_kst_star, 2),
    "kell-pattern": (gadgets.gen_kell_H, 2),
    "path": (gadgets.path, 1),
    "cycle": (gadgets.cycle, 1),
    "complete": (gadgets.complete, 1),
    "complete-bipartite": (gadgets.complete_bipartite, 2),
    "star": (gadgets.star, 1),
    "wheel": (gadgets.wheel, 1),
    "binary-tree": (gadgets.complete_binary_tree, 1),
    "petersen": (gadgets.petersen, 0),
    "dodecahedron": (gadgets.dodecahedron, 0),
}


def _cmd_gadget(args) -> tuple[int, object]:
    if args.name not in GADGETS:
        raise ValidationError(
            f"unknown gadget {args.name!r}; choose from {sorted(GADGETS)}"
        )
    fn, arity = GADGETS[args.name]
    if len(args.params) != arity:
        raise ValidationError(f"gadget {args.name} takes {arity} integer(s)")
    g = fn(*args.params)
    if args.format == "dimacs":
        return 0, to_dimacs(g)
    if args.format == "json":
        return 0, to_json(g) + "\n"
    return 0, to_edge_list(g)


def _cmd_experiment(args) -> tuple[int, object]:
    try:
        rows = run_experiment(
            args.name, seed=args.seed, count=args.count, size=args.size
        )
    except KeyError as exc:
        raise ValidationError(str(exc.args[0])) from None
    except TypeError:
        raise ValidationError(
            f"experiment {args.name!r} does not take the given overrides"
        ) from None
    return 0, rows


# ---------------------------------------------------------------------------
# parser

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "csv", "text"),
                        default="json", help="report format")
    parser.add_argument("--out", metavar="FILE", default=None,
                        help="write the report here instead of stdout")
    parser.add_argument("--cap", metavar="NAME=VALUE", action="append",
                        default=None, help="override one oracle size cap")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for generated corpora")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="defekt",
        description="Defective colouring toolkit: bounded-defect colourings, "
        "structure certificates, density oracles, and gadget generators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="density report for a graph")
    p.add_argument("graph", help="graph file, or - for stdin")
    _add_common(p)
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("detect", help="structure searches with certificates")
    p.add_argument("graph", help="graph file, or - for stdin")
    p.add_argument("--kst-star", nargs=2, type=int, metavar=("S", "T"),
                   default=None, help="biclique plus pair-vertices embedding")
    p.add_argument("--light-edge", type=int, metavar="L", default=None,
                   help="edge with both endpoint degrees at most L")
    p.add_argument("--minor", metavar="HFILE", default=None,
                   help="exact minor model of the pattern in HFILE")
    p.add_argument("--tau", action="store_true", help="vertex cover number")
    p.add_argument("--treedepth", action="store_true", help="tree-depth")
    _add_common(p)
    p.set_defaults(handler=_cmd_detect)

    p = sub.add_parser("colour", help="run one of the colouring procedures")
    p.add_argument("graph", help="graph file, or - for stdin")
    p.add_argument("--mode", choices=("list", "kell", "treefree", "partition"),
                   required=True)
    p.add_argument("--k", type=int, default=None,
                   help="vertex peel threshold (list, kell)")
    p.add_argument("--ell", type=int, default=None,
                   help="light edge threshold (list, kell)")
    p.add_argument("--tree", metavar="FILE", default=None,
                   help="excluded tree (treefree)")
    p.add_argument("--limit", type=int, default=None,
                   help="light edge threshold (partition)")
    p.add_argument("--trace", action="store_true",
                   help="include the peel trace in the report")
    _add_common(p)
    p.set_defaults(handler=_cmd_colour)

    p = sub.add_parser("verify", help="re-check a colouring or certificate")
    p.add_argument("graph", help="graph file, or - for stdin")
    p.add_argument("--colouring", metavar="FILE", default=None,
                   help="JSON {vertex: colour} to check")
    p.add_argument("--defect", type=int, default=None,
                   help="allowed same-colour neighbours per vertex")
    p.add_argument("--certificate", metavar="FILE", default=None,
                   help="JSON certificate payload to re-validate")
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--pattern", metavar="FILE", default=None,
                   help="pattern graph for minor-model certificates")
    p.add_argument("--tree", metavar="FILE", default=None,
                   help="tree for tree-embedding certificates")
    _add_common(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("bounds", help="evaluate a closed-form bound")
    p.add_argument("formula", nargs="?", default=None,
                   help=f"one of {sorted(FORMULAS)} or earth-moon")
    p.add_argument("--params", metavar="JSON", default=None,
                   help="formula parameters as a JSON object")
    p.add_argument("--table", metavar="NAME", default=None,
                   help="emit a recorded table (earth-moon)")
    _add_common(p)
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("gadget", help="emit a named construction")
    p.add_argument("name", help=f"one of {sorted(GADGETS)}")
    p.add_argument("params", nargs="*", type=int, help="integer parameters")
    p.add_argument("--format", choices=("edge-list", "dimacs", "json"),
                   default="edge-list", help="graph output format")
    p.add_argument("--out", metavar="FILE", default=None)
    p.add_argument("--cap", metavar="NAME=VALUE", action="append", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_gadget)

    p = sub.add_parser("experiment", help="run a seeded check suite")
    p.add_argument("name", help=f"one of {sorted(EXPERIMENTS)}")
    p.add_argument("--count", type=int, default=None,
                   help="override the instance count")
    p.add_argument("--size", type=int, default=None,
                   help="override the instance size")
    _add_common(p)
    p.set_defaults(handler=_cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    buffer = io.StringIO() if args.out else None
    target = buffer if buffer is not None else out
    # --cap works by overlaying the env var; put it back afterwards so that
    # embedding callers (and the test suite) see no lasting change
    saved_caps = os.environ.get(caps_mod.ENV_VAR)
    try:
        _apply_caps(args.cap)
        code, payload = args.handler(args)
    except (ParseError, ValidationError, CapExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except StructuralError as exc:
        report = {
            "error": type(exc).__name__,
            "message": str(exc),
            "witness": _witness_payload(exc.witness),
        }
        target.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
        if buffer is not None:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(buffer.getvalue())
        return STRUCTURAL_ERROR
    finally:
        if saved_caps is None:
            os.environ.pop(caps_mod.ENV_VAR, None)
        else:
            os.environ[caps_mod.ENV_VAR] = saved_caps
    if payload is not None:
        if isinstance(payload, str):
            target.write(payload)
        elif args.command == "experiment":
            _emit_rows(payload, args.format, target)
        else:
            _emit_payload(payload, getattr(args, "format", "json"), target)
    if buffer is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(buffer.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
