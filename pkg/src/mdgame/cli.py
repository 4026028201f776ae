"""Command-line interface.

Usage:
    mdgame value "path 5" --variant mf
    mdgame value graph.edges --variant classic --format json
    mdgame aw "path 9"
    mdgame verify --suite winners --variant fl --family path --to 20

Graph inputs are either a family expression ("path 5", "wheel 6",
"biclique 2 3", sums with "+": "path 4 + cycle 5") or a file in edge-list
format: a header line "n m", then m lines "u v" with 0-based endpoints;
blank lines and lines starting with "#" are ignored.  "-" reads the
edge list from stdin.

Exit codes: 0 success, 1 verification failure, 2 input parse error,
3 resource limit (graph too large, memo cap, unstable remote star),
4 precondition violation (e.g. atomic weight of a non-all-small game).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .cgt import GameId, MemoCapExceeded, Outcome
from .atomic import NotAllSmall, NotInteger, RemoteStarUnstable
from .families import BadParams, FamilyKind, FamilySpec, build
from .graphs import DEFAULT_COMPONENT_LIMIT, Graph, TooLarge
from .rules import EngineContext, Variant, make_context
from .verify import (
    SUITE_NAMES,
    VerifyConfig,
    format_report,
    run_all,
)


class ParseError(ValueError):
    """Unusable graph input text."""


# ----------------------------------------------------------------------
# input parsing
# ----------------------------------------------------------------------

_FAMILY_ARITY = {kind: (2 if kind is FamilyKind.BICLIQUE else 1) for kind in FamilyKind}


def parse_family_term(term: str) -> FamilySpec:
    words = term.split()
    if not words:
        raise ParseError("empty family term")
    try:
        kind = FamilyKind(words[0].lower())
    except ValueError:
        raise ParseError(f"unknown family {words[0]!r}") from None
    arity = _FAMILY_ARITY[kind]
    if len(words) != 1 + arity:
        raise ParseError(
            f"{kind.value} takes {arity} parameter{'s' if arity > 1 else ''}, "
            f"got {len(words) - 1}"
        )
    try:
        params = [int(w) for w in words[1:]]
    except ValueError:
        raise ParseError(f"non-integer parameter in {term!r}") from None
    try:
        if arity == 1:
            return FamilySpec(kind, params[0])
        return FamilySpec(kind, params[0], params[1])
    except BadParams as exc:
        raise ParseError(str(exc)) from None


def parse_family_expression(text: str) -> Graph:
    graph: Optional[Graph] = None
    for term in text.split("+"):
        g = build(parse_family_term(term))
        graph = g if graph is None else graph.disjoint_union(g)
    assert graph is not None
    return graph


def parse_edge_list(text: str) -> Graph:
    lines = [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise ParseError("empty edge list")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError('edge list must start with a "n m" header line')
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("non-integer edge list header") from None
    if n < 0 or m < 0:
        raise ParseError("negative count in edge list header")
    if len(lines) - 1 != m:
        raise ParseError(f"header says {m} edges, found {len(lines) - 1}")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"bad edge line {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer endpoint in {line!r}") from None
        edges.append((u, v))
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_graph_input(text: str) -> Graph:
    """Family expression, path to an edge-list file, or '-' for stdin."""
    if text == "-":
        return parse_edge_list(sys.stdin.read())
    if os.path.isfile(text):
        with open(text, "r", encoding="utf-8") as fh:
            return parse_edge_list(fh.read())
    return parse_family_expression(text)


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

def _add_engine_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-component", type=int, default=DEFAULT_COMPONENT_LIMIT,
                   help="largest connected component the engine will canonicalize")
    p.add_argument("--memo-cap", type=int, default=None,
                   help="fail once any memo table reaches this many entries")
    p.add_argument("--remote-star", type=int, default=2,
                   help="minimum nim-heap order used as the remote-star surrogate")
    p.add_argument("--jobs", type=int, default=1,
                   help="thread pool width for verify (CPython threads; no speedup)")
    p.add_argument("--cache", default=None,
                   help="value-cache file, loaded before and saved after the run")


def _make_context(args: argparse.Namespace) -> EngineContext:
    ctx = make_context(
        max_component=args.max_component,
        memo_cap=args.memo_cap,
        star_floor=args.remote_star,
    )
    if args.cache:
        ctx.engine.load_cache(args.cache)
    return ctx


def _finish(args: argparse.Namespace, ctx: EngineContext) -> None:
    if args.cache:
        ctx.engine.save_cache(args.cache)


def _value_payload(ctx: EngineContext, graph: Graph, variant: Variant,
                   value: GameId, outcome: Outcome) -> dict:
    store = ctx.store
    ids: list[GameId] = []
    seen: dict[GameId, int] = {}

    def collect(g: GameId) -> None:
        if g in seen:
            return
        seen[g] = len(ids)
        ids.append(g)
        for o in store.left_options(g) + store.right_options(g):
            collect(o)

    collect(value)
    nodes = [
        {
            "left": [seen[o] for o in store.left_options(g)],
            "right": [seen[o] for o in store.right_options(g)],
        }
        for g in ids
    ]
    name = store.name_value(value)
    return {
        "vertices": graph.n,
        "edges": graph.edge_count,
        "variant": variant.value,
        "value": name.text,
        "kind": name.kind,
        "canonical": store.canonical_text(value),
        "outcome": outcome.value,
        "dag": {"nodes": nodes, "root": seen[value]},
    }


def cmd_value(args: argparse.Namespace) -> int:
    graph = parse_graph_input(args.graph)
    variant = Variant(args.variant)
    ctx = _make_context(args)
    value = ctx.engine.game_of(graph, variant)
    outcome = ctx.store.outcome(value)
    _finish(args, ctx)
    if args.format == "json":
        print(json.dumps(_value_payload(ctx, graph, variant, value, outcome), indent=2))
    else:
        name = ctx.store.name_value(value)
        print(f"graph: {args.graph} ({graph.n} vertices, {graph.edge_count} edges)")
        print(f"variant: {variant.value}")
        print(f"value: {name.text}")
        if name.kind != "other":
            print(f"canonical: {ctx.store.canonical_text(value)}")
        print(f"outcome: {outcome.value}")
    return 0


def cmd_aw(args: argparse.Namespace) -> int:
    graph = parse_graph_input(args.graph)
    variant = Variant(args.variant)
    ctx = _make_context(args)
    value = ctx.engine.game_of(graph, variant)
    aw = ctx.atomic.atomic_weight(value)
    _finish(args, ctx)
    aw_text = str(aw.integer) if aw.is_integer else ctx.store.render(aw.value)
    if args.format == "json":
        print(json.dumps({
            "variant": variant.value,
            "value": ctx.store.render(value),
            "atomic_weight": aw.integer if aw.is_integer else aw_text,
            "is_integer": aw.is_integer,
        }, indent=2))
    else:
        print(f"atomic weight: {aw_text}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    suites = tuple(args.suite) if args.suite else SUITE_NAMES
    for s in suites:
        if s not in SUITE_NAMES:
            raise ParseError(f"unknown suite {s!r} (choose from {', '.join(SUITE_NAMES)})")
    config = VerifyConfig(
        suites=suites,
        winners_variant=Variant(args.variant) if args.variant else None,
        winners_family=FamilyKind(args.family) if args.family else None,
        winners_from=args.from_n,
        winners_to=args.to,
        jobs=args.jobs,
    )
    if args.max_n is not None:
        config.table_aw_max_n = args.max_n
        config.signs_max_n = args.max_n
        config.farstar_max_n = args.max_n
    if args.max_vertices is not None:
        config.bias_max_vertices = args.max_vertices
    ctx = _make_context(args)
    reports = run_all(config, ctx)
    _finish(args, ctx)
    if args.format == "json":
        print(json.dumps({
            "all_passed": all(r.passed for r in reports),
            "reports": [r.to_dict() for r in reports],
        }, indent=2))
    else:
        for report in reports:
            print(format_report(report))
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump({
                "all_passed": all(r.passed for r in reports),
                "reports": [r.to_dict() for r in reports],
            }, fh, indent=2)
            fh.write("\n")
    return 0 if all(r.passed for r in reports) else 1


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdgame",
        description="Exact values, atomic weights, and verification for "
                    "vertex/edge deletion games on graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_value = sub.add_parser("value", help="canonical value and outcome of a position")
    p_value.add_argument("graph", help="family expression, edge-list file, or '-'")
    p_value.add_argument("--variant", choices=[v.value for v in Variant],
                         default="classic")
    p_value.add_argument("--format", choices=["text", "json"], default="text")
    _add_engine_flags(p_value)
    p_value.set_defaults(func=cmd_value)

    p_aw = sub.add_parser("aw", help="atomic weight of a position's value")
    p_aw.add_argument("graph", help="family expression, edge-list file, or '-'")
    p_aw.add_argument("--variant", choices=[v.value for v in Variant], default="mf")
    p_aw.add_argument("--format", choices=["text", "json"], default="text")
    _add_engine_flags(p_aw)
    p_aw.set_defaults(func=cmd_aw)

    p_verify = sub.add_parser("verify", help="recompute known results and report")
    p_verify.add_argument("--suite", action="append", default=None,
                          help=f"suite to run (repeatable): {', '.join(SUITE_NAMES)}")
    p_verify.add_argument("--variant", choices=[v.value for v in Variant], default=None,
                          help="restrict the winners suite to one variant")
    p_verify.add_argument("--family",
                          choices=[k.value for k in FamilyKind], default=None,
                          help="restrict the winners suite to one family")
    p_verify.add_argument("--from", dest="from_n", type=int, default=None,
                          help="smallest family parameter for winners")
    p_verify.add_argument("--to", type=int, default=None,
                          help="largest family parameter for winners")
    p_verify.add_argument("--max-n", type=int, default=None,
                          help="range ceiling for table-aw / path-signs / farstar")
    p_verify.add_argument("--max-vertices", type=int, default=None,
                          help="vertex ceiling for the bias suite")
    p_verify.add_argument("--report", default=None,
                          help="write the JSON report to this file")
    p_verify.add_argument("--format", choices=["text", "json"], default="text")
    _add_engine_flags(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (TooLarge, MemoCapExceeded, RemoteStarUnstable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (NotAllSmall, NotInteger, BadParams) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
