"""Command line interface.

Exit codes are shared by every subcommand: 0 success, 1 semantic failure
(validation, routing, I/O), 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .generator import DegenerateInput, GeneratorConfig, generate
from .graphfile import GraphFormatError, dumps_graph, read_graph, trace_to_dict, write_atomic
from .oracle import Violation, check_propositions, full_sweep
from .render import render_svg
from .router import RoutingError, is_greedy_path, route
from .triangulation import Triangulation, validate_structure

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"rankroute: {msg}", file=sys.stderr)


def _load(path: str) -> Triangulation:
    try:
        return read_graph(path)
    except GraphFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _node_id(g: Triangulation, token: str) -> int:
    """Accept a numeric id or an anchor name (A1, A2, A3)."""
    t = token.strip()
    if t.upper() in ("A1", "A2", "A3"):
        return g.anchors[int(t[1]) - 1]
    try:
        u = int(t)
    except ValueError:
        raise UsageError(f"not a node id: {token!r}") from None
    if not 0 <= u < g.n:
        raise UsageError(f"unknown node {u} (graph has {g.n} nodes)")
    return u


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        cfg = GeneratorConfig(n=args.n, seed=args.seed, triangle_side=args.side)
    except (DegenerateInput, ValueError) as exc:
        raise UsageError(f"{type(exc).__name__}: {exc}") from None
    g = generate(cfg)
    write_atomic(args.out, dumps_graph(g))
    print(f"n={g.n} edges={g.edge_count} seed={cfg.seed} -> {args.out}")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    g = _load(args.path)
    report = validate_structure(g, limit=None if args.all_witnesses else args.limit)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        rows = [
            ("condition_a", report.condition_a_ok),
            ("condition_b", report.condition_b_ok),
            ("standard", report.standard_ok),
            ("structure", report.structure_ok),
        ]
        for name, ok in rows:
            print(f"{name:12s} {'pass' if ok else 'FAIL'}")
        for rule, count in sorted(report.counts.items()):
            print(f"  {rule}: {count} failure(s)")
        for w in report.witnesses:
            extra = f" ({w.detail})" if w.detail else ""
            print(f"  witness {w.rule} {list(w.nodes)}{extra}")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_route(args: argparse.Namespace) -> int:
    g = _load(args.path)
    s, d = _node_id(g, args.source), _node_id(g, args.dest)
    try:
        trace = route(g, s, d)
    except RoutingError as exc:
        _err(f"routing failed: {type(exc).__name__}: {exc}")
        doc = trace_to_dict(exc.trace) if exc.trace is not None else {"source": s, "destination": d}
        doc["error"] = f"{type(exc).__name__}: {exc}"
        print(json.dumps(doc, indent=2))
        return EXIT_FAIL
    cert = is_greedy_path(g, trace)
    if args.trace:
        print(json.dumps(trace_to_dict(trace, cert), indent=2))
    else:
        path = " -> ".join(map(str, trace.nodes))
        if cert.ok:
            how = f"rank_{cert.order} {cert.direction}"
        else:
            how = f"no monotone rank {list(cert.violations)}"
        print(f"delivered {s} -> {d} in {len(trace.hops)} hop(s): {path}; certificate {how}")
    return EXIT_OK if trace.delivered and cert.ok else EXIT_FAIL


def cmd_sweep(args: argparse.Namespace) -> int:
    g = _load(args.path)
    stats = full_sweep(g, jobs=args.jobs)
    report = validate_structure(g)
    extra = [Violation(f"validation:{w.rule}", w.nodes) for w in report.witnesses]
    if args.propositions:
        extra += check_propositions(g, force=True)
    stats.violations.extend(extra)
    stats.violation_count += len(extra)
    print(json.dumps(stats.to_dict(), indent=2))
    return EXIT_OK if stats.ok else EXIT_FAIL


def cmd_render(args: argparse.Namespace) -> int:
    g = _load(args.path)
    path = None
    if args.route:
        s, d = (_node_id(g, t) for t in args.route)
        try:
            path = route(g, s, d).nodes
        except RoutingError as exc:
            _err(f"routing failed: {type(exc).__name__}: {exc}")
            return EXIT_FAIL
    write_atomic(args.out, render_svg(g, path))
    print(f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rankroute", description="Greedy routing with rank coordinates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a random triangulation")
    p.add_argument("--n", type=int, required=True, help="node count (>= 4)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--side", type=float, default=1.0, help="triangle side length")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("validate", help="check representation and triangulation conditions")
    p.add_argument("path")
    p.add_argument("--limit", type=int, default=16, help="witnesses kept per rule")
    p.add_argument("--all-witnesses", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("route", help="route one message")
    p.add_argument("path")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="dest", required=True)
    p.add_argument("--trace", action="store_true", help="print the full trace as JSON")
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("sweep", help="route every ordered pair and report statistics")
    p.add_argument("path")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--propositions", action="store_true", help="also run the exhaustive proposition checks")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("render", help="draw the instance as SVG")
    p.add_argument("path")
    p.add_argument("--route", nargs=2, metavar=("FROM", "TO"))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except OSError as exc:
        _err(f"I/O error: {exc}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
