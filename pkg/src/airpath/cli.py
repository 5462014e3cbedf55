"""Command-line interface: route queries, scenario generation, benchmarks,
and the HTTP service.

Exit codes: 0 success, 2 no route between the endpoints, 1 any error
(including flag validation)."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bench import ReportFormat, emit_report, parse_bench_spec, run_bench
from .documents import error_document, route_document
from .errors import AirpathError, InvalidParams, ProfileError
from .planner import Algorithm, NoRoute, RouteRequest, RouteResult, plan_route
from .risk import HeuristicVariant, parse_profile
from .scenario import (
    PRESETS,
    GeneratorParams,
    generate_grid,
    load_scenario_file,
    save_scenario_file,
)
from .service import DEFAULT_BODY_LIMIT, ServiceConfig, build_app


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags by default; 2 is reserved for NoRoute
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="airpath", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("route", help="plan one route and print the result")
    p.add_argument("--scenario", required=True, help="scenario file")
    p.add_argument("--from", dest="origin", required=True, metavar="ID",
                   help="origin node id")
    p.add_argument("--to", dest="dest", required=True, metavar="ID",
                   help="destination node id")
    p.add_argument("--profile", required=True, help="patient profile file")
    p.add_argument("--alpha", type=float, default=1.0,
                   help="risk weight in the objective (default 1.0)")
    p.add_argument("--variant", default="combined",
                   choices=[v.value for v in HeuristicVariant])
    p.add_argument("--algorithm", default="astar",
                   choices=[a.value for a in Algorithm])
    p.add_argument("--at", dest="depart_t", type=float, default=0.0,
                   metavar="SECONDS", help="departure time (default 0)")
    p.add_argument("--output", default="text", choices=["json", "text"])
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("generate", help="generate a seeded grid scenario file")
    p.add_argument("--rows", type=int, default=10)
    p.add_argument("--cols", type=int, default=10)
    p.add_argument("--cell-m", dest="cell_m", type=float, default=100.0)
    p.add_argument("--zone-cell", dest="zone_cell", type=int, default=3,
                   help="zone side length in cells")
    p.add_argument("--frames", type=int, default=4)
    p.add_argument("--frame-interval-s", dest="frame_interval_s", type=float,
                   default=600.0)
    p.add_argument("--hotspots", dest="hotspot_count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--preset", default=None, choices=list(PRESETS))
    p.add_argument("--name", default=None)
    p.add_argument("--out", required=True, help="output scenario file")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="run a benchmark spec and write the report")
    p.add_argument("--spec", required=True, help="bench spec file")
    p.add_argument("--out", required=True, help="report output file")
    p.add_argument("--format", default="csv", choices=[f.value for f in ReportFormat])
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("serve", help="serve preloaded scenarios over HTTP")
    p.add_argument("--scenario", action="append", required=True,
                   help="scenario file (repeatable)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--alpha", type=float, default=1.0,
                   help="default alpha for requests that omit it")
    p.add_argument("--cors", action="append", default=None, metavar="ORIGIN",
                   help="allowed CORS origin (repeatable)")
    p.add_argument("--max-body", dest="max_body", type=int, default=DEFAULT_BODY_LIMIT)
    p.add_argument("--log-level", dest="log_level", default="info")
    p.set_defaults(func=cmd_serve)
    return parser


def _load_profile(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as e:
        raise ProfileError(f"profile file is not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise ProfileError("profile document must be an object")
    return parse_profile(doc)


def _table(header: list[str], body: list[list[str]]) -> str:
    widths = [len(h) for h in header]
    for line in body:
        for i, cell in enumerate(line):
            widths[i] = max(widths[i], len(cell))
    rows = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for line in body:
        rows.append("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip())
    return "\n".join(rows)


def _route_text(result: RouteResult) -> str:
    nodes = result.path.nodes
    head = (
        f"route {nodes[0]} -> {nodes[-1]}: {result.edges_count} edges, "
        f"{result.total_distance_m:.2f} m, cost {result.total_cost:.4f} "
        f"(risk {result.total_risk_cost:.4f}), travel time "
        f"{result.travel_time_s:.1f} s, {result.nodes_expanded} nodes expanded"
    )
    if not result.per_edge:
        return head
    body = [
        [rep.edge.src, rep.edge.dst, rep.edge.zone, f"{rep.edge.length_m:.2f}",
         f"{rep.cost:.4f}", f"{rep.risk.total:.4f}"]
        for rep in result.per_edge
    ]
    return head + "\n" + _table(["from", "to", "zone", "length_m", "cost", "risk"], body)


def cmd_route(args) -> int:
    scenario = load_scenario_file(args.scenario)
    profile = _load_profile(args.profile)
    request = RouteRequest(
        origin=args.origin,
        dest=args.dest,
        profile=profile,
        depart_t=args.depart_t,
        alpha=args.alpha,
        variant=HeuristicVariant(args.variant),
        algorithm=Algorithm(args.algorithm),
    )
    result = plan_route(request, scenario)
    if args.output == "json":
        print(json.dumps(route_document(result), indent=2))
    elif isinstance(result, NoRoute):
        print(f"no route from {result.origin} to {result.dest} "
              f"({result.nodes_expanded} nodes expanded)")
    else:
        print(_route_text(result))
    return 2 if isinstance(result, NoRoute) else 0


def cmd_generate(args) -> int:
    params = GeneratorParams(
        rows=args.rows,
        cols=args.cols,
        cell_m=args.cell_m,
        zone_cell=args.zone_cell,
        frames=args.frames,
        frame_interval_s=args.frame_interval_s,
        hotspot_count=args.hotspot_count,
        seed=args.seed,
        preset=args.preset,
    )
    scenario = generate_grid(params, name=args.name)
    save_scenario_file(scenario, args.out)
    print(
        f"wrote {args.out}: {len(scenario.graph.nodes)} nodes, "
        f"{len(scenario.graph.edges)} edges, {len(scenario.zone_grid)} zones, "
        f"{len(scenario.timeline.frames)} frames"
    )
    return 0


def cmd_bench(args) -> int:
    try:
        with open(args.spec, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as e:
        raise InvalidParams(f"bench spec is not valid JSON: {e}") from None
    spec = parse_bench_spec(doc)

    base = os.path.dirname(os.path.abspath(args.spec))
    scenarios = {}
    for ref in spec.scenario_names:
        path = ref if os.path.isabs(ref) else os.path.join(base, ref)
        scenarios[ref] = load_scenario_file(path)

    run = run_bench(spec, scenarios)
    report = emit_report(run.rows, run.aggregates, ReportFormat(args.format))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(report)
    for failure in run.failures:
        print(
            f"failed: {failure.src} -> {failure.dest} [{failure.model}] "
            f"alpha={failure.alpha}: {failure.reason}",
            file=sys.stderr,
        )
    print(
        f"wrote {args.out}: {len(run.rows)} rows, {len(run.aggregates)} models, "
        f"{len(run.failures)} failures"
    )
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    config = ServiceConfig(
        host=args.host,
        port=args.port,
        scenario_paths=tuple(args.scenario),
        default_alpha=args.alpha,
        max_body_bytes=args.max_body,
        cors_origins=tuple(args.cors) if args.cors else (),
        log_level=args.log_level,
    )
    scenarios = {}
    for path in config.scenario_paths:
        sc = load_scenario_file(path)
        if sc.name in scenarios:
            raise InvalidParams(f"duplicate scenario name {sc.name!r} (from {path})")
        scenarios[sc.name] = sc
    app = build_app(scenarios, config)
    uvicorn.run(app, host=config.host, port=config.port, log_level=config.log_level)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse exits itself on bad flags / --help
        return int(e.code or 0)
    try:
        return args.func(args)
    except AirpathError as e:
        _print_error(e, getattr(args, "output", "text"))
        return 1
    except OSError as e:
        _print_error(e, getattr(args, "output", "text"))
        return 1


def _print_error(e: Exception, output: str) -> None:
    if output == "json":
        print(json.dumps(error_document(e), indent=2), file=sys.stderr)
    else:
        print(f"error: {e}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
