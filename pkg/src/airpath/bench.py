"""Benchmark harness: request matrices over scenarios, report tables.

Runs every (pair x alpha x model) cell, times the planner, and emits a
per-route results table plus per-model averages, as csv or aligned text.
travel_time_s (modeled in-route time) and wall_clock_us (measured planner
runtime) are deliberately separate columns; conflating them makes numbers
like "573 s for a 600 m route" unreadable.

Every row's mean_exposure is evaluated with the full combined factor set
over the row's own path: exposure is a property of the route, not of the
objective that chose it, and that is what makes exposure comparable across
models (and lets the safety comparison against the distance-only baseline
mean anything).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from statistics import median
from time import perf_counter_ns
from typing import Mapping

from .errors import AirpathError, InvalidParams
from .planner import MODEL_ROWS, ModelSpec, NoRoute, RouteRequest, RouteResult, plan_route
from .risk import (
    DEFAULT_RISK_CONFIG,
    AsthmaType,
    Gender,
    HeuristicVariant,
    ObesityLevel,
    PatientProfile,
    RiskConfig,
    SmokeExposure,
    StressLevel,
    parse_profile,
)
from .rng import Xoshiro256StarStar
from .scenario import Scenario

MODEL_BY_LABEL: dict[str, ModelSpec] = {m.label: m for m in MODEL_ROWS}
MODEL_LABELS: tuple[str, ...] = tuple(m.label for m in MODEL_ROWS)

NEUTRAL_PROFILE = PatientProfile(
    asthma_type=AsthmaType.non_allergic,
    stress_level=StressLevel.low,
    smoke_exposure=SmokeExposure.none,
    obesity_level=ObesityLevel.none,
    gender=Gender.other,
    family_history=False,
    plays_sports=False,
)


@dataclass(frozen=True)
class BenchSpec:
    scenario_names: tuple[str, ...]
    pairs: tuple[tuple[str, str], ...] = ()
    random_pairs: int = 0
    pair_seed: int = 0
    alphas: tuple[float, ...] = (1.0,)
    models: tuple[str, ...] = MODEL_LABELS
    repetitions: int = 5
    profile: PatientProfile = NEUTRAL_PROFILE
    depart_t: float = 0.0

    def __post_init__(self) -> None:
        problems = []
        if not self.scenario_names:
            problems.append("no scenarios listed")
        if not self.pairs and self.random_pairs < 1:
            problems.append("empty request matrix")
        if self.random_pairs < 0:
            problems.append(f"random_pairs must be >= 0, got {self.random_pairs}")
        if not self.alphas:
            problems.append("alpha sweep is empty")
        elif not all(math.isfinite(a) and a >= 0 for a in self.alphas):
            problems.append(f"alphas must be finite and >= 0, got {list(self.alphas)}")
        if self.repetitions < 1:
            problems.append(f"repetitions must be >= 1, got {self.repetitions}")
        if not self.models:
            problems.append("no models listed")
        else:
            unknown = [m for m in self.models if m not in MODEL_BY_LABEL]
            if unknown:
                problems.append(f"unknown models {unknown} (known: {list(MODEL_LABELS)})")
        if problems:
            raise InvalidParams("; ".join(problems))


BENCH_COLUMNS = (
    "src", "dest", "model", "edges_count", "distance_m", "travel_time_s",
    "total_cost", "mean_exposure", "nodes_expanded", "wall_clock_us",
)


@dataclass(frozen=True)
class BenchRow:
    src: str
    dest: str
    model: str
    edges_count: int
    distance_m: float
    travel_time_s: float
    total_cost: float
    mean_exposure: float
    nodes_expanded: int
    wall_clock_us: float


@dataclass(frozen=True)
class BenchFailure:
    scenario: str
    src: str
    dest: str
    model: str
    alpha: float
    reason: str


@dataclass(frozen=True)
class ModelAggregate:
    """Per-model means over successful rows (distance, modeled time, path
    edge count), mirroring the averages table layout."""

    model: str
    distance_m: float
    travel_time_s: float
    edges_count: float


@dataclass(frozen=True)
class BenchRun:
    rows: tuple[BenchRow, ...]
    aggregates: tuple[ModelAggregate, ...]
    failures: tuple[BenchFailure, ...]


def parse_bench_spec(doc: Mapping) -> BenchSpec:
    """Bench spec document -> BenchSpec; field problems raise InvalidParams."""
    if not isinstance(doc, Mapping):
        raise InvalidParams("bench spec must be an object")

    def str_list(key: str, default=None):
        v = doc.get(key, default)
        if not isinstance(v, (list, tuple)) or not all(isinstance(s, str) for s in v):
            raise InvalidParams(f"bench spec field {key!r} must be an array of strings")
        return tuple(v)

    scenario_names = str_list("scenarios", [])
    pairs = []
    for i, p in enumerate(doc.get("pairs", [])):
        if not (isinstance(p, (list, tuple)) and len(p) == 2
                and all(isinstance(s, str) for s in p)):
            raise InvalidParams(f"bench spec pairs[{i}] must be a [from, to] pair of ids")
        pairs.append((p[0], p[1]))
    alphas = doc.get("alphas", [1.0])
    if not isinstance(alphas, (list, tuple)) or not all(
        isinstance(a, (int, float)) and not isinstance(a, bool) for a in alphas
    ):
        raise InvalidParams("bench spec field 'alphas' must be an array of numbers")
    models = str_list("models", list(MODEL_LABELS))

    def int_field(key: str, default: int) -> int:
        v = doc.get(key, default)
        if not isinstance(v, int) or isinstance(v, bool):
            raise InvalidParams(f"bench spec field {key!r} must be an integer")
        return v

    depart_t = doc.get("depart_t", 0.0)
    if not isinstance(depart_t, (int, float)) or isinstance(depart_t, bool):
        raise InvalidParams("bench spec field 'depart_t' must be a number")
    profile = NEUTRAL_PROFILE
    if "profile" in doc:
        if not isinstance(doc["profile"], Mapping):
            raise InvalidParams("bench spec field 'profile' must be an object")
        profile = parse_profile(doc["profile"])

    return BenchSpec(
        scenario_names=scenario_names,
        pairs=tuple(pairs),
        random_pairs=int_field("random_pairs", 0),
        pair_seed=int_field("pair_seed", 0),
        alphas=tuple(float(a) for a in alphas),
        models=models,
        repetitions=int_field("repetitions", 5),
        profile=profile,
        depart_t=float(depart_t),
    )


def _resolve_pairs(spec: BenchSpec, scenario: Scenario) -> list[tuple[str, str]]:
    pairs = list(spec.pairs)
    if spec.random_pairs:
        rng = Xoshiro256StarStar(spec.pair_seed)
        ids = sorted(scenario.graph.nodes)
        if len(ids) < 2:
            raise InvalidParams("random pairs need a graph with at least 2 nodes")
        for _ in range(spec.random_pairs):
            a = ids[rng.below(len(ids))]
            b = ids[rng.below(len(ids))]
            while b == a:
                b = ids[rng.below(len(ids))]
            pairs.append((a, b))
    return pairs


def _combined_exposure(result: RouteResult, alpha: float) -> float:
    # per_edge annotations carry the combined breakdown (see run_bench);
    # summing in path order keeps this bit-identical with the planner's own
    # risk cost on the combined row.
    cost = 0.0
    for rep in result.per_edge:
        cost += rep.edge.length_m * alpha * rep.risk.total
    return cost / result.total_distance_m if result.total_distance_m > 0 else 0.0


def run_bench(
    spec: BenchSpec,
    scenarios: Mapping[str, Scenario],
    *,
    risk_config: RiskConfig = DEFAULT_RISK_CONFIG,
) -> BenchRun:
    """One row per (pair x alpha x model) per scenario, with per-model mean
    aggregates. Planner errors and unreachable pairs become failure entries
    instead of aborting the run. Wall clock is the median over
    spec.repetitions timed runs after one untimed warm-up, in microseconds;
    everything except the wall clock column is deterministic in the seeds.
    """
    missing = [s for s in spec.scenario_names if s not in scenarios]
    if missing:
        raise InvalidParams(f"unknown scenario refs {missing}")

    rows: list[BenchRow] = []
    failures: list[BenchFailure] = []
    for ref in spec.scenario_names:
        scenario = scenarios[ref]
        for src, dest in _resolve_pairs(spec, scenario):
            for alpha in spec.alphas:
                for label in spec.models:
                    model = MODEL_BY_LABEL[label]
                    request = RouteRequest(
                        origin=src,
                        dest=dest,
                        profile=spec.profile,
                        depart_t=spec.depart_t,
                        alpha=alpha,
                        variant=model.variant,
                        algorithm=model.algorithm,
                    )

                    def cell() -> RouteResult | NoRoute:
                        return plan_route(
                            request,
                            scenario,
                            report_variant=HeuristicVariant.combined,
                            risk_config=risk_config,
                        )

                    try:
                        result = cell()
                    except AirpathError as e:
                        failures.append(BenchFailure(ref, src, dest, label, alpha, str(e)))
                        continue
                    if isinstance(result, NoRoute):
                        failures.append(
                            BenchFailure(ref, src, dest, label, alpha, "no route")
                        )
                        continue

                    times_ns = []
                    for _ in range(spec.repetitions):
                        t0 = perf_counter_ns()
                        cell()
                        times_ns.append(perf_counter_ns() - t0)

                    rows.append(BenchRow(
                        src=src,
                        dest=dest,
                        model=label,
                        edges_count=result.edges_count,
                        distance_m=result.total_distance_m,
                        travel_time_s=result.travel_time_s,
                        total_cost=result.total_cost,
                        mean_exposure=_combined_exposure(result, alpha),
                        nodes_expanded=result.nodes_expanded,
                        wall_clock_us=median(times_ns) / 1000.0,
                    ))

    aggregates = []
    for label in spec.models:
        done = [r for r in rows if r.model == label]
        if not done:
            continue
        n = len(done)
        aggregates.append(ModelAggregate(
            model=label,
            distance_m=sum(r.distance_m for r in done) / n,
            travel_time_s=sum(r.travel_time_s for r in done) / n,
            edges_count=sum(r.edges_count for r in done) / n,
        ))
    return BenchRun(rows=tuple(rows), aggregates=tuple(aggregates), failures=tuple(failures))


class ReportFormat(str, Enum):
    csv = "csv"
    table = "table"


def emit_report(
    rows: tuple[BenchRow, ...],
    aggregates: tuple[ModelAggregate, ...],
    fmt: ReportFormat,
) -> str:
    """Render rows + aggregates as csv (exact column order, header row) or
    as two aligned text tables."""
    if not rows:
        raise InvalidParams("no rows to report")
    if not aggregates:
        raise InvalidParams("precondition violated: nonempty rows require aggregates")

    if fmt is ReportFormat.csv:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(BENCH_COLUMNS)
        for r in rows:
            writer.writerow([getattr(r, c) for c in BENCH_COLUMNS])
        return buf.getvalue()

    def render(title: str, header: list[str], body: list[list[str]]) -> str:
        widths = [len(h) for h in header]
        for line in body:
            for i, cell_text in enumerate(line):
                widths[i] = max(widths[i], len(cell_text))
        out = [title, "-" * len(title)]
        out.append("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
        for line in body:
            out.append("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip())
        return "\n".join(out)

    def num(v: float) -> str:
        return f"{v:.6g}"

    search_body = [
        [r.src, r.dest, r.model, str(r.edges_count), num(r.distance_m),
         num(r.travel_time_s), num(r.total_cost), num(r.mean_exposure),
         str(r.nodes_expanded), num(r.wall_clock_us)]
        for r in rows
    ]
    avg_body = [
        [a.model, num(a.distance_m), num(a.travel_time_s), num(a.edges_count)]
        for a in aggregates
    ]
    return (
        render("Search Results", list(BENCH_COLUMNS), search_body)
        + "\n\n"
        + render("Average Results by Model", ["model", "distance_m", "travel_time_s", "edges_count"], avg_body)
        + "\n"
    )
