"""Route planning over a scenario: cost assembly, search, result annotation.

An edge's cost is length_m * (1 + alpha * risk) where risk is the weighted
environmental score for the edge's zone at departure time. Risk therefore
lives entirely in the edge cost; the A* guidance heuristic stays a pure
straight-line distance lower bound, which cost >= length keeps admissible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import TYPE_CHECKING, Callable, Union

from .env import EnvTimeline
from .errors import InvalidParams
from .graph import Edge, Path, RoadGraph, astar, dijkstra, straight_line_lower_bound
from .risk import (
    DEFAULT_RISK_CONFIG,
    HeuristicVariant,
    PatientProfile,
    RiskBreakdown,
    RiskConfig,
    SensitivityWeights,
    derive_weights,
    environmental_risk,
    factor_risk,
)

if TYPE_CHECKING:
    from .scenario import Scenario

# Congested traffic slows travel; at full saturation speed drops to 40% of
# base. Reporting only: travel time never feeds back into route choice.
TRAFFIC_SLOWDOWN = 0.6


class Algorithm(str, Enum):
    dijkstra = "dijkstra"
    astar = "astar"


@dataclass(frozen=True)
class RouteRequest:
    origin: str
    dest: str
    profile: PatientProfile
    depart_t: float = 0.0
    alpha: float = 1.0
    variant: HeuristicVariant = HeuristicVariant.combined
    algorithm: Algorithm = Algorithm.astar

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alpha) and self.alpha >= 0):
            raise InvalidParams(f"alpha must be finite and >= 0, got {self.alpha!r}")
        if not math.isfinite(self.depart_t):
            raise InvalidParams(f"depart_t must be finite, got {self.depart_t!r}")


@dataclass(frozen=True)
class NoRoute:
    """Destination unreachable. A result value, not an error: disconnected
    query pairs are routine in benchmark matrices."""

    origin: str
    dest: str
    nodes_expanded: int


@dataclass(frozen=True)
class EdgeReport:
    """One traversed edge with its risk breakdown and cost contribution."""

    edge: Edge
    risk: RiskBreakdown
    cost: float


@dataclass(frozen=True)
class RouteResult:
    path: Path
    total_distance_m: float
    total_risk_cost: float
    total_cost: float
    travel_time_s: float
    edges_count: int
    nodes_expanded: int
    per_edge: tuple[EdgeReport, ...]


def edge_cost(
    edge: Edge,
    depart_t: float,
    weights: SensitivityWeights,
    timeline: EnvTimeline,
    alpha: float,
    variant: HeuristicVariant,
) -> float:
    """Single-edge cost: length_m * (1 + alpha * risk total).

    alpha = 0 or variant distance_only reduces to length_m exactly."""
    h = environmental_risk(edge, depart_t, weights, timeline, variant).total
    return edge.length_m * (1.0 + alpha * h)


def _zone_cached(fn: Callable[[Edge], float]) -> Callable[[Edge], float]:
    # Risk depends only on the edge's zone once time and weights are fixed,
    # so per-zone caching makes the cost closure O(1) after first touch.
    cache: dict[str, float] = {}

    def cached(e: Edge) -> float:
        v = cache.get(e.zone)
        if v is None:
            v = fn(e)
            cache[e.zone] = v
        return v

    return cached


def plan_route(
    request: RouteRequest,
    scenario: "Scenario",
    *,
    report_variant: HeuristicVariant | None = None,
    risk_config: RiskConfig = DEFAULT_RISK_CONFIG,
    family_history_alpha_scale: float = 1.0,
) -> Union[RouteResult, NoRoute]:
    """Run the requested search and assemble the annotated result.

    All environmental lookups are frozen at request.depart_t: costs stay
    static during one query, which is what keeps Dijkstra/A* optimality
    intact. Time-expanded routing (time advancing along the path) is a
    deliberate non-feature.

    report_variant selects the factor subset used for the per-edge risk
    annotations only; costs always follow request.variant. Family history
    scales weights uniformly and so cancels in their normalization; pass
    family_history_alpha_scale > 1 to let it amplify alpha globally instead
    (off by default).
    """
    graph: RoadGraph = scenario.graph
    timeline: EnvTimeline = scenario.timeline
    graph.node(request.origin)
    graph.node(request.dest)

    weights = derive_weights(request.profile, risk_config)
    alpha = request.alpha
    if request.profile.family_history:
        alpha = alpha * family_history_alpha_scale
    t = request.depart_t
    variant = request.variant

    zone_h = _zone_cached(
        lambda e: environmental_risk(e, t, weights, timeline, variant).total
    )

    def cost_fn(e: Edge) -> float:
        return e.length_m * (1.0 + alpha * zone_h(e))

    if request.algorithm is Algorithm.astar:
        def heuristic(node_id: str) -> float:
            return straight_line_lower_bound(graph, node_id, request.dest)

        found = astar(graph, cost_fn, heuristic, request.origin, request.dest)
    else:
        found = dijkstra(graph, cost_fn, request.origin, request.dest)

    if found.path is None:
        return NoRoute(request.origin, request.dest, found.nodes_expanded)

    rep_variant = variant if report_variant is None else report_variant
    rep_cache: dict[str, RiskBreakdown] = {}
    traffic_cache: dict[str, float] = {}

    distance = 0.0
    risk_cost = 0.0
    travel_time = 0.0
    reports: list[EdgeReport] = []
    for e in found.path.edges:
        breakdown = rep_cache.get(e.zone)
        if breakdown is None:
            breakdown = environmental_risk(e, t, weights, timeline, rep_variant)
            rep_cache[e.zone] = breakdown
        traffic_risk = traffic_cache.get(e.zone)
        if traffic_risk is None:
            weather, traffic = timeline.lookup(e.zone, t)
            traffic_risk = factor_risk("traffic", weather, traffic)
            traffic_cache[e.zone] = traffic_risk
        h = zone_h(e)
        cost = e.length_m * (1.0 + alpha * h)
        distance += e.length_m
        risk_cost += e.length_m * alpha * h
        travel_time += e.length_m / (e.base_speed_mps * (1.0 - TRAFFIC_SLOWDOWN * traffic_risk))
        reports.append(EdgeReport(edge=e, risk=breakdown, cost=cost))

    return RouteResult(
        path=found.path,
        total_distance_m=distance,
        total_risk_cost=risk_cost,
        total_cost=distance + risk_cost,
        travel_time_s=travel_time,
        edges_count=len(found.path.edges),
        nodes_expanded=found.nodes_expanded,
        per_edge=tuple(reports),
    )


@dataclass(frozen=True)
class ModelSpec:
    """One report row: a label, the algorithm, the costing factor subset,
    and an optional separate factor subset for risk annotation."""

    label: str
    algorithm: Algorithm
    variant: HeuristicVariant
    report_variant: HeuristicVariant | None = None


# The two plain-shortest-path baselines, then the four factor-subset
# heuristics. "Heuristic A* (Distance)" costs by distance alone but
# annotates the full risk picture, so its exposure is comparable with the
# other heuristic rows.
MODEL_ROWS: tuple[ModelSpec, ...] = (
    ModelSpec("A* Standard", Algorithm.astar, HeuristicVariant.distance_only),
    ModelSpec("Dijkstra", Algorithm.dijkstra, HeuristicVariant.distance_only),
    ModelSpec(
        "Heuristic A* (Distance)",
        Algorithm.astar,
        HeuristicVariant.distance_only,
        HeuristicVariant.combined,
    ),
    ModelSpec("Heuristic A* (Traffic)", Algorithm.astar, HeuristicVariant.traffic_only),
    ModelSpec("Heuristic A* (Weather)", Algorithm.astar, HeuristicVariant.weather_only),
    ModelSpec(
        "Heuristic A* (Traffic - Weather - Distance)",
        Algorithm.astar,
        HeuristicVariant.combined,
    ),
)


def compare_variants(
    request: RouteRequest,
    scenario: "Scenario",
    *,
    risk_config: RiskConfig = DEFAULT_RISK_CONFIG,
) -> list[tuple[ModelSpec, Union[RouteResult, NoRoute]]]:
    """Plan the same origin/dest/profile under every report model.

    request.variant and request.algorithm are ignored; each row supplies its
    own. Row order is fixed and deterministic."""
    rows: list[tuple[ModelSpec, Union[RouteResult, NoRoute]]] = []
    for model in MODEL_ROWS:
        row_request = replace(request, variant=model.variant, algorithm=model.algorithm)
        result = plan_route(
            row_request,
            scenario,
            report_variant=model.report_variant,
            risk_config=risk_config,
        )
        rows.append((model, result))
    return rows
