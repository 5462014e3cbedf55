"""Health-aware route planning: distance plus personalized environmental
risk over road graphs, with scenario generation, benchmarking, a CLI, and
an HTTP service."""

__version__ = "0.1.0"

from .env import EnvFrame, EnvTimeline, TrafficSample, WeatherSample
from .graph import Edge, Node, Path, RoadGraph, astar, dijkstra
from .planner import (
    Algorithm,
    NoRoute,
    RouteRequest,
    RouteResult,
    compare_variants,
    plan_route,
)
from .risk import HeuristicVariant, PatientProfile, derive_weights, parse_profile
from .scenario import (
    GeneratorParams,
    Scenario,
    generate_grid,
    load_scenario,
    save_scenario,
)

__all__ = [
    "__version__",
    "Algorithm",
    "Edge",
    "EnvFrame",
    "EnvTimeline",
    "GeneratorParams",
    "HeuristicVariant",
    "Node",
    "NoRoute",
    "PatientProfile",
    "Path",
    "RoadGraph",
    "RouteRequest",
    "RouteResult",
    "Scenario",
    "TrafficSample",
    "WeatherSample",
    "astar",
    "compare_variants",
    "derive_weights",
    "dijkstra",
    "generate_grid",
    "load_scenario",
    "parse_profile",
    "plan_route",
    "save_scenario",
]
