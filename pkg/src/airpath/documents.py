"""JSON-shaped result documents shared by the CLI and the HTTP service.

Both surfaces must emit structurally identical documents for the same
logical request, so the shaping lives here and nowhere else.
"""

from __future__ import annotations

from typing import Union

from .errors import (
    GraphValidationError,
    InvalidParams,
    ProfileError,
    ScenarioParseError,
    ScenarioValidationError,
    UnknownFactor,
    UnknownNode,
    UnknownZone,
)
from .planner import EdgeReport, ModelSpec, NoRoute, RouteResult
from .scenario import Scenario


def edge_report_document(rep: EdgeReport) -> dict:
    return {
        "from": rep.edge.src,
        "to": rep.edge.dst,
        "zone": rep.edge.zone,
        "length_m": rep.edge.length_m,
        "base_speed_mps": rep.edge.base_speed_mps,
        "cost": rep.cost,
        "risk_total": rep.risk.total,
        "risk_contributions": dict(rep.risk.contributions),
    }


def route_document(result: Union[RouteResult, NoRoute]) -> dict:
    if isinstance(result, NoRoute):
        return {
            "status": "no_route",
            "origin": result.origin,
            "dest": result.dest,
            "nodes_expanded": result.nodes_expanded,
        }
    return {
        "status": "ok",
        "nodes": list(result.path.nodes),
        "total_distance_m": result.total_distance_m,
        "total_risk_cost": result.total_risk_cost,
        "total_cost": result.total_cost,
        "travel_time_s": result.travel_time_s,
        "edges_count": result.edges_count,
        "nodes_expanded": result.nodes_expanded,
        "edges": [edge_report_document(rep) for rep in result.per_edge],
    }


def compare_document(
    rows: list[tuple[ModelSpec, Union[RouteResult, NoRoute]]],
) -> dict:
    return {
        "rows": [
            {
                "model": model.label,
                "algorithm": model.algorithm.value,
                "variant": model.variant.value,
                "result": route_document(result),
            }
            for model, result in rows
        ]
    }


def scenario_meta_document(scenario: Scenario) -> dict:
    return {
        "name": scenario.name,
        "seed": scenario.seed,
        "nodes": len(scenario.graph.nodes),
        "edges": len(scenario.graph.edges),
        "zones": len(scenario.zone_grid),
        "frames": len(scenario.timeline.frames),
        "frame_interval_s": scenario.timeline.frame_interval_s,
        "coord_system": scenario.graph.coord_system.value,
    }


def scenario_summary_document(scenario: Scenario) -> dict:
    """Graph plus a compact per-zone environment digest (aqi and traffic
    saturation per frame) for map display; full frames stay server-side."""
    zones = []
    for zid, bbox in scenario.zone_grid.items():
        aqi_by_frame = []
        volume_ratio_by_frame = []
        for frame in scenario.timeline.frames:
            sample = frame.zones.get(zid)
            if sample is None:
                aqi_by_frame.append(None)
                volume_ratio_by_frame.append(None)
            else:
                weather, traffic = sample
                aqi_by_frame.append(weather.aqi)
                volume_ratio_by_frame.append(traffic.vehicle_volume / traffic.capacity)
        zones.append({
            "id": zid,
            "bbox": list(bbox),
            "aqi_by_frame": aqi_by_frame,
            "volume_ratio_by_frame": volume_ratio_by_frame,
        })
    return {
        "meta": scenario_meta_document(scenario),
        "frame_timestamps": [f.timestamp_s for f in scenario.timeline.frames],
        "nodes": [
            {"id": n.id, "x": n.x, "y": n.y} for n in scenario.graph.nodes.values()
        ],
        "edges": [
            {
                "from": e.src,
                "to": e.dst,
                "length_m": e.length_m,
                "base_speed_mps": e.base_speed_mps,
                "zone": e.zone,
            }
            for e in scenario.graph.edges
        ],
        "zones": zones,
    }


_ERROR_CODES: tuple[tuple[type, str], ...] = (
    (UnknownNode, "unknown_node"),
    (UnknownZone, "unknown_zone"),
    (UnknownFactor, "unknown_factor"),
    (ProfileError, "invalid_profile"),
    (ScenarioParseError, "scenario_parse_error"),
    (ScenarioValidationError, "invalid_scenario"),
    (GraphValidationError, "invalid_graph"),
    (InvalidParams, "invalid_params"),
)


def error_document(exc: Exception) -> dict:
    """Uniform {code, message, detail} error object."""
    code = "error"
    for cls, name in _ERROR_CODES:
        if isinstance(exc, cls):
            code = name
            break
    detail: object = None
    if isinstance(exc, (ScenarioValidationError, GraphValidationError)):
        detail = list(exc.violations)
    elif isinstance(exc, ProfileError) and exc.field is not None:
        detail = {"field": exc.field}
    elif isinstance(exc, UnknownNode):
        detail = {"node": exc.node_id}
    elif isinstance(exc, ScenarioParseError) and exc.line is not None:
        detail = {"line": exc.line, "column": exc.column}
    return {"code": code, "message": str(exc), "detail": detail}
