"""Time-indexed, zone-indexed environmental state.

A timeline is a list of frames at fixed intervals; each frame maps zone ids
to one weather sample and one traffic sample. Lookup is piecewise-constant
in time (floor to the latest frame at or before t, clamped at both ends),
so risk discontinuities stay attributable to specific frames.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UnknownZone
from .graph import RoadGraph

DEFAULT_TRAFFIC_CAPACITY = 100.0


@dataclass(frozen=True)
class WeatherSample:
    temperature_c: float
    humidity_pct: float       # [0, 100]
    wind_speed_mps: float     # >= 0
    aqi: float                # >= 0
    pollen_level: int         # ordinal 0..5
    pressure_hpa: float       # > 0
    rainfall_mm: float        # mm/h, >= 0
    uv_index: float           # [0, 14]


@dataclass(frozen=True)
class TrafficSample:
    vehicle_volume: float               # >= 0
    capacity: float = DEFAULT_TRAFFIC_CAPACITY  # > 0, per-zone saturation reference


@dataclass(frozen=True)
class EnvFrame:
    timestamp_s: float
    zones: dict[str, tuple[WeatherSample, TrafficSample]]


@dataclass(frozen=True)
class EnvTimeline:
    frames: tuple[EnvFrame, ...]
    frame_interval_s: float

    def frame_at(self, t: float) -> EnvFrame:
        if not self.frames:
            raise ValueError("timeline has no frames")
        idx = int(t // self.frame_interval_s) if t > 0 else 0
        if idx >= len(self.frames):
            idx = len(self.frames) - 1
        return self.frames[idx]

    def lookup(self, zone: str, t: float) -> tuple[WeatherSample, TrafficSample]:
        """Samples for the zone in the frame covering time t."""
        frame = self.frame_at(t)
        try:
            return frame.zones[zone]
        except KeyError:
            raise UnknownZone(zone) from None


def weather_violations(w: WeatherSample) -> list[tuple[str, str]]:
    """(field, reason) pairs for every range the sample breaks."""
    out: list[tuple[str, str]] = []
    checks = [
        ("temperature_c", math.isfinite(w.temperature_c), "must be finite"),
        ("humidity_pct", math.isfinite(w.humidity_pct) and 0 <= w.humidity_pct <= 100,
         "must be in [0, 100]"),
        ("wind_speed_mps", math.isfinite(w.wind_speed_mps) and w.wind_speed_mps >= 0,
         "must be >= 0"),
        ("aqi", math.isfinite(w.aqi) and w.aqi >= 0, "must be >= 0"),
        ("pollen_level", isinstance(w.pollen_level, int) and 0 <= w.pollen_level <= 5,
         "must be an integer in 0..5"),
        ("pressure_hpa", math.isfinite(w.pressure_hpa) and w.pressure_hpa > 0,
         "must be > 0"),
        ("rainfall_mm", math.isfinite(w.rainfall_mm) and w.rainfall_mm >= 0,
         "must be >= 0"),
        ("uv_index", math.isfinite(w.uv_index) and 0 <= w.uv_index <= 14,
         "must be in [0, 14]"),
    ]
    for fld, ok, reason in checks:
        if not ok:
            out.append((fld, f"{reason}, got {getattr(w, fld)!r}"))
    return out


def traffic_violations(t: TrafficSample) -> list[tuple[str, str]]:
    out: list[tuple[str, str]] = []
    if not (math.isfinite(t.vehicle_volume) and t.vehicle_volume >= 0):
        out.append(("vehicle_volume", f"must be finite and >= 0, got {t.vehicle_volume!r}"))
    if not (math.isfinite(t.capacity) and t.capacity > 0):
        out.append(("capacity", f"must be finite and > 0, got {t.capacity!r}"))
    return out


@dataclass(frozen=True)
class TimelineViolation:
    frame_index: int | None
    zone: str | None
    field: str | None
    reason: str

    def __str__(self) -> str:
        where = []
        if self.frame_index is not None:
            where.append(f"frame {self.frame_index}")
        if self.zone is not None:
            where.append(f"zone {self.zone!r}")
        if self.field is not None:
            where.append(f"field {self.field}")
        prefix = ", ".join(where)
        return f"{prefix}: {self.reason}" if prefix else self.reason


def validate_timeline(timeline: EnvTimeline, graph: RoadGraph) -> list[TimelineViolation]:
    """Full consistency check; an empty list means the timeline is valid.

    Covers frame spacing, zone coverage for every zone referenced by an
    edge, and every per-sample range."""
    out: list[TimelineViolation] = []

    if not timeline.frames:
        out.append(TimelineViolation(None, None, None, "timeline has no frames"))
        return out
    if not (timeline.frame_interval_s > 0):
        out.append(TimelineViolation(
            None, None, "frame_interval_s",
            f"must be > 0, got {timeline.frame_interval_s!r}",
        ))
        return out

    for i, frame in enumerate(timeline.frames):
        expected = i * timeline.frame_interval_s
        # relative tolerance absorbs 9-significant-digit storage rounding
        if abs(frame.timestamp_s - expected) > 1e-9 * max(1.0, abs(expected)):
            out.append(TimelineViolation(
                i, None, "timestamp_s",
                f"timestamps must be strictly increasing at index * interval; "
                f"expected {expected}, got {frame.timestamp_s}",
            ))

    edge_zones = sorted({e.zone for e in graph.edges})
    for i, frame in enumerate(timeline.frames):
        for zone in edge_zones:
            if zone not in frame.zones:
                out.append(TimelineViolation(i, zone, None, "zone missing from frame"))
        for zone, (weather, traffic) in sorted(frame.zones.items()):
            for fld, reason in weather_violations(weather):
                out.append(TimelineViolation(i, zone, fld, reason))
            for fld, reason in traffic_violations(traffic):
                out.append(TimelineViolation(i, zone, fld, reason))
    return out
