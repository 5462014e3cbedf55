"""Personalized environmental risk scoring.

A patient profile is turned into per-factor sensitivity weights (summing to
1), each environmental reading is normalized to a [0, 1] risk through fixed
piecewise-linear tables, and an edge's risk score is the weighted sum over
the factor subset selected by the heuristic variant. All constants that
shape the weighting live in RiskConfig so experiments can vary them.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Mapping

from .env import EnvTimeline, TrafficSample, WeatherSample
from .errors import ProfileError, UnknownFactor
from .graph import Edge

FACTORS = (
    "aqi", "pollen", "temperature", "humidity", "traffic",
    "rainfall", "wind", "uv", "pressure",
)

WEATHER_FACTORS = tuple(f for f in FACTORS if f != "traffic")


class AsthmaType(str, Enum):
    allergic = "allergic"
    non_allergic = "non_allergic"


class StressLevel(str, Enum):
    low = "low"
    medium = "medium"
    high = "high"


class SmokeExposure(str, Enum):
    none = "none"
    secondhand = "secondhand"
    smoker = "smoker"


class ObesityLevel(str, Enum):
    none = "none"
    moderate = "moderate"
    high = "high"


class Gender(str, Enum):
    female = "female"
    male = "male"
    other = "other"


@dataclass(frozen=True)
class PatientProfile:
    asthma_type: AsthmaType
    stress_level: StressLevel
    smoke_exposure: SmokeExposure
    obesity_level: ObesityLevel
    gender: Gender
    family_history: bool
    plays_sports: bool


PROFILE_FIELDS = (
    "asthma_type", "stress_level", "smoke_exposure", "obesity_level",
    "gender", "family_history", "plays_sports",
)

_ENUM_FIELDS = {
    "asthma_type": AsthmaType,
    "stress_level": StressLevel,
    "smoke_exposure": SmokeExposure,
    "obesity_level": ObesityLevel,
    "gender": Gender,
}


def parse_profile(doc: Mapping) -> PatientProfile:
    """Strict profile ingestion: every field required, enum spellings exact,
    unknown values are errors rather than warnings."""
    kwargs = {}
    for fld in PROFILE_FIELDS:
        if fld not in doc:
            raise ProfileError(f"profile is missing required field {fld!r}", field=fld)
        value = doc[fld]
        if fld in _ENUM_FIELDS:
            enum_cls = _ENUM_FIELDS[fld]
            try:
                kwargs[fld] = enum_cls(value)
            except ValueError:
                allowed = [m.value for m in enum_cls]
                raise ProfileError(
                    f"profile field {fld!r}: unknown value {value!r} "
                    f"(allowed: {allowed})",
                    field=fld,
                ) from None
        else:
            if not isinstance(value, bool):
                raise ProfileError(
                    f"profile field {fld!r} must be a boolean, got {value!r}", field=fld
                )
            kwargs[fld] = value
    return PatientProfile(**kwargs)


def profile_to_doc(profile: PatientProfile) -> dict:
    return {
        "asthma_type": profile.asthma_type.value,
        "stress_level": profile.stress_level.value,
        "smoke_exposure": profile.smoke_exposure.value,
        "obesity_level": profile.obesity_level.value,
        "gender": profile.gender.value,
        "family_history": profile.family_history,
        "plays_sports": profile.plays_sports,
    }


@dataclass(frozen=True)
class SensitivityWeights:
    """Per-factor weights, nonnegative and summing to 1 after derivation."""

    aqi: float
    pollen: float
    temperature: float
    humidity: float
    traffic: float
    rainfall: float
    wind: float
    uv: float
    pressure: float

    def as_dict(self) -> dict[str, float]:
        return {f: getattr(self, f) for f in FACTORS}


@dataclass(frozen=True)
class RiskConfig:
    """Every tunable constant in the weighting model, in one place.

    The base table encodes relative trigger severity for a baseline patient;
    the multiplicative modifiers encode how profile attributes shift it.
    The magnitudes are artifact choices (only the direction of each effect
    is clinically grounded), hence overridable.
    """

    base_weights: tuple[tuple[str, float], ...] = (
        ("aqi", 0.30), ("pollen", 0.15), ("temperature", 0.15),
        ("humidity", 0.10), ("traffic", 0.20), ("rainfall", 0.05),
        ("wind", 0.05), ("uv", 0.00), ("pressure", 0.00),
    )
    allergic_pollen: float = 2.0
    secondhand_smoke_aqi: float = 1.25
    smoker_aqi: float = 1.5
    stress_high_traffic: float = 1.5
    stress_medium_traffic: float = 1.2
    sports_temperature: float = 1.5
    obesity_high_humidity: float = 1.5
    obesity_moderate_humidity: float = 1.25
    family_history_all: float = 1.2

    def with_base_weights(self, weights: Mapping[str, float]) -> RiskConfig:
        merged = dict(self.base_weights)
        for k, v in weights.items():
            if k not in merged:
                raise UnknownFactor(k)
            merged[k] = v
        return replace(self, base_weights=tuple(merged.items()))


DEFAULT_RISK_CONFIG = RiskConfig()


def derive_weights(
    profile: PatientProfile, config: RiskConfig = DEFAULT_RISK_CONFIG
) -> SensitivityWeights:
    """Base weights scaled by the profile's modifiers, renormalized to sum 1.

    family_history scales every nonzero weight uniformly, so it cancels in
    the normalization; it is surfaced instead as an optional global risk
    amplifier on the planner side."""
    w = dict(config.base_weights)

    if profile.asthma_type is AsthmaType.allergic:
        w["pollen"] *= config.allergic_pollen
    if profile.smoke_exposure is SmokeExposure.secondhand:
        w["aqi"] *= config.secondhand_smoke_aqi
    elif profile.smoke_exposure is SmokeExposure.smoker:
        w["aqi"] *= config.smoker_aqi
    if profile.stress_level is StressLevel.high:
        w["traffic"] *= config.stress_high_traffic
    elif profile.stress_level is StressLevel.medium:
        w["traffic"] *= config.stress_medium_traffic
    if profile.plays_sports:
        w["temperature"] *= config.sports_temperature
    if profile.obesity_level is ObesityLevel.high:
        w["humidity"] *= config.obesity_high_humidity
    elif profile.obesity_level is ObesityLevel.moderate:
        w["humidity"] *= config.obesity_moderate_humidity
    if profile.family_history:
        for k in w:
            if w[k] > 0:
                w[k] *= config.family_history_all

    total = sum(w.values())
    if total <= 0:
        raise ValueError("sensitivity weights sum to zero; check RiskConfig.base_weights")
    return SensitivityWeights(**{k: v / total for k, v in w.items()})


# Normalization tables: each maps a raw reading onto [0, 1] risk.
# aqi follows the standard index category severity ordering.
_AQI_CURVE = ((0.0, 0.0), (50.0, 0.2), (100.0, 0.4), (150.0, 0.7), (200.0, 0.9), (300.0, 1.0))


def _piecewise(curve: tuple[tuple[float, float], ...], x: float) -> float:
    if x <= curve[0][0]:
        return curve[0][1]
    for (x0, y0), (x1, y1) in zip(curve, curve[1:]):
        if x <= x1:
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    return curve[-1][1]


def _band_risk(x: float, lo_zero: float, hi_zero: float, lo_one: float, hi_one: float) -> float:
    # 0 inside [lo_zero, hi_zero], linear to 1 at lo_one / hi_one, clamped.
    if lo_zero <= x <= hi_zero:
        return 0.0
    if x < lo_zero:
        return min(1.0, (lo_zero - x) / (lo_zero - lo_one))
    return min(1.0, (x - hi_zero) / (hi_one - hi_zero))


def factor_risk(factor: str, weather: WeatherSample, traffic: TrafficSample) -> float:
    """Normalized [0, 1] risk for one factor given the zone's samples."""
    if factor == "aqi":
        return _piecewise(_AQI_CURVE, weather.aqi)
    if factor == "pollen":
        return weather.pollen_level / 5.0
    if factor == "temperature":
        return _band_risk(weather.temperature_c, 15.0, 25.0, -5.0, 40.0)
    if factor == "humidity":
        return _band_risk(weather.humidity_pct, 30.0, 50.0, 0.0, 100.0)
    if factor == "traffic":
        return min(traffic.vehicle_volume / traffic.capacity, 1.0)
    if factor == "rainfall":
        return min(weather.rainfall_mm / 20.0, 1.0)
    if factor == "wind":
        if weather.wind_speed_mps <= 8.0:
            return 0.0
        return min((weather.wind_speed_mps - 8.0) / 7.0, 1.0)
    if factor == "uv":
        return min(weather.uv_index / 11.0, 1.0)
    if factor == "pressure":
        return 0.0  # carried in the data model, no known dose-response mapping
    raise UnknownFactor(factor)


class HeuristicVariant(str, Enum):
    """Which factor subset enters the risk score."""

    distance_only = "distance_only"
    traffic_only = "traffic_only"
    weather_only = "weather_only"
    combined = "combined"


VARIANT_FACTORS: dict[HeuristicVariant, tuple[str, ...]] = {
    HeuristicVariant.distance_only: (),
    HeuristicVariant.traffic_only: ("traffic",),
    HeuristicVariant.weather_only: WEATHER_FACTORS,
    HeuristicVariant.combined: FACTORS,
}


@dataclass(frozen=True)
class RiskBreakdown:
    """Post-weighting contribution of each factor, plus their sum."""

    contributions: dict[str, float]
    total: float


def environmental_risk(
    edge: Edge,
    t: float,
    weights: SensitivityWeights,
    timeline: EnvTimeline,
    variant: HeuristicVariant = HeuristicVariant.combined,
) -> RiskBreakdown:
    """Weighted risk score for traversing an edge at time t, in [0, 1].

    Weights outside the variant's factor subset are dropped without
    renormalizing, so variant totals are comparable as partial sums of the
    combined score."""
    weather, traffic = timeline.lookup(edge.zone, t)
    contributions: dict[str, float] = {}
    total = 0.0
    for factor in VARIANT_FACTORS[variant]:
        w = getattr(weights, factor)
        c = w * factor_risk(factor, weather, traffic)
        contributions[factor] = c
        total += c
    return RiskBreakdown(contributions=contributions, total=total)
