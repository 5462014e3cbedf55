import dataclasses

import helpers
import pytest
from airpath.errors import ProfileError, UnknownFactor
from airpath.graph import Edge
from airpath.risk import (
    DEFAULT_RISK_CONFIG,
    FACTORS,
    AsthmaType,
    HeuristicVariant,
    ObesityLevel,
    SmokeExposure,
    StressLevel,
    derive_weights,
    environmental_risk,
    factor_risk,
    parse_profile,
    profile_to_doc,
)
from airpath.rng import Xoshiro256StarStar

EDGE = Edge("A", "B", 100.0, 10.0, "z")

BASE = dict(DEFAULT_RISK_CONFIG.base_weights)


def risk_at(weather, traffic=helpers.CALM_TRAFFIC, profile=helpers.NEUTRAL,
            variant=HeuristicVariant.combined):
    tl = helpers.one_zone_timeline(weather, traffic)
    return environmental_risk(EDGE, 0.0, derive_weights(profile), tl, variant)


def test_base_weights_sum_to_one():
    assert sum(BASE.values()) == 1.0


def test_neutral_profile_keeps_base_weights():
    w = derive_weights(helpers.NEUTRAL).as_dict()
    for factor, expected in BASE.items():
        assert w[factor] == pytest.approx(expected, abs=1e-12)


def test_family_history_alone_changes_nothing():
    # uniform scaling cancels in the renormalization (up to rounding)
    with_history = derive_weights(
        dataclasses.replace(helpers.NEUTRAL, family_history=True)
    ).as_dict()
    plain = derive_weights(helpers.NEUTRAL).as_dict()
    for factor in plain:
        assert with_history[factor] == pytest.approx(plain[factor], abs=1e-12)


def test_allergic_boosts_pollen_and_squeezes_the_rest():
    allergic = dataclasses.replace(helpers.NEUTRAL, asthma_type=AsthmaType.allergic)
    w = derive_weights(allergic).as_dict()
    base = derive_weights(helpers.NEUTRAL).as_dict()
    assert w["pollen"] > base["pollen"]
    assert w["aqi"] < base["aqi"]
    # doubled pollen before renormalizing: 0.30 / 1.15
    assert w["pollen"] == pytest.approx(0.30 / 1.15, abs=1e-12)


def test_modifier_directions():
    cases = [
        ({"smoke_exposure": SmokeExposure.smoker}, "aqi"),
        ({"smoke_exposure": SmokeExposure.secondhand}, "aqi"),
        ({"stress_level": StressLevel.high}, "traffic"),
        ({"stress_level": StressLevel.medium}, "traffic"),
        ({"plays_sports": True}, "temperature"),
        ({"obesity_level": ObesityLevel.high}, "humidity"),
        ({"obesity_level": ObesityLevel.moderate}, "humidity"),
    ]
    base = derive_weights(helpers.NEUTRAL).as_dict()
    for overrides, boosted in cases:
        profile = dataclasses.replace(helpers.NEUTRAL, **overrides)
        w = derive_weights(profile).as_dict()
        assert w[boosted] > base[boosted], overrides


def test_smoker_outweighs_secondhand():
    smoker = dataclasses.replace(helpers.NEUTRAL, smoke_exposure=SmokeExposure.smoker)
    secondhand = dataclasses.replace(
        helpers.NEUTRAL, smoke_exposure=SmokeExposure.secondhand
    )
    assert derive_weights(smoker).aqi > derive_weights(secondhand).aqi


def test_every_profile_sums_to_one():
    count = 0
    for profile in helpers.all_profiles():
        w = derive_weights(profile)
        total = sum(w.as_dict().values())
        assert abs(total - 1.0) <= 1e-12, profile
        assert all(v >= 0 for v in w.as_dict().values())
        count += 1
    assert count == 648


def test_aqi_curve_anchor_points():
    pairs = [(0.0, 0.0), (50.0, 0.2), (100.0, 0.4), (150.0, 0.7),
             (200.0, 0.9), (300.0, 1.0), (400.0, 1.0), (-10.0, 0.0)]
    for aqi, expected in pairs:
        w = dataclasses.replace(helpers.CALM_WEATHER, aqi=aqi)
        assert factor_risk("aqi", w, helpers.CALM_TRAFFIC) == pytest.approx(expected)


def test_aqi_interpolates_between_anchors():
    w = dataclasses.replace(helpers.CALM_WEATHER, aqi=75.0)
    assert factor_risk("aqi", w, helpers.CALM_TRAFFIC) == pytest.approx(0.3)


def test_pollen_scale():
    for level in range(6):
        w = dataclasses.replace(helpers.CALM_WEATHER, pollen_level=level)
        assert factor_risk("pollen", w, helpers.CALM_TRAFFIC) == level / 5.0


def test_temperature_comfort_band():
    cases = [(20.0, 0.0), (15.0, 0.0), (25.0, 0.0), (-5.0, 1.0), (40.0, 1.0),
             (5.0, 0.5), (32.5, 0.5), (-20.0, 1.0), (50.0, 1.0)]
    for temp, expected in cases:
        w = dataclasses.replace(helpers.CALM_WEATHER, temperature_c=temp)
        assert factor_risk("temperature", w, helpers.CALM_TRAFFIC) == pytest.approx(expected)


def test_humidity_comfort_band():
    cases = [(40.0, 0.0), (30.0, 0.0), (50.0, 0.0), (0.0, 1.0), (100.0, 1.0),
             (15.0, 0.5), (75.0, 0.5)]
    for h, expected in cases:
        w = dataclasses.replace(helpers.CALM_WEATHER, humidity_pct=h)
        assert factor_risk("humidity", w, helpers.CALM_TRAFFIC) == pytest.approx(expected)


def test_traffic_saturation_ratio():
    t = dataclasses.replace(helpers.CALM_TRAFFIC, vehicle_volume=50.0)
    assert factor_risk("traffic", helpers.CALM_WEATHER, t) == 0.5
    t = dataclasses.replace(helpers.CALM_TRAFFIC, vehicle_volume=500.0)
    assert factor_risk("traffic", helpers.CALM_WEATHER, t) == 1.0


def test_wind_threshold():
    cases = [(0.0, 0.0), (8.0, 0.0), (11.5, 0.5), (15.0, 1.0), (30.0, 1.0)]
    for speed, expected in cases:
        w = dataclasses.replace(helpers.CALM_WEATHER, wind_speed_mps=speed)
        assert factor_risk("wind", w, helpers.CALM_TRAFFIC) == pytest.approx(expected)


def test_rainfall_and_uv_scales():
    w = dataclasses.replace(helpers.CALM_WEATHER, rainfall_mm=10.0, uv_index=5.5)
    assert factor_risk("rainfall", w, helpers.CALM_TRAFFIC) == 0.5
    assert factor_risk("uv", w, helpers.CALM_TRAFFIC) == 0.5
    w = dataclasses.replace(helpers.CALM_WEATHER, rainfall_mm=100.0)
    assert factor_risk("rainfall", w, helpers.CALM_TRAFFIC) == 1.0


def test_pressure_carries_no_risk():
    w = dataclasses.replace(helpers.CALM_WEATHER, pressure_hpa=950.0)
    assert factor_risk("pressure", w, helpers.CALM_TRAFFIC) == 0.0


def test_unknown_factor_raises():
    with pytest.raises(UnknownFactor):
        factor_risk("ozone", helpers.CALM_WEATHER, helpers.CALM_TRAFFIC)


def test_factor_risks_stay_in_unit_interval():
    rng = Xoshiro256StarStar(17)
    for _ in range(300):
        weather = helpers.random_weather(rng)
        traffic = helpers.random_traffic(rng)
        for factor in FACTORS:
            r = factor_risk(factor, weather, traffic)
            assert 0.0 <= r <= 1.0, factor


def test_combined_risk_bounded_by_unit_interval():
    rng = Xoshiro256StarStar(23)
    for _ in range(200):
        weather = helpers.random_weather(rng)
        traffic = helpers.random_traffic(rng)
        profile = helpers.random_profile(rng)
        r = risk_at(weather, traffic, profile)
        assert 0.0 <= r.total <= 1.0


def test_weighted_aqi_example():
    only_aqi = DEFAULT_RISK_CONFIG.with_base_weights(
        {f: (1.0 if f == "aqi" else 0.0) for f in FACTORS}
    )
    weights = derive_weights(helpers.NEUTRAL, only_aqi)
    weather = dataclasses.replace(helpers.CALM_WEATHER, aqi=150.0)
    tl = helpers.one_zone_timeline(weather)
    r = environmental_risk(EDGE, 0.0, weights, tl)
    assert r.total == pytest.approx(0.7, abs=1e-12)


def test_variant_subsets_partition_combined():
    weather = dataclasses.replace(
        helpers.CALM_WEATHER, aqi=180.0, pollen_level=3, rainfall_mm=8.0
    )
    traffic = dataclasses.replace(helpers.CALM_TRAFFIC, vehicle_volume=60.0)
    d = risk_at(weather, traffic, variant=HeuristicVariant.distance_only)
    t = risk_at(weather, traffic, variant=HeuristicVariant.traffic_only)
    w = risk_at(weather, traffic, variant=HeuristicVariant.weather_only)
    c = risk_at(weather, traffic, variant=HeuristicVariant.combined)
    assert d.total == 0.0
    assert d.contributions == {}
    assert t.total > 0.0
    assert "traffic" in t.contributions and len(t.contributions) == 1
    assert c.total == pytest.approx(t.total + w.total, abs=1e-12)
    assert c.total >= t.total
    assert c.total >= w.total


def test_worst_case_everything_saturated():
    weather = dataclasses.replace(
        helpers.CALM_WEATHER, aqi=300.0, pollen_level=5, temperature_c=45.0,
        humidity_pct=100.0, rainfall_mm=25.0, wind_speed_mps=20.0, uv_index=11.0,
    )
    traffic = dataclasses.replace(helpers.CALM_TRAFFIC, vehicle_volume=200.0)
    r = risk_at(weather, traffic)
    assert r.total == pytest.approx(1.0, abs=1e-12)


def test_monotone_in_aqi_pollen_volume_rain():
    rng = Xoshiro256StarStar(31)
    for _ in range(150):
        weather = helpers.random_weather(rng)
        traffic = helpers.random_traffic(rng)
        profile = helpers.random_profile(rng)
        base = risk_at(weather, traffic, profile).total
        worse_weather = dataclasses.replace(
            weather,
            aqi=weather.aqi + rng.uniform(1.0, 100.0),
            pollen_level=min(5, weather.pollen_level + 1),
            rainfall_mm=weather.rainfall_mm + rng.uniform(0.5, 10.0),
        )
        worse_traffic = dataclasses.replace(
            traffic, vehicle_volume=traffic.vehicle_volume + rng.uniform(1.0, 80.0)
        )
        assert risk_at(worse_weather, worse_traffic, profile).total >= base


def test_parse_profile_round_trip():
    for profile in (helpers.NEUTRAL,):
        assert parse_profile(profile_to_doc(profile)) == profile
    doc = {
        "asthma_type": "allergic", "stress_level": "high",
        "smoke_exposure": "secondhand", "obesity_level": "moderate",
        "gender": "female", "family_history": True, "plays_sports": True,
    }
    assert profile_to_doc(parse_profile(doc)) == doc


def test_parse_profile_missing_field():
    doc = profile_to_doc(helpers.NEUTRAL)
    del doc["gender"]
    with pytest.raises(ProfileError) as err:
        parse_profile(doc)
    assert err.value.field == "gender"


def test_parse_profile_unknown_enum_value():
    doc = profile_to_doc(helpers.NEUTRAL)
    doc["stress_level"] = "extreme"
    with pytest.raises(ProfileError) as err:
        parse_profile(doc)
    assert err.value.field == "stress_level"
    assert "extreme" in str(err.value)
    assert "low" in str(err.value)  # allowed values listed


def test_parse_profile_boolean_type_enforced():
    doc = profile_to_doc(helpers.NEUTRAL)
    doc["family_history"] = "yes"
    with pytest.raises(ProfileError):
        parse_profile(doc)


def test_with_base_weights_override_and_unknown_key():
    cfg = DEFAULT_RISK_CONFIG.with_base_weights({"uv": 0.05})
    assert dict(cfg.base_weights)["uv"] == 0.05
    assert dict(DEFAULT_RISK_CONFIG.base_weights)["uv"] == 0.0  # original untouched
    with pytest.raises(UnknownFactor):
        DEFAULT_RISK_CONFIG.with_base_weights({"noise": 0.1})


def test_zero_weight_table_rejected():
    cfg = DEFAULT_RISK_CONFIG.with_base_weights({f: 0.0 for f in FACTORS})
    with pytest.raises(ValueError):
        derive_weights(helpers.NEUTRAL, cfg)
