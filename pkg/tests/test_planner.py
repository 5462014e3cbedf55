import dataclasses

import helpers
import pytest
from airpath.errors import InvalidParams, UnknownNode
from airpath.planner import (
    MODEL_ROWS,
    Algorithm,
    NoRoute,
    RouteRequest,
    RouteResult,
    compare_variants,
    edge_cost,
    plan_route,
)
from airpath.risk import (
    DEFAULT_RISK_CONFIG,
    FACTORS,
    HeuristicVariant,
    derive_weights,
)

AQI_ONLY = DEFAULT_RISK_CONFIG.with_base_weights(
    {f: (1.0 if f == "aqi" else 0.0) for f in FACTORS}
)

SEEDS = range(60)


def request(origin="A", dest="D", **kw):
    kw.setdefault("profile", helpers.NEUTRAL)
    return RouteRequest(origin=origin, dest=dest, **kw)


def test_edge_cost_worked_examples():
    from airpath.graph import Edge

    e = Edge("A", "B", 100.0, 10.0, "z")
    weights = derive_weights(helpers.NEUTRAL, AQI_ONLY)

    calm = helpers.one_zone_timeline()
    assert edge_cost(e, 0.0, weights, calm, 0.0, HeuristicVariant.combined) == 100.0

    # risk 1.0 at alpha 1: cost doubles
    worst = helpers.one_zone_timeline(
        dataclasses.replace(helpers.CALM_WEATHER, aqi=300.0)
    )
    assert edge_cost(e, 0.0, weights, worst, 1.0, HeuristicVariant.combined) == 200.0

    # risk 0.7 at alpha 2: 100 * (1 + 1.4)
    mid = helpers.one_zone_timeline(
        dataclasses.replace(helpers.CALM_WEATHER, aqi=150.0)
    )
    cost = edge_cost(e, 0.0, weights, mid, 2.0, HeuristicVariant.combined)
    assert cost == pytest.approx(240.0, abs=1e-9)


def test_alpha_zero_ignores_pollution():
    res = plan_route(request(alpha=0.0), helpers.diamond_scenario())
    assert isinstance(res, RouteResult)
    assert res.path.nodes == ("A", "C", "D")  # dirty but shorter
    assert res.total_distance_m == 150.0
    assert res.total_cost == 150.0
    assert res.total_risk_cost == 0.0


def test_high_alpha_takes_the_clean_detour():
    res = plan_route(request(alpha=10.0), helpers.diamond_scenario())
    assert res.path.nodes == ("A", "B", "D")
    assert res.total_distance_m == 200.0
    assert res.total_cost == 200.0  # clean zone carries zero risk


def test_dirty_cost_under_aqi_only_weights():
    # with all weight on aqi the dirty arm risk is 1.0: 150 * (1 + 10) = 1650
    res = plan_route(
        request(alpha=10.0, variant=HeuristicVariant.combined),
        helpers.diamond_scenario(),
        risk_config=AQI_ONLY,
    )
    assert res.path.nodes == ("A", "B", "D")
    dirty = plan_route(
        request(origin="A", dest="D", alpha=10.0), helpers.diamond_scenario(),
        risk_config=AQI_ONLY,
    )
    # force the dirty arm by querying its midpoint
    leg1 = plan_route(request(dest="C", alpha=10.0), helpers.diamond_scenario(),
                      risk_config=AQI_ONLY)
    leg2 = plan_route(request(origin="C", dest="D", alpha=10.0),
                      helpers.diamond_scenario(), risk_config=AQI_ONLY)
    assert leg1.total_cost + leg2.total_cost == pytest.approx(1650.0, abs=1e-9)
    assert dirty.total_cost == 200.0


def test_unreachable_is_a_value_not_an_error():
    res = plan_route(request(dest="E"), helpers.diamond_scenario())
    assert isinstance(res, NoRoute)
    assert res.origin == "A"
    assert res.dest == "E"
    assert res.nodes_expanded > 0


def test_unknown_nodes_raise():
    with pytest.raises(UnknownNode):
        plan_route(request(origin="nope"), helpers.diamond_scenario())
    with pytest.raises(UnknownNode):
        plan_route(request(dest="nope"), helpers.diamond_scenario())


def test_bad_params_rejected_at_request_construction():
    for alpha in (-1.0, float("nan"), float("inf")):
        with pytest.raises(InvalidParams):
            request(alpha=alpha)
    with pytest.raises(InvalidParams):
        request(depart_t=float("nan"))


def test_total_cost_identity():
    for seed in SEEDS:
        scenario, profile, alpha, variant, origin, dest, depart_t = (
            helpers.random_small_instance(seed)
        )
        res = plan_route(
            RouteRequest(origin, dest, profile, depart_t, alpha, variant),
            scenario,
        )
        if isinstance(res, NoRoute):
            continue
        assert res.total_cost == pytest.approx(
            res.total_distance_m + res.total_risk_cost, abs=1e-9
        )
        assert res.edges_count == len(res.path.edges) == len(res.per_edge)
        assert res.total_cost >= res.total_distance_m
        # per-edge costs sum to the total
        assert sum(r.cost for r in res.per_edge) == pytest.approx(
            res.total_cost, abs=1e-9
        )


def test_alpha_zero_reduces_to_distance():
    for seed in SEEDS:
        scenario, profile, _, variant, origin, dest, depart_t = (
            helpers.random_small_instance(seed)
        )
        res = plan_route(
            RouteRequest(origin, dest, profile, depart_t, 0.0, variant), scenario
        )
        if isinstance(res, NoRoute):
            continue
        assert res.total_cost == res.total_distance_m  # exact, no tolerance


def test_astar_equals_dijkstra_on_random_instances():
    for seed in SEEDS:
        scenario, profile, alpha, variant, origin, dest, depart_t = (
            helpers.random_small_instance(seed)
        )
        a = plan_route(
            RouteRequest(origin, dest, profile, depart_t, alpha, variant,
                         Algorithm.astar),
            scenario,
        )
        d = plan_route(
            RouteRequest(origin, dest, profile, depart_t, alpha, variant,
                         Algorithm.dijkstra),
            scenario,
        )
        assert isinstance(a, NoRoute) == isinstance(d, NoRoute)
        if isinstance(a, NoRoute):
            continue
        assert a.total_cost == pytest.approx(d.total_cost, abs=1e-9)
        assert a.nodes_expanded <= d.nodes_expanded


def test_matches_brute_force_cost():
    for seed in range(40):
        scenario, profile, alpha, variant, origin, dest, depart_t = (
            helpers.random_small_instance(seed)
        )
        cost_fn = helpers.instance_cost_fn(scenario, profile, alpha, variant, depart_t)
        oracle = helpers.brute_force_min_cost(scenario.graph, cost_fn, origin, dest)
        res = plan_route(
            RouteRequest(origin, dest, profile, depart_t, alpha, variant), scenario
        )
        if oracle is None:
            assert isinstance(res, NoRoute)
        else:
            assert res.total_cost == pytest.approx(oracle, abs=1e-9)


def test_raising_alpha_never_raises_exposure():
    # more risk aversion can only shift routes toward lower-risk ground
    for seed in range(30):
        scenario, profile, _, _, origin, dest, depart_t = (
            helpers.random_small_instance(seed)
        )
        prev_risk = None
        for alpha in (0.0, 0.5, 1.0, 2.0, 5.0):
            res = plan_route(
                RouteRequest(origin, dest, profile, depart_t, alpha),
                scenario,
            )
            if isinstance(res, NoRoute):
                prev_risk = None
                break
            # risk per meter-independent comparison: unweighted risk integral
            risk_integral = sum(
                r.edge.length_m * r.risk.total for r in res.per_edge
            )
            if prev_risk is not None:
                assert risk_integral <= prev_risk + 1e-9
            prev_risk = risk_integral


def test_travel_time_slows_with_traffic():
    calm = helpers.diamond_scenario()
    res = plan_route(request(alpha=0.0), calm)
    # dirty arm, no traffic: 150 m at 10 m/s
    assert res.travel_time_s == pytest.approx(15.0, abs=1e-9)

    jammed = dataclasses.replace(helpers.CALM_TRAFFIC, vehicle_volume=100.0)
    frame = calm.timeline.frames[0]
    zones = {z: (w, jammed) for z, (w, _) in frame.zones.items()}
    busy = dataclasses.replace(
        calm,
        timeline=dataclasses.replace(
            calm.timeline, frames=(dataclasses.replace(frame, zones=zones),)
        ),
    )
    res = plan_route(request(alpha=0.0), busy)
    # saturation cuts speed to 40%: 150 / 4
    assert res.travel_time_s == pytest.approx(37.5, abs=1e-9)


def test_depart_time_moves_the_route():
    # frame 1 flips which arm is dirty; departure time decides the winner
    base = helpers.diamond_scenario()
    f0 = base.timeline.frames[0]
    flipped = {}
    dirty_w = f0.zones["dirty"][0]
    clean_w = f0.zones["clean"][0]
    flipped["clean"] = (dirty_w, helpers.CALM_TRAFFIC)
    flipped["dirty"] = (clean_w, helpers.CALM_TRAFFIC)
    timeline = dataclasses.replace(
        base.timeline,
        frames=(f0, dataclasses.replace(f0, timestamp_s=600.0, zones=flipped)),
    )
    scenario = dataclasses.replace(base, timeline=timeline)

    early = plan_route(request(alpha=10.0, depart_t=0.0), scenario)
    late = plan_route(request(alpha=10.0, depart_t=700.0), scenario)
    assert early.path.nodes == ("A", "B", "D")
    assert late.path.nodes == ("A", "C", "D")


def test_report_variant_changes_annotation_not_cost():
    scenario = helpers.diamond_scenario()
    req = request(alpha=0.0, variant=HeuristicVariant.distance_only)
    plain = plan_route(req, scenario)
    annotated = plan_route(req, scenario, report_variant=HeuristicVariant.combined)
    assert annotated.path.nodes == plain.path.nodes
    assert annotated.total_cost == plain.total_cost == 150.0
    # distance-only costing reports zero risk; combined annotation does not
    assert all(r.risk.total == 0.0 for r in plain.per_edge)
    assert sum(r.risk.total for r in annotated.per_edge) > 0.0


def test_family_history_alpha_scale():
    scenario = helpers.diamond_scenario()
    profile = dataclasses.replace(helpers.NEUTRAL, family_history=True)
    # alpha 1 stays on the dirty arm; scaling it up forces the clean one
    plain = plan_route(request(alpha=1.0, profile=profile), scenario)
    assert plain.path.nodes == ("A", "C", "D")
    scaled = plan_route(
        request(alpha=1.0, profile=profile), scenario,
        family_history_alpha_scale=12.0,
    )
    assert scaled.path.nodes == ("A", "B", "D")
    # no family history: the scale knob is inert
    unaffected = plan_route(
        request(alpha=1.0), scenario, family_history_alpha_scale=12.0
    )
    assert unaffected.path.nodes == ("A", "C", "D")


def test_compare_row_order_and_labels():
    rows = compare_variants(request(), helpers.diamond_scenario())
    labels = [model.label for model, _ in rows]
    assert labels == [
        "A* Standard",
        "Dijkstra",
        "Heuristic A* (Distance)",
        "Heuristic A* (Traffic)",
        "Heuristic A* (Weather)",
        "Heuristic A* (Traffic - Weather - Distance)",
    ]
    assert [m.label for m in MODEL_ROWS] == labels


def test_compare_baselines_agree_and_combined_diverges():
    rows = dict(
        (model.label, result)
        for model, result in compare_variants(
            request(alpha=10.0), helpers.diamond_scenario()
        )
    )
    astar_std = rows["A* Standard"]
    dijkstra_row = rows["Dijkstra"]
    assert astar_std.path.nodes == dijkstra_row.path.nodes == ("A", "C", "D")
    assert astar_std.total_cost == dijkstra_row.total_cost == 150.0
    combined = rows["Heuristic A* (Traffic - Weather - Distance)"]
    assert combined.path.nodes == ("A", "B", "D")
    # distance row annotates full risk even though cost ignored it
    distance_row = rows["Heuristic A* (Distance)"]
    assert distance_row.total_cost == 150.0
    assert sum(r.risk.total for r in distance_row.per_edge) > 0.0


def test_compare_ignores_request_variant_and_algorithm():
    req_a = request(alpha=10.0, variant=HeuristicVariant.traffic_only,
                    algorithm=Algorithm.dijkstra)
    req_b = request(alpha=10.0)
    rows_a = compare_variants(req_a, helpers.diamond_scenario())
    rows_b = compare_variants(req_b, helpers.diamond_scenario())
    for (ma, ra), (mb, rb) in zip(rows_a, rows_b):
        assert ma == mb
        assert ra.total_cost == rb.total_cost


def test_identical_zones_make_all_variants_agree():
    # uniform environment: risk shifts every edge cost by the same factor,
    # so the shortest path wins under every model
    scenario, *_ = helpers.random_small_instance(3)
    f0 = scenario.timeline.frames[0]
    shared = f0.zones["za"]
    uniform = dataclasses.replace(
        scenario,
        timeline=dataclasses.replace(
            scenario.timeline,
            frames=tuple(
                dataclasses.replace(f, zones={z: shared for z in f.zones})
                for f in scenario.timeline.frames
            ),
        ),
    )
    ids = sorted(uniform.graph.nodes)
    rows = compare_variants(
        RouteRequest(ids[0], ids[-1], helpers.NEUTRAL, alpha=2.0), uniform
    )
    results = [r for _, r in rows]
    if isinstance(results[0], NoRoute):
        assert all(isinstance(r, NoRoute) for r in results)
    else:
        nodes = results[0].path.nodes
        assert all(r.path.nodes == nodes for r in results)
