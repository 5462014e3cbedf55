"""Shared builders for the test suite: small random instances, a brute-force
shortest-path oracle, and the diamond avoidance fixture."""

from __future__ import annotations

import itertools

from airpath.env import EnvFrame, EnvTimeline, TrafficSample, WeatherSample
from airpath.graph import Edge, Node, RoadGraph
from airpath.planner import edge_cost
from airpath.risk import (
    AsthmaType,
    Gender,
    HeuristicVariant,
    ObesityLevel,
    PatientProfile,
    SmokeExposure,
    StressLevel,
    derive_weights,
)
from airpath.rng import Xoshiro256StarStar
from airpath.scenario import Scenario

CALM_WEATHER = WeatherSample(
    temperature_c=20.0, humidity_pct=40.0, wind_speed_mps=0.0, aqi=0.0,
    pollen_level=0, pressure_hpa=1013.0, rainfall_mm=0.0, uv_index=0.0,
)
CALM_TRAFFIC = TrafficSample(vehicle_volume=0.0, capacity=100.0)

NEUTRAL = PatientProfile(
    asthma_type=AsthmaType.non_allergic,
    stress_level=StressLevel.low,
    smoke_exposure=SmokeExposure.none,
    obesity_level=ObesityLevel.none,
    gender=Gender.other,
    family_history=False,
    plays_sports=False,
)


def all_profiles():
    """Every profile combination (648 of them)."""
    for combo in itertools.product(
        AsthmaType, StressLevel, SmokeExposure, ObesityLevel, Gender,
        (False, True), (False, True),
    ):
        yield PatientProfile(*combo)


def one_zone_timeline(weather=CALM_WEATHER, traffic=CALM_TRAFFIC, zone="z"):
    return EnvTimeline(
        frames=(EnvFrame(timestamp_s=0.0, zones={zone: (weather, traffic)}),),
        frame_interval_s=600.0,
    )


def diamond_scenario(dirty_aqi=300.0):
    """Clean 200 m arm (A->B->D) against a dirty 150 m arm (A->C->D), plus a
    disconnected node E. With neutral weights the dirty arm's combined risk
    is 0.3 at aqi 300."""
    nodes = [
        Node("A", 0.0, 0.0), Node("B", 70.0, 60.0), Node("C", 70.0, 0.0),
        Node("D", 140.0, 0.0), Node("E", 300.0, 0.0),
    ]

    def both(a, b, length, zone):
        return [Edge(a, b, length, 10.0, zone), Edge(b, a, length, 10.0, zone)]

    edges = (both("A", "B", 100.0, "clean") + both("B", "D", 100.0, "clean")
             + both("A", "C", 75.0, "dirty") + both("C", "D", 75.0, "dirty"))
    dirty = WeatherSample(
        temperature_c=20.0, humidity_pct=40.0, wind_speed_mps=0.0, aqi=dirty_aqi,
        pollen_level=0, pressure_hpa=1013.0, rainfall_mm=0.0, uv_index=0.0,
    )
    frame = EnvFrame(0.0, {"clean": (CALM_WEATHER, CALM_TRAFFIC),
                           "dirty": (dirty, CALM_TRAFFIC)})
    return Scenario(
        name="diamond",
        graph=RoadGraph.build(nodes, edges),
        zone_grid={"clean": (0.0, 20.0, 140.0, 80.0),
                   "dirty": (0.0, -20.0, 140.0, 20.0)},
        timeline=EnvTimeline((frame,), 600.0),
    )


def random_weather(rng: Xoshiro256StarStar) -> WeatherSample:
    return WeatherSample(
        temperature_c=rng.uniform(-10.0, 45.0),
        humidity_pct=rng.uniform(0.0, 100.0),
        wind_speed_mps=rng.uniform(0.0, 20.0),
        aqi=rng.uniform(0.0, 350.0),
        pollen_level=rng.randint(0, 5),
        pressure_hpa=rng.uniform(950.0, 1050.0),
        rainfall_mm=rng.uniform(0.0, 30.0),
        uv_index=rng.uniform(0.0, 14.0),
    )


def random_traffic(rng: Xoshiro256StarStar) -> TrafficSample:
    return TrafficSample(
        vehicle_volume=rng.uniform(0.0, 200.0),
        capacity=rng.uniform(50.0, 150.0),
    )


def random_profile(rng: Xoshiro256StarStar) -> PatientProfile:
    pick = lambda options: list(options)[rng.below(len(list(options)))]
    return PatientProfile(
        asthma_type=pick(AsthmaType),
        stress_level=pick(StressLevel),
        smoke_exposure=pick(SmokeExposure),
        obesity_level=pick(ObesityLevel),
        gender=pick(Gender),
        family_history=rng.random() < 0.5,
        plays_sports=rng.random() < 0.5,
    )


def random_small_instance(seed: int):
    """Random graph with <= 10 nodes plus a valid random environment and a
    random query; built for brute-force cross-checks."""
    rng = Xoshiro256StarStar(seed)
    n = rng.randint(2, 10)
    nodes = [
        Node(f"v{i}", rng.uniform(0.0, 1000.0), rng.uniform(0.0, 1000.0))
        for i in range(n)
    ]
    zone_ids = ("za", "zb", "zc")
    edges = []
    for i in range(n):
        for j in range(n):
            if i == j or rng.random() >= 0.3:
                continue
            a, b = nodes[i], nodes[j]
            straight = ((a.x - b.x) ** 2 + (a.y - b.y) ** 2) ** 0.5
            edges.append(Edge(
                src=a.id, dst=b.id,
                length_m=straight * rng.uniform(1.0, 1.6) + 1.0,
                base_speed_mps=rng.uniform(5.0, 20.0),
                zone=zone_ids[rng.below(3)],
            ))
    graph = RoadGraph.build(nodes, edges)

    frames = []
    frame_count = rng.randint(1, 3)
    for f in range(frame_count):
        frames.append(EnvFrame(
            timestamp_s=f * 600.0,
            zones={z: (random_weather(rng), random_traffic(rng)) for z in zone_ids},
        ))
    scenario = Scenario(
        name=f"rand{seed}",
        graph=graph,
        zone_grid={z: (0.0, 0.0, 1000.0, 1000.0) for z in zone_ids},
        timeline=EnvTimeline(tuple(frames), 600.0),
    )

    profile = random_profile(rng)
    alpha = (0.0, 0.3, 1.0, 2.5, 7.0)[rng.below(5)]
    variant = list(HeuristicVariant)[rng.below(4)]
    origin = nodes[rng.below(n)].id
    dest = nodes[rng.below(n)].id
    while dest == origin and n > 1:
        dest = nodes[rng.below(n)].id
    depart_t = rng.uniform(0.0, 1800.0)
    return scenario, profile, alpha, variant, origin, dest, depart_t


def brute_force_min_cost(graph: RoadGraph, cost_fn, origin: str, dest: str):
    """Minimum cost over exhaustive enumeration of simple paths, or None."""
    best = None

    def dfs(node: str, visited: set, acc: float) -> None:
        nonlocal best
        if node == dest:
            if best is None or acc < best:
                best = acc
            return
        for e in graph.adjacency[node]:
            if e.dst in visited:
                continue
            visited.add(e.dst)
            dfs(e.dst, visited, acc + cost_fn(e))
            visited.remove(e.dst)

    dfs(origin, {origin}, 0.0)
    return best


def instance_cost_fn(scenario, profile, alpha, variant, depart_t):
    weights = derive_weights(profile)
    return lambda e: edge_cost(e, depart_t, weights, scenario.timeline, alpha, variant)
