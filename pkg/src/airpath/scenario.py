"""Scenario model, synthetic grid generation, and file round-tripping.

A scenario bundles one road graph, a zone layout, and an environmental
timeline. The generator builds planar grid cities with seeded weather and
traffic plus optional pollution/congestion hotspot zones, standing in for a
real traffic simulator. Documents are JSON with fixed key order; every
float is quantized to 9 significant digits on entry to the data model, so
serialization round-trips are byte-identical.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

from .env import (
    DEFAULT_TRAFFIC_CAPACITY,
    EnvFrame,
    EnvTimeline,
    TrafficSample,
    WeatherSample,
    validate_timeline,
)
from .errors import (
    GraphValidationError,
    InvalidParams,
    ScenarioParseError,
    ScenarioValidationError,
)
from .graph import CoordSystem, Edge, Node, RoadGraph
from .rng import Xoshiro256StarStar

DIAGONAL_DENSITY = 0.05
HOTSPOT_AQI_RANGE = (200.0, 300.0)
HOTSPOT_VOLUME_FACTOR = 1.5

PRESETS = ("spring_pollen",)

Bbox = tuple[float, float, float, float]  # min_x, min_y, max_x, max_y


def _q(x: float) -> float:
    """Quantize to 9 significant digits (the serialization precision)."""
    return float(f"{x:.9g}")


@dataclass(frozen=True)
class GeneratorParams:
    rows: int = 10
    cols: int = 10
    cell_m: float = 100.0
    zone_cell: int = 3
    frames: int = 4
    frame_interval_s: float = 600.0
    hotspot_count: int = 1
    seed: int = 0
    preset: str | None = None

    def __post_init__(self) -> None:
        problems = []
        if self.rows < 2 or self.cols < 2:
            problems.append(f"grid must be at least 2x2, got {self.rows}x{self.cols}")
        if not (self.cell_m > 0 and math.isfinite(self.cell_m)):
            problems.append(f"cell_m must be finite and > 0, got {self.cell_m}")
        if self.zone_cell < 1:
            problems.append(f"zone_cell must be >= 1, got {self.zone_cell}")
        if self.frames < 1:
            problems.append(f"frames must be >= 1, got {self.frames}")
        if not (self.frame_interval_s > 0 and math.isfinite(self.frame_interval_s)):
            problems.append(f"frame_interval_s must be finite and > 0, got {self.frame_interval_s}")
        if self.hotspot_count < 0:
            problems.append(f"hotspot_count must be >= 0, got {self.hotspot_count}")
        if not (0 <= self.seed < 2**64):
            problems.append(f"seed must fit in 64 bits, got {self.seed}")
        if self.preset is not None and self.preset not in PRESETS:
            problems.append(f"unknown preset {self.preset!r} (available: {list(PRESETS)})")
        if problems:
            raise InvalidParams("; ".join(problems))


@dataclass(frozen=True)
class Scenario:
    name: str
    graph: RoadGraph
    zone_grid: dict[str, Bbox]
    timeline: EnvTimeline
    seed: int | None = None
    generator: GeneratorParams | None = None


def generate_grid(params: GeneratorParams, name: str | None = None) -> Scenario:
    """Deterministic grid city: rows x cols lattice with bidirectional edges
    of length cell_m, 5% seeded diagonal shortcuts, k x k cell zones, and
    per-frame seeded weather/traffic. Hotspot zones get aqi in [200, 300]
    and traffic volume at or past 1.5x capacity; everywhere else stays well
    below both, so hotspots are identifiable by threshold.
    """
    rng = Xoshiro256StarStar(params.seed)
    rows, cols, cell = params.rows, params.cols, params.cell_m

    zone_span = params.zone_cell * cell
    zone_rows = max(1, math.ceil((rows - 1) / params.zone_cell))
    zone_cols = max(1, math.ceil((cols - 1) / params.zone_cell))

    def zone_of(mx: float, my: float) -> str:
        zc = min(int(mx // zone_span), zone_cols - 1)
        zr = min(int(my // zone_span), zone_rows - 1)
        return f"z{zr}_{zc}"

    nodes = [
        Node(id=f"n{r}_{c}", x=_q(c * cell), y=_q(r * cell))
        for r in range(rows)
        for c in range(cols)
    ]

    edges: list[Edge] = []

    def link(r1: int, c1: int, r2: int, c2: int, length: float) -> None:
        a, b = f"n{r1}_{c1}", f"n{r2}_{c2}"
        mx = (c1 + c2) / 2 * cell
        my = (r1 + r2) / 2 * cell
        zone = zone_of(mx, my)
        speed = _q(rng.uniform(8.0, 15.0))
        ql = _q(length)
        edges.append(Edge(src=a, dst=b, length_m=ql, base_speed_mps=speed, zone=zone))
        edges.append(Edge(src=b, dst=a, length_m=ql, base_speed_mps=speed, zone=zone))

    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                link(r, c, r, c + 1, cell)
            if r + 1 < rows:
                link(r, c, r + 1, c, cell)
    for r in range(rows - 1):
        for c in range(cols - 1):
            if rng.random() < DIAGONAL_DENSITY:
                diag = cell * math.sqrt(2.0)
                if rng.random() < 0.5:
                    link(r, c, r + 1, c + 1, diag)
                else:
                    link(r, c + 1, r + 1, c, diag)

    graph = RoadGraph.build(nodes, edges)

    zone_grid: dict[str, Bbox] = {}
    for zr in range(zone_rows):
        for zc in range(zone_cols):
            zone_grid[f"z{zr}_{zc}"] = (
                _q(zc * zone_span), _q(zr * zone_span),
                _q((zc + 1) * zone_span), _q((zr + 1) * zone_span),
            )

    zone_ids = sorted(zone_grid)
    if params.hotspot_count > len(zone_ids):
        raise InvalidParams(
            f"hotspot_count {params.hotspot_count} exceeds zone count {len(zone_ids)}"
        )
    hotspots = {zone_ids[i] for i in rng.sample_indices(len(zone_ids), params.hotspot_count)}

    spring = params.preset == "spring_pollen"
    frames = []
    for f in range(params.frames):
        zmap: dict[str, tuple[WeatherSample, TrafficSample]] = {}
        for zid in zone_ids:
            hot = zid in hotspots
            weather = WeatherSample(
                temperature_c=_q(rng.uniform(10.0, 35.0)),
                humidity_pct=_q(rng.uniform(20.0, 90.0)),
                wind_speed_mps=_q(rng.uniform(0.0, 12.0)),
                aqi=_q(rng.uniform(*HOTSPOT_AQI_RANGE) if hot else rng.uniform(10.0, 150.0)),
                pollen_level=rng.randint(4, 5) if spring else rng.randint(0, 3),
                pressure_hpa=_q(rng.uniform(985.0, 1035.0)),
                rainfall_mm=_q(rng.uniform(0.0, 12.0)),
                uv_index=_q(rng.uniform(0.0, 11.0)),
            )
            volume = rng.uniform(150.0, 250.0) if hot else rng.uniform(10.0, 90.0)
            traffic = TrafficSample(
                vehicle_volume=_q(volume), capacity=DEFAULT_TRAFFIC_CAPACITY
            )
            zmap[zid] = (weather, traffic)
        frames.append(EnvFrame(timestamp_s=_q(f * params.frame_interval_s), zones=zmap))

    timeline = EnvTimeline(frames=tuple(frames), frame_interval_s=_q(params.frame_interval_s))
    scenario = Scenario(
        name=name or f"grid_{rows}x{cols}_s{params.seed}",
        graph=graph,
        zone_grid=zone_grid,
        timeline=timeline,
        seed=params.seed,
        generator=params,
    )
    problems = _scenario_violations(scenario)
    if problems:  # generator bug if ever hit
        raise ScenarioValidationError(problems)
    return scenario


def _scenario_violations(s: Scenario) -> list[str]:
    out = [str(v) for v in validate_timeline(s.timeline, s.graph)]
    for e in s.graph.edges:
        if e.zone not in s.zone_grid:
            out.append(f"edge {e.src}->{e.dst}: zone {e.zone!r} not in zone_grid")
    for zid, bbox in s.zone_grid.items():
        if len(bbox) != 4 or not all(math.isfinite(v) for v in bbox):
            out.append(f"zone {zid!r}: bbox must be four finite numbers, got {bbox!r}")
        elif not (bbox[0] <= bbox[2] and bbox[1] <= bbox[3]):
            out.append(f"zone {zid!r}: bbox min exceeds max: {bbox!r}")
    return out


# --- document serialization -------------------------------------------------

WEATHER_FIELDS = (
    "temperature_c", "humidity_pct", "wind_speed_mps", "aqi",
    "pollen_level", "pressure_hpa", "rainfall_mm", "uv_index",
)


def save_scenario(scenario: Scenario) -> str:
    """Render the scenario as its canonical JSON text (stable key order,
    2-space indent, trailing newline)."""
    meta: dict = {
        "name": scenario.name,
        "frame_interval_s": scenario.timeline.frame_interval_s,
    }
    if scenario.seed is not None:
        meta["seed"] = scenario.seed
    if scenario.generator is not None:
        gen = asdict(scenario.generator)
        if gen.get("preset") is None:
            del gen["preset"]
        meta["generator"] = gen

    doc = {
        "meta": meta,
        "nodes": [
            {"id": n.id, "x": n.x, "y": n.y, "coord_system": n.coord_system.value}
            for n in scenario.graph.nodes.values()
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
        "zones": [
            {"id": zid, "bbox": list(bbox)} for zid, bbox in scenario.zone_grid.items()
        ],
        "frames": [
            {
                "timestamp_s": fr.timestamp_s,
                "zones": {
                    zid: {
                        "weather": {f: getattr(w, f) for f in WEATHER_FIELDS},
                        "traffic": {"vehicle_volume": t.vehicle_volume, "capacity": t.capacity},
                    }
                    for zid, (w, t) in fr.zones.items()
                },
            }
            for fr in scenario.timeline.frames
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _want(obj: dict, key: str, kinds, where: str, problems: list[str]):
    value = obj.get(key)
    if not isinstance(value, kinds) or isinstance(value, bool):
        problems.append(f"{where}: field {key!r} missing or not of the expected type")
        return None
    return value


def _num(obj: dict, key: str, where: str, problems: list[str]) -> float | None:
    v = _want(obj, key, (int, float), where, problems)
    return None if v is None else _q(float(v))


def load_scenario(document: str, name: str | None = None) -> Scenario:
    """Parse and fully validate a scenario document.

    Raises ScenarioParseError for malformed JSON (with position) and
    ScenarioValidationError with the complete violation list for documents
    that break the data model. Floats are quantized to the 9 significant
    digit storage precision on entry."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as e:
        raise ScenarioParseError(e.msg, line=e.lineno, column=e.colno) from None

    if not isinstance(doc, dict):
        raise ScenarioParseError("top level must be an object")
    problems: list[str] = []
    for key in ("meta", "nodes", "edges", "zones", "frames"):
        if key not in doc:
            problems.append(f"missing top-level key {key!r}")
    if problems:
        raise ScenarioValidationError(problems)

    meta = doc["meta"] if isinstance(doc["meta"], dict) else {}
    if not isinstance(doc["meta"], dict):
        problems.append("meta: must be an object")
    interval = _num(meta, "frame_interval_s", "meta", problems) or 0.0

    nodes: list[Node] = []
    if not isinstance(doc["nodes"], list):
        problems.append("nodes: must be an array")
    else:
        for i, nd in enumerate(doc["nodes"]):
            where = f"nodes[{i}]"
            if not isinstance(nd, dict):
                problems.append(f"{where}: must be an object")
                continue
            nid = _want(nd, "id", str, where, problems)
            x = _num(nd, "x", where, problems)
            y = _num(nd, "y", where, problems)
            system = nd.get("coord_system", "planar")
            if system not in (c.value for c in CoordSystem):
                problems.append(f"{where}: unknown coord_system {system!r}")
                continue
            if None not in (nid, x, y):
                nodes.append(Node(id=nid, x=x, y=y, coord_system=CoordSystem(system)))

    edges: list[Edge] = []
    if not isinstance(doc["edges"], list):
        problems.append("edges: must be an array")
    else:
        for i, ed in enumerate(doc["edges"]):
            where = f"edges[{i}]"
            if not isinstance(ed, dict):
                problems.append(f"{where}: must be an object")
                continue
            src = _want(ed, "from", str, where, problems)
            dst = _want(ed, "to", str, where, problems)
            length = _num(ed, "length_m", where, problems)
            speed = _num(ed, "base_speed_mps", where, problems)
            zone = _want(ed, "zone", str, where, problems)
            if None not in (src, dst, length, speed, zone):
                edges.append(Edge(src=src, dst=dst, length_m=length,
                                  base_speed_mps=speed, zone=zone))

    zone_grid: dict[str, Bbox] = {}
    if not isinstance(doc["zones"], list):
        problems.append("zones: must be an array")
    else:
        for i, zd in enumerate(doc["zones"]):
            where = f"zones[{i}]"
            if not isinstance(zd, dict):
                problems.append(f"{where}: must be an object")
                continue
            zid = _want(zd, "id", str, where, problems)
            bbox = zd.get("bbox")
            if not (isinstance(bbox, list) and len(bbox) == 4
                    and all(isinstance(v, (int, float)) and not isinstance(v, bool)
                            for v in bbox)):
                problems.append(f"{where}: bbox must be [min_x, min_y, max_x, max_y]")
                continue
            if zid is not None:
                if zid in zone_grid:
                    problems.append(f"{where}: duplicate zone id {zid!r}")
                zone_grid[zid] = tuple(_q(float(v)) for v in bbox)

    frames: list[EnvFrame] = []
    if not isinstance(doc["frames"], list):
        problems.append("frames: must be an array")
    else:
        for i, fd in enumerate(doc["frames"]):
            where = f"frames[{i}]"
            if not isinstance(fd, dict):
                problems.append(f"{where}: must be an object")
                continue
            ts = _num(fd, "timestamp_s", where, problems)
            zmap_doc = fd.get("zones")
            if not isinstance(zmap_doc, dict):
                problems.append(f"{where}: field 'zones' missing or not an object")
                continue
            zmap: dict[str, tuple[WeatherSample, TrafficSample]] = {}
            for zid, sample in zmap_doc.items():
                zwhere = f"{where}.zones[{zid!r}]"
                if not isinstance(sample, dict) or not isinstance(sample.get("weather"), dict):
                    problems.append(f"{zwhere}: must contain a 'weather' object")
                    continue
                wd = sample["weather"]
                fields = {f: _num(wd, f, f"{zwhere}.weather", problems) for f in WEATHER_FIELDS}
                td = sample.get("traffic")
                if not isinstance(td, dict):
                    problems.append(f"{zwhere}: must contain a 'traffic' object")
                    continue
                volume = _num(td, "vehicle_volume", f"{zwhere}.traffic", problems)
                capacity = (_num(td, "capacity", f"{zwhere}.traffic", problems)
                            if "capacity" in td else DEFAULT_TRAFFIC_CAPACITY)
                if None in fields.values() or volume is None or capacity is None:
                    continue
                pollen = fields["pollen_level"]
                if pollen is not None and float(pollen).is_integer():
                    fields["pollen_level"] = int(pollen)
                zmap[zid] = (
                    WeatherSample(**fields),
                    TrafficSample(vehicle_volume=volume, capacity=capacity),
                )
            if ts is not None:
                frames.append(EnvFrame(timestamp_s=ts, zones=zmap))

    generator = None
    gen_doc = meta.get("generator")
    if isinstance(gen_doc, dict):
        try:
            generator = GeneratorParams(**gen_doc)
        except (TypeError, InvalidParams) as e:
            problems.append(f"meta.generator: {e}")

    graph = None
    try:
        graph = RoadGraph.build(nodes, edges)
    except GraphValidationError as e:
        problems.extend(e.violations)

    if graph is not None:
        timeline = EnvTimeline(frames=tuple(frames), frame_interval_s=interval)
        seed = meta.get("seed")
        scenario = Scenario(
            name=name or str(meta.get("name", "scenario")),
            graph=graph,
            zone_grid=zone_grid,
            timeline=timeline,
            seed=seed if isinstance(seed, int) and not isinstance(seed, bool) else None,
            generator=generator,
        )
        problems.extend(_scenario_violations(scenario))
        if not problems:
            return scenario
    raise ScenarioValidationError(problems)


def load_scenario_file(path: str) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return load_scenario(fh.read())


def save_scenario_file(scenario: Scenario, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(save_scenario(scenario))
