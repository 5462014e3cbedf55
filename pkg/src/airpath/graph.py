"""Road graph representation and shortest-path search.

The graph is immutable after construction and both searches are pure, so a
single graph can serve concurrent queries. Costs are supplied per query as a
callable over edges; the search only assumes they are finite and >= 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from heapq import heappop, heappush
from typing import Callable, Iterable

from .errors import GraphValidationError, HeuristicNegative, NegativeCost, UnknownNode

EARTH_RADIUS_M = 6371008.8

# Edge lengths may undershoot the straight-line distance by at most this
# relative slack before validation rejects them (keeps the straight-line
# heuristic admissible while tolerating rounded coordinates).
LENGTH_SLACK = 1e-3


class CoordSystem(str, Enum):
    planar = "planar"
    geodetic = "geodetic"


@dataclass(frozen=True)
class Node:
    id: str
    x: float  # meters east (planar) or longitude in degrees (geodetic)
    y: float  # meters north (planar) or latitude in degrees (geodetic)
    coord_system: CoordSystem = CoordSystem.planar


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    length_m: float
    base_speed_mps: float
    zone: str


@dataclass(frozen=True)
class Path:
    edges: tuple[Edge, ...]
    nodes: tuple[str, ...]

    def __post_init__(self):
        if len(self.nodes) != len(self.edges) + 1:
            raise ValueError("node sequence must be one longer than edge sequence")


@dataclass(frozen=True)
class SearchResult:
    """Outcome of one search. path is None when dest is unreachable."""

    path: Path | None
    cost: float
    nodes_expanded: int

    @property
    def reachable(self) -> bool:
        return self.path is not None


@dataclass(frozen=True)
class RoadGraph:
    nodes: dict[str, Node]
    edges: tuple[Edge, ...]
    adjacency: dict[str, tuple[Edge, ...]] = field(compare=False)
    coord_system: CoordSystem = CoordSystem.planar

    @classmethod
    def build(cls, nodes: Iterable[Node], edges: Iterable[Edge]) -> RoadGraph:
        """Validate and assemble a graph; raises GraphValidationError listing
        every violation (duplicate ids, dangling endpoints, self-loops, bad
        speeds, lengths shorter than the straight line between endpoints)."""
        node_list = list(nodes)
        edge_list = list(edges)
        violations: list[str] = []

        by_id: dict[str, Node] = {}
        for n in node_list:
            if n.id in by_id:
                violations.append(f"duplicate node id {n.id!r}")
            by_id[n.id] = n

        systems = {n.coord_system for n in node_list}
        if len(systems) > 1:
            violations.append(f"mixed coordinate systems: {sorted(s.value for s in systems)}")
        coord_system = node_list[0].coord_system if node_list else CoordSystem.planar

        for i, e in enumerate(edge_list):
            tag = f"edge[{i}] {e.src}->{e.dst}"
            if e.src not in by_id:
                violations.append(f"{tag}: source not in graph")
                continue
            if e.dst not in by_id:
                violations.append(f"{tag}: destination not in graph")
                continue
            if e.src == e.dst:
                violations.append(f"{tag}: self-loop")
            if not (e.length_m > 0) or not math.isfinite(e.length_m):
                violations.append(f"{tag}: length_m must be finite and > 0, got {e.length_m}")
                continue
            if not (0 < e.base_speed_mps <= 70):
                violations.append(
                    f"{tag}: base_speed_mps must be in (0, 70], got {e.base_speed_mps}"
                )
            if len(systems) == 1:
                straight = _point_distance(by_id[e.src], by_id[e.dst], coord_system)
                if e.length_m < straight * (1 - LENGTH_SLACK):
                    violations.append(
                        f"{tag}: length_m {e.length_m} shorter than straight-line "
                        f"distance {straight:.3f}"
                    )

        if violations:
            raise GraphValidationError(violations)

        adj: dict[str, list[Edge]] = {nid: [] for nid in by_id}
        for e in edge_list:
            adj[e.src].append(e)
        return cls(
            nodes=by_id,
            edges=tuple(edge_list),
            adjacency={nid: tuple(out) for nid, out in adj.items()},
            coord_system=coord_system,
        )

    def node(self, node_id: str) -> Node:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise UnknownNode(node_id) from None


def _point_distance(a: Node, b: Node, system: CoordSystem) -> float:
    if system is CoordSystem.planar:
        return math.hypot(a.x - b.x, a.y - b.y)
    return _haversine_m(a.y, a.x, b.y, b.x)


def _haversine_m(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    p1, p2 = math.radians(lat1), math.radians(lat2)
    dp = p2 - p1
    dl = math.radians(lon2 - lon1)
    h = math.sin(dp / 2) ** 2 + math.cos(p1) * math.cos(p2) * math.sin(dl / 2) ** 2
    return 2 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(h)))


def straight_line_lower_bound(graph: RoadGraph, node_id: str, dest_id: str) -> float:
    """Distance no path between the two nodes can beat: Euclidean for planar
    graphs, great-circle for geodetic ones. Admissible as an A* heuristic
    because every edge is at least as long as its endpoints' separation."""
    a = graph.node(node_id)
    b = graph.node(dest_id)
    return _point_distance(a, b, graph.coord_system)


CostFn = Callable[[Edge], float]
HeuristicFn = Callable[[str], float]


def _edge_cost(cost_fn: CostFn, edge: Edge) -> float:
    c = cost_fn(edge)
    if not (c >= 0.0):  # catches negatives and NaN
        raise NegativeCost(f"cost function returned {c!r} for edge {edge.src}->{edge.dst}")
    return c


def dijkstra(graph: RoadGraph, cost_fn: CostFn, origin: str, dest: str) -> SearchResult:
    """Minimal-total-cost path from origin to dest.

    Ties on the frontier break in insertion order (stable FIFO), so results
    are deterministic across runs."""
    return _search(graph, cost_fn, None, origin, dest)


def astar(
    graph: RoadGraph,
    cost_fn: CostFn,
    heuristic: HeuristicFn,
    origin: str,
    dest: str,
) -> SearchResult:
    """A* over the same cost model as dijkstra.

    With an admissible heuristic (never overestimating the remaining cost,
    heuristic(dest) == 0) the total cost matches dijkstra's on every input;
    only the number of expansions differs."""
    return _search(graph, cost_fn, heuristic, origin, dest)


def _search(
    graph: RoadGraph,
    cost_fn: CostFn,
    heuristic: HeuristicFn | None,
    origin: str,
    dest: str,
) -> SearchResult:
    graph.node(origin)
    graph.node(dest)

    h_cache: dict[str, float] = {}

    def h(node_id: str) -> float:
        if heuristic is None:
            return 0.0
        v = h_cache.get(node_id)
        if v is None:
            v = heuristic(node_id)
            if v < 0:
                raise HeuristicNegative(f"heuristic returned {v!r} for node {node_id!r}")
            h_cache[node_id] = v
        return v

    adjacency = graph.adjacency
    # heap entries: (g + h, insertion seq, g, node). seq enforces FIFO on
    # ties; superseded entries are detected on pop by comparing g against the
    # best known, which also lets an admissible-but-inconsistent heuristic
    # reopen nodes instead of returning a suboptimal path.
    frontier: list[tuple[float, int, float, str]] = [(h(origin), 0, 0.0, origin)]
    seq = 1
    best_g: dict[str, float] = {origin: 0.0}
    came_from: dict[str, tuple[str, Edge]] = {}
    expanded = 0

    while frontier:
        _, _, g_current, current = heappop(frontier)
        if g_current > best_g[current]:
            continue
        expanded += 1

        if current == dest:
            return SearchResult(
                path=_reconstruct(origin, dest, came_from),
                cost=g_current,
                nodes_expanded=expanded,
            )

        for edge in adjacency[current]:
            neighbor = edge.dst
            g_new = g_current + _edge_cost(cost_fn, edge)
            g_old = best_g.get(neighbor)
            if g_old is None or g_new < g_old:
                best_g[neighbor] = g_new
                came_from[neighbor] = (current, edge)
                heappush(frontier, (g_new + h(neighbor), seq, g_new, neighbor))
                seq += 1

    return SearchResult(path=None, cost=math.inf, nodes_expanded=expanded)


def _reconstruct(origin: str, dest: str, came_from: dict[str, tuple[str, Edge]]) -> Path:
    edges: list[Edge] = []
    nodes: list[str] = [dest]
    current = dest
    while current != origin:
        prev, edge = came_from[current]
        edges.append(edge)
        nodes.append(prev)
        current = prev
    edges.reverse()
    nodes.reverse()
    return Path(edges=tuple(edges), nodes=tuple(nodes))
