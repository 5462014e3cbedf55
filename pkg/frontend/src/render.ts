/** Pure geometry and presentation helpers for the SVG map.
 *
 * Scene coordinates are planar with y pointing up; screen space points y
 * down, so the projection flips the vertical axis.
 */

import type { CompareRow, RouteOut, ZoneDigest } from "./api.js";

export interface Transform {
  s: number;
  minX: number;
  maxY: number;
  ox: number;
  oy: number;
}

export interface Point {
  x: number;
  y: number;
}

/** Uniform scale-to-fit with padding; degenerate extents still land inside
 * the viewport instead of dividing by zero. */
export function fitTransform(
  points: Point[],
  width: number,
  height: number,
  pad = 24,
): Transform {
  if (points.length === 0) {
    return { s: 1, minX: 0, maxY: 0, ox: width / 2, oy: height / 2 };
  }
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  for (const p of points) {
    minX = Math.min(minX, p.x);
    minY = Math.min(minY, p.y);
    maxX = Math.max(maxX, p.x);
    maxY = Math.max(maxY, p.y);
  }
  const spanX = maxX - minX;
  const spanY = maxY - minY;
  const innerW = Math.max(width - 2 * pad, 1);
  const innerH = Math.max(height - 2 * pad, 1);
  let s: number;
  if (spanX === 0 && spanY === 0) {
    s = 1;
  } else {
    const sx = spanX > 0 ? innerW / spanX : Infinity;
    const sy = spanY > 0 ? innerH / spanY : Infinity;
    s = Math.min(sx, sy);
  }
  const ox = pad + (innerW - spanX * s) / 2;
  const oy = pad + (innerH - spanY * s) / 2;
  return { s, minX, maxY, ox, oy };
}

export function project(t: Transform, x: number, y: number): Point {
  return { x: t.ox + (x - t.minX) * t.s, y: t.oy + (t.maxY - y) * t.s };
}

export interface ScreenRect {
  x: number;
  y: number;
  w: number;
  h: number;
}

export function zoneRect(
  t: Transform,
  bbox: [number, number, number, number],
): ScreenRect {
  const [x0, y0, x1, y1] = bbox;
  const topLeft = project(t, x0, y1);
  return { x: topLeft.x, y: topLeft.y, w: (x1 - x0) * t.s, h: (y1 - y0) * t.s };
}

export type AqiBucket = "low" | "moderate" | "high" | "unknown";

/** Bands follow the risk curve anchors: risk crosses 0.4 at aqi 100 and
 * 0.9 at aqi 200, so 200 and above reads as a hotspot. */
export function aqiBucket(aqi: number | null): AqiBucket {
  if (aqi === null || !Number.isFinite(aqi)) return "unknown";
  if (aqi >= 200) return "high";
  if (aqi >= 100) return "moderate";
  return "low";
}

const ZONE_FILLS: Record<AqiBucket, string> = {
  low: "#dcefdc",
  moderate: "#f6e3b4",
  high: "#f3c1bd",
  unknown: "#e4e4e4",
};

export function zoneFill(bucket: AqiBucket): string {
  return ZONE_FILLS[bucket];
}

export function zoneAqiAtFrame(zone: ZoneDigest, frame: number): number | null {
  const value = zone.aqi_by_frame[frame];
  return value === undefined ? null : value;
}

// Chosen (risk-aware) route draws green, the pure-distance rejections red;
// the remaining single-signal models get their own stable hues.
const MODEL_COLORS: Record<string, string> = {
  "Heuristic A* (Traffic - Weather - Distance)": "#1b8a3a",
  "A* Standard": "#c62828",
  "Dijkstra": "#8e2424",
  "Heuristic A* (Distance)": "#e07b00",
  "Heuristic A* (Traffic)": "#1565c0",
  "Heuristic A* (Weather)": "#6a3fb5",
};

const FALLBACK_COLORS = ["#00796b", "#5d4037", "#37474f", "#ad1457"];

export function routeColor(model: string, rowIndex = 0): string {
  return (
    MODEL_COLORS[model] ??
    (FALLBACK_COLORS[rowIndex % FALLBACK_COLORS.length] as string)
  );
}

/** Solid stroke for the risk-aware route, distinct dashes elsewhere so
 * geometrically identical overlays remain tellable apart. */
export function routeDash(model: string, rowIndex = 0): string {
  if (model === "Heuristic A* (Traffic - Weather - Distance)") return "";
  const patterns = ["10 6", "4 6", "14 4 4 4", "2 8", "8 8"];
  return patterns[rowIndex % patterns.length] as string;
}

export function polylinePoints(
  t: Transform,
  nodesById: Map<string, Point>,
  ids: string[],
): string {
  const parts: string[] = [];
  for (const id of ids) {
    const node = nodesById.get(id);
    if (node === undefined) continue;
    const p = project(t, node.x, node.y);
    parts.push(`${p.x},${p.y}`);
  }
  return parts.join(" ");
}

export const TOTALS_HEADERS = [
  "model",
  "distance_m",
  "risk_cost",
  "total_cost",
  "travel_time_s",
] as const;

/** Table cells echo the response numbers verbatim via String(); nothing is
 * rounded or recomputed on the client. */
export function totalsCells(row: CompareRow): string[] {
  const r: RouteOut = row.result;
  if (r.status !== "ok") {
    return [row.model, "no route", "no route", "no route", "no route"];
  }
  return [
    row.model,
    String(r.total_distance_m),
    String(r.total_risk_cost),
    String(r.total_cost),
    String(r.travel_time_s),
  ];
}

export function routeNodes(row: CompareRow): string[] {
  return row.result.status === "ok" ? row.result.nodes : [];
}
