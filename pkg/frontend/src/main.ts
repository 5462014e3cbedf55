/** DOM wiring: one mutable state reference, full re-render per transition.
 *
 * Scenario graphs are small (hundreds of nodes at most in the demo sets),
 * so rebuilding the SVG each time is simpler and fast enough.
 */

import { ApiClient, ApiError } from "./api.js";
import type { ScenarioSummary } from "./api.js";
import {
  aqiBucket,
  fitTransform,
  polylinePoints,
  project,
  routeColor,
  routeDash,
  routeNodes,
  totalsCells,
  TOTALS_HEADERS,
  zoneAqiAtFrame,
  zoneFill,
  zoneRect,
} from "./render.js";
import type { Point, Transform } from "./render.js";
import {
  applyCompareFailure,
  applyCompareResponse,
  beginCompare,
  buildCompareBody,
  canSubmit,
  clickNode,
  initialState,
  modelVisible,
  PROFILE_SELECTS,
  selectScenario,
  setAlpha,
  setBanner,
  setDepartFrame,
  setProfileField,
  toggleModel,
} from "./state.js";
import type { ProfileForm, UiState } from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const MAP_W = 720;
const MAP_H = 520;

// same-origin by default; a static host can point elsewhere via ?api=...
const apiBase = new URLSearchParams(window.location.search).get("api") ?? "";
const client = new ApiClient(apiBase);

let state: UiState = initialState();
let summary: ScenarioSummary | null = null;
let retryAction: (() => void) | null = null;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

function svgEl(tag: string, attrs: Record<string, string> = {}): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

function byId(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node;
}

function update(next: UiState): void {
  state = next;
  render();
}

async function loadScenarios(): Promise<void> {
  try {
    const listing = await client.listScenarios();
    const picker = byId("scenario-picker") as HTMLSelectElement;
    picker.replaceChildren(el("option", { value: "" }, "choose a scenario"));
    for (const meta of listing.scenarios) {
      picker.append(
        el(
          "option",
          { value: meta.name },
          `${meta.name} (${meta.nodes} nodes, ${meta.frames} frames)`,
        ),
      );
    }
    retryAction = null;
    update({ ...state, banner: null });
  } catch {
    retryAction = loadScenarios;
    update(setBanner(state, "could not load scenario list; is airpath serve running?"));
  }
}

async function pickScenario(name: string): Promise<void> {
  if (name === "") return;
  try {
    const s = await client.scenarioSummary(name);
    summary = s;
    retryAction = null;
    update(selectScenario(state, name, s.frame_timestamps));
  } catch (err) {
    summary = null;
    retryAction = () => void pickScenario(name);
    const msg =
      err instanceof ApiError
        ? err.message
        : `could not load scenario '${name}'; check the service and retry`;
    update(setBanner(state, msg));
  }
}

async function submitCompare(): Promise<void> {
  if (!canSubmit(state)) return;
  const body = buildCompareBody(state);
  const begun = beginCompare(state);
  update(begun.state);
  try {
    const response = await client.compare(body);
    update(applyCompareResponse(state, begun.seq, response));
  } catch (err) {
    if (err instanceof ApiError) {
      update(applyCompareFailure(state, begun.seq, err.message, err.fieldErrors()));
    } else {
      retryAction = () => void submitCompare();
      update(
        applyCompareFailure(
          state,
          begun.seq,
          "compare request failed to reach the service",
          [],
        ),
      );
    }
  }
}

function nodePoints(s: ScenarioSummary): Map<string, Point> {
  const out = new Map<string, Point>();
  for (const n of s.nodes) out.set(n.id, { x: n.x, y: n.y });
  return out;
}

function renderMap(): void {
  const host = byId("map");
  host.replaceChildren();
  if (summary === null) {
    host.append(el("p", { class: "placeholder" }, "pick a scenario to see its map"));
    return;
  }
  const svg = svgEl("svg", {
    viewBox: `0 0 ${MAP_W} ${MAP_H}`,
    width: String(MAP_W),
    height: String(MAP_H),
    role: "img",
  });
  const points = nodePoints(summary);
  const t: Transform = fitTransform([...points.values()], MAP_W, MAP_H);

  for (const zone of summary.zones) {
    const rect = zoneRect(t, zone.bbox);
    const bucket = aqiBucket(zoneAqiAtFrame(zone, state.departFrame));
    const r = svgEl("rect", {
      x: String(rect.x),
      y: String(rect.y),
      width: String(rect.w),
      height: String(rect.h),
      fill: zoneFill(bucket),
      stroke: "#bbb",
      "stroke-width": "1",
    });
    const title = svgEl("title");
    title.textContent = `${zone.id}: aqi ${zoneAqiAtFrame(zone, state.departFrame) ?? "n/a"}`;
    r.append(title);
    svg.append(r);
  }

  for (const edge of summary.edges) {
    const a = points.get(edge.from);
    const b = points.get(edge.to);
    if (a === undefined || b === undefined) continue;
    const pa = project(t, a.x, a.y);
    const pb = project(t, b.x, b.y);
    svg.append(
      svgEl("line", {
        x1: String(pa.x),
        y1: String(pa.y),
        x2: String(pb.x),
        y2: String(pb.y),
        stroke: "#9a9a9a",
        "stroke-width": "1.5",
      }),
    );
  }

  if (state.lastCompare !== null) {
    state.lastCompare.rows.forEach((row, i) => {
      if (!modelVisible(state, row.model)) return;
      const ids = routeNodes(row);
      if (ids.length === 0) return;
      svg.append(
        svgEl("polyline", {
          points: polylinePoints(t, points, ids),
          fill: "none",
          stroke: routeColor(row.model, i),
          "stroke-width": "4",
          "stroke-dasharray": routeDash(row.model, i),
          "stroke-linecap": "round",
          opacity: "0.85",
          "data-model": row.model,
        }),
      );
    });
  }

  for (const [id, p] of points) {
    const sp = project(t, p.x, p.y);
    const role =
      id === state.origin ? "origin" : id === state.dest ? "dest" : "plain";
    const circle = svgEl("circle", {
      cx: String(sp.x),
      cy: String(sp.y),
      r: role === "plain" ? "7" : "9",
      fill: role === "origin" ? "#0b5fa5" : role === "dest" ? "#2f2f2f" : "#ffffff",
      stroke: "#2f2f2f",
      "stroke-width": "2",
      cursor: "pointer",
      "data-node": id,
    });
    circle.addEventListener("click", () => update(clickNode(state, id)));
    const label = svgEl("text", {
      x: String(sp.x + 10),
      y: String(sp.y - 10),
      "font-size": "12",
      fill: "#333",
    });
    label.textContent = id;
    svg.append(circle, label);
  }

  host.append(svg);
}

function renderForm(): void {
  for (const { key } of PROFILE_SELECTS) {
    const select = byId(`profile-${key}`) as HTMLSelectElement;
    select.value = state.profile[key] as string;
    const slot = byId(`error-${key}`);
    slot.textContent = state.fieldErrors[key] ?? "";
  }
  (byId("profile-family_history") as HTMLInputElement).checked =
    state.profile.family_history;
  (byId("profile-plays_sports") as HTMLInputElement).checked =
    state.profile.plays_sports;

  const alphaInput = byId("alpha") as HTMLInputElement;
  if (document.activeElement !== alphaInput) {
    alphaInput.value = String(state.alpha);
  }
  byId("alpha-value").textContent = state.alpha.toFixed(2);
  byId("error-alpha").textContent = state.fieldErrors.alpha ?? "";

  const frameInput = byId("depart-frame") as HTMLInputElement;
  frameInput.max = String(Math.max(state.frameTimestamps.length - 1, 0));
  frameInput.value = String(state.departFrame);
  const ts = state.frameTimestamps[state.departFrame] ?? 0;
  byId("depart-value").textContent = `frame ${state.departFrame} (t=${ts}s)`;

  byId("selection").textContent =
    `origin: ${state.origin ?? "(click a node)"}  dest: ${state.dest ?? "(click a second node)"}`;
  byId("hint").textContent = state.hint ?? "";

  const button = byId("compare") as HTMLButtonElement;
  button.disabled = !canSubmit(state);
  button.textContent = state.inFlight !== null ? "comparing..." : "Compare models";

  // errors on fields outside the form proper (origin, dest, scenario)
  const leftovers = Object.entries(state.fieldErrors)
    .filter(([k]) => !["alpha", ...PROFILE_SELECTS.map((p) => p.key)].includes(k))
    .map(([k, v]) => `${k}: ${v}`)
    .join("; ");
  byId("error-other").textContent = leftovers;
}

function renderBanner(): void {
  const banner = byId("banner");
  if (state.banner === null) {
    banner.replaceChildren();
    banner.style.display = "none";
    return;
  }
  banner.style.display = "block";
  banner.replaceChildren(el("span", {}, state.banner));
  if (retryAction !== null) {
    const retry = el("button", { type: "button" }, "Retry");
    const action = retryAction;
    retry.addEventListener("click", () => {
      retryAction = null;
      action();
    });
    banner.append(" ", retry);
  }
}

function renderResults(): void {
  const host = byId("results");
  host.replaceChildren();
  if (state.lastCompare === null) return;

  const toggles = el("div", { class: "overlay-toggles" });
  for (const row of state.lastCompare.rows) {
    const lab = el("label", { class: "overlay-toggle" });
    const box = el("input", { type: "checkbox" }) as HTMLInputElement;
    box.checked = modelVisible(state, row.model);
    box.addEventListener("change", () => update(toggleModel(state, row.model)));
    const swatch = el("span", { class: "swatch" });
    swatch.style.background = routeColor(row.model, state.lastCompare.rows.indexOf(row));
    lab.append(box, swatch, ` ${row.model}`);
    toggles.append(lab);
  }
  host.append(toggles);

  const table = el("table", { class: "totals" });
  const head = el("tr");
  for (const h of TOTALS_HEADERS) head.append(el("th", {}, h));
  table.append(head);
  for (const row of state.lastCompare.rows) {
    const tr = el("tr");
    for (const cell of totalsCells(row)) tr.append(el("td", {}, cell));
    table.append(tr);
  }
  host.append(table);
}

function render(): void {
  renderBanner();
  renderForm();
  renderMap();
  renderResults();
}

function wireStaticControls(): void {
  (byId("scenario-picker") as HTMLSelectElement).addEventListener("change", (ev) => {
    void pickScenario((ev.target as HTMLSelectElement).value);
  });

  for (const { key, options } of PROFILE_SELECTS) {
    const select = byId(`profile-${key}`) as HTMLSelectElement;
    select.replaceChildren(el("option", { value: "" }, "choose"));
    for (const opt of options) select.append(el("option", { value: opt }, opt));
    select.addEventListener("change", () =>
      update(setProfileField(state, key, select.value)),
    );
  }
  for (const key of ["family_history", "plays_sports"] as (keyof ProfileForm)[]) {
    const box = byId(`profile-${key}`) as HTMLInputElement;
    box.addEventListener("change", () => update(setProfileField(state, key, box.checked)));
  }

  const alphaInput = byId("alpha") as HTMLInputElement;
  alphaInput.addEventListener("input", () => {
    const v = Number(alphaInput.value);
    if (Number.isFinite(v)) update(setAlpha(state, v));
  });

  const frameInput = byId("depart-frame") as HTMLInputElement;
  frameInput.addEventListener("input", () =>
    update(setDepartFrame(state, Number(frameInput.value))),
  );

  byId("compare").addEventListener("click", () => void submitCompare());
}

wireStaticControls();
render();
void loadScenarios();
