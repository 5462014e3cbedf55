/** Typed client for the airpath HTTP API.
 *
 * Every number shown in the UI comes from these response documents
 * verbatim; the client never recomputes costs or distances.
 */

export interface ScenarioMeta {
  name: string;
  seed: number;
  nodes: number;
  edges: number;
  zones: number;
  frames: number;
  frame_interval_s: number;
  coord_system: string;
}

export interface ScenarioListing {
  scenarios: ScenarioMeta[];
}

export interface NodeOut {
  id: string;
  x: number;
  y: number;
}

export interface EdgeOut {
  from: string;
  to: string;
  length_m: number;
  base_speed_mps: number;
  zone: string;
}

export interface ZoneDigest {
  id: string;
  bbox: [number, number, number, number];
  aqi_by_frame: (number | null)[];
  volume_ratio_by_frame: (number | null)[];
}

export interface ScenarioSummary {
  meta: ScenarioMeta;
  frame_timestamps: number[];
  nodes: NodeOut[];
  edges: EdgeOut[];
  zones: ZoneDigest[];
}

export interface EdgeReportOut {
  from: string;
  to: string;
  zone: string;
  length_m: number;
  base_speed_mps: number;
  cost: number;
  risk_total: number;
  risk_contributions: Record<string, number>;
}

export interface RouteOk {
  status: "ok";
  nodes: string[];
  total_distance_m: number;
  total_risk_cost: number;
  total_cost: number;
  travel_time_s: number;
  edges_count: number;
  nodes_expanded: number;
  edges: EdgeReportOut[];
}

export interface RouteMiss {
  status: "no_route";
  origin: string;
  dest: string;
  nodes_expanded: number;
}

export type RouteOut = RouteOk | RouteMiss;

export interface CompareRow {
  model: string;
  algorithm: string;
  variant: string;
  result: RouteOut;
}

export interface CompareResponse {
  rows: CompareRow[];
}

export interface ProfileBody {
  asthma_type: string;
  stress_level: string;
  smoke_exposure: string;
  obesity_level: string;
  gender: string;
  family_history: boolean;
  plays_sports: boolean;
}

export interface CompareBody {
  scenario: string;
  origin: string;
  dest: string;
  profile: ProfileBody;
  depart_t: number;
  alpha: number;
}

export interface FieldError {
  field: string;
  error: string;
}

export interface ErrorDoc {
  code: string;
  message: string;
  detail: unknown;
}

/** Structured failure from the service; `detail` keeps the server's shape. */
export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly detail: unknown;

  constructor(status: number, doc: ErrorDoc) {
    super(doc.message);
    this.name = "ApiError";
    this.status = status;
    this.code = doc.code;
    this.detail = doc.detail;
  }

  /** 400 validation errors carry a list of {field, error} entries. */
  fieldErrors(): FieldError[] {
    if (!Array.isArray(this.detail)) return [];
    const out: FieldError[] = [];
    for (const entry of this.detail) {
      if (
        entry !== null &&
        typeof entry === "object" &&
        typeof (entry as FieldError).field === "string" &&
        typeof (entry as FieldError).error === "string"
      ) {
        out.push({ field: (entry as FieldError).field, error: (entry as FieldError).error });
      }
    }
    return out;
  }
}

export type FetchFn = (input: string, init?: RequestInit) => Promise<Response>;

async function parseError(resp: Response): Promise<ApiError> {
  let doc: ErrorDoc;
  try {
    doc = (await resp.json()) as ErrorDoc;
  } catch {
    doc = { code: "http_error", message: `HTTP ${resp.status}`, detail: null };
  }
  return new ApiError(resp.status, doc);
}

export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchFn;

  constructor(baseUrl = "", fetchFn?: FetchFn) {
    // strip one trailing slash so base + "/api/..." concatenates cleanly
    this.base = baseUrl.endsWith("/") ? baseUrl.slice(0, -1) : baseUrl;
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async getJson<T>(path: string): Promise<T> {
    const resp = await this.fetchFn(this.base + path, { method: "GET" });
    if (!resp.ok) throw await parseError(resp);
    return (await resp.json()) as T;
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const resp = await this.fetchFn(this.base + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!resp.ok) throw await parseError(resp);
    return (await resp.json()) as T;
  }

  listScenarios(): Promise<ScenarioListing> {
    return this.getJson<ScenarioListing>("/api/scenarios");
  }

  scenarioSummary(name: string): Promise<ScenarioSummary> {
    return this.getJson<ScenarioSummary>(
      "/api/scenarios/" + encodeURIComponent(name),
    );
  }

  compare(body: CompareBody): Promise<CompareResponse> {
    return this.postJson<CompareResponse>("/api/compare", body);
  }

  healthz(): Promise<{ status: string; scenarios: number }> {
    return this.getJson<{ status: string; scenarios: number }>("/healthz");
  }
}
