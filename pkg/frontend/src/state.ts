/** UI state machine, kept free of DOM types so it can be tested headless.
 *
 * All transitions are pure: they take a state and return a new one. The
 * wiring layer owns the single mutable reference and re-renders after
 * every transition.
 */

import type { CompareBody, CompareResponse, ProfileBody } from "./api.js";

export const ASTHMA_TYPES = ["allergic", "non_allergic"] as const;
export const STRESS_LEVELS = ["low", "medium", "high"] as const;
export const SMOKE_EXPOSURES = ["none", "secondhand", "smoker"] as const;
export const OBESITY_LEVELS = ["none", "moderate", "high"] as const;
export const GENDERS = ["female", "male", "other"] as const;

/** Select fields start empty; "" means not chosen yet. */
export interface ProfileForm {
  asthma_type: string;
  stress_level: string;
  smoke_exposure: string;
  obesity_level: string;
  gender: string;
  family_history: boolean;
  plays_sports: boolean;
}

export const PROFILE_SELECTS: { key: keyof ProfileForm; options: readonly string[] }[] = [
  { key: "asthma_type", options: ASTHMA_TYPES },
  { key: "stress_level", options: STRESS_LEVELS },
  { key: "smoke_exposure", options: SMOKE_EXPOSURES },
  { key: "obesity_level", options: OBESITY_LEVELS },
  { key: "gender", options: GENDERS },
];

export function emptyProfile(): ProfileForm {
  return {
    asthma_type: "",
    stress_level: "",
    smoke_exposure: "",
    obesity_level: "",
    gender: "",
    family_history: false,
    plays_sports: false,
  };
}

export function profileComplete(p: ProfileForm): boolean {
  return PROFILE_SELECTS.every(({ key, options }) =>
    options.includes(p[key] as string),
  );
}

export interface UiState {
  scenario: string | null;
  origin: string | null;
  dest: string | null;
  profile: ProfileForm;
  alpha: number;
  departFrame: number;
  frameTimestamps: number[];
  lastCompare: CompareResponse | null;
  hiddenModels: string[];
  hint: string | null;
  fieldErrors: Record<string, string>;
  banner: string | null;
  // request sequencing: seq is the last issued number, inFlight the one
  // still awaited; responses for any other number are stale and dropped
  seq: number;
  inFlight: number | null;
  // a completed compare freezes the button until something changes
  dirty: boolean;
}

export function initialState(): UiState {
  return {
    scenario: null,
    origin: null,
    dest: null,
    profile: emptyProfile(),
    alpha: 1.0,
    departFrame: 0,
    frameTimestamps: [0],
    lastCompare: null,
    hiddenModels: [],
    hint: null,
    fieldErrors: {},
    banner: null,
    seq: 0,
    inFlight: null,
    dirty: true,
  };
}

function edited(state: UiState): UiState {
  return { ...state, dirty: true, hint: null };
}

export function selectScenario(
  state: UiState,
  name: string,
  frameTimestamps: number[],
): UiState {
  return {
    ...edited(state),
    scenario: name,
    origin: null,
    dest: null,
    departFrame: 0,
    frameTimestamps: frameTimestamps.length > 0 ? frameTimestamps : [0],
    lastCompare: null,
    fieldErrors: {},
    banner: null,
  };
}

/** First click picks the origin, second the destination, third starts over.
 * Reclicking the origin as destination is rejected with a hint. */
export function clickNode(state: UiState, nodeId: string): UiState {
  if (state.origin === null || state.dest !== null) {
    return { ...edited(state), origin: nodeId, dest: null };
  }
  if (nodeId === state.origin) {
    return {
      ...state,
      hint: `'${nodeId}' is already the origin; pick a different destination`,
    };
  }
  return { ...edited(state), dest: nodeId };
}

export function setProfileField(
  state: UiState,
  key: keyof ProfileForm,
  value: string | boolean,
): UiState {
  const profile = { ...state.profile, [key]: value };
  const fieldErrors = { ...state.fieldErrors };
  delete fieldErrors[key];
  return { ...edited(state), profile, fieldErrors };
}

export function setAlpha(state: UiState, alpha: number): UiState {
  const fieldErrors = { ...state.fieldErrors };
  delete fieldErrors.alpha;
  return { ...edited(state), alpha, fieldErrors };
}

export function setDepartFrame(state: UiState, frame: number): UiState {
  const max = state.frameTimestamps.length - 1;
  const clamped = Math.min(Math.max(frame, 0), Math.max(max, 0));
  return { ...edited(state), departFrame: clamped };
}

export function canSubmit(state: UiState): boolean {
  return (
    state.scenario !== null &&
    state.origin !== null &&
    state.dest !== null &&
    state.origin !== state.dest &&
    profileComplete(state.profile) &&
    Number.isFinite(state.alpha) &&
    state.alpha >= 0 &&
    state.dirty
  );
}

/** Every form value maps through unchanged; nothing is renamed or coerced
 * beyond the checked narrowing of the select strings. */
export function buildCompareBody(state: UiState): CompareBody {
  if (!canSubmit(state)) {
    throw new Error("compare body requested while submission is disabled");
  }
  const profile: ProfileBody = {
    asthma_type: state.profile.asthma_type,
    stress_level: state.profile.stress_level,
    smoke_exposure: state.profile.smoke_exposure,
    obesity_level: state.profile.obesity_level,
    gender: state.profile.gender,
    family_history: state.profile.family_history,
    plays_sports: state.profile.plays_sports,
  };
  return {
    scenario: state.scenario as string,
    origin: state.origin as string,
    dest: state.dest as string,
    profile,
    depart_t: state.frameTimestamps[state.departFrame] ?? 0,
    alpha: state.alpha,
  };
}

/** Issue the next sequence number; any previously in-flight request is
 * superseded from this moment on. */
export function beginCompare(state: UiState): { state: UiState; seq: number } {
  const seq = state.seq + 1;
  return {
    state: { ...state, seq, inFlight: seq, banner: null, hint: null },
    seq,
  };
}

export function applyCompareResponse(
  state: UiState,
  seq: number,
  response: CompareResponse,
): UiState {
  if (seq !== state.inFlight) return state; // stale
  return {
    ...state,
    inFlight: null,
    lastCompare: response,
    fieldErrors: {},
    banner: null,
    dirty: false,
  };
}

/** Map the service's dotted request paths onto local form keys. */
export function formFieldFor(apiField: string): string {
  let field = apiField;
  if (field.startsWith("body.")) field = field.slice("body.".length);
  if (field.startsWith("profile.")) field = field.slice("profile.".length);
  return field;
}

export function applyCompareFailure(
  state: UiState,
  seq: number,
  message: string,
  fieldErrors: { field: string; error: string }[],
): UiState {
  if (seq !== state.inFlight) return state; // stale
  const mapped: Record<string, string> = {};
  for (const fe of fieldErrors) {
    mapped[formFieldFor(fe.field)] = fe.error;
  }
  return {
    ...state,
    inFlight: null,
    fieldErrors: mapped,
    banner: fieldErrors.length > 0 ? null : message,
  };
}

export function toggleModel(state: UiState, model: string): UiState {
  const hidden = state.hiddenModels.includes(model)
    ? state.hiddenModels.filter((m) => m !== model)
    : [...state.hiddenModels, model];
  return { ...state, hiddenModels: hidden };
}

export function modelVisible(state: UiState, model: string): boolean {
  return !state.hiddenModels.includes(model);
}

export function dismissBanner(state: UiState): UiState {
  return { ...state, banner: null };
}

export function setBanner(state: UiState, message: string): UiState {
  return { ...state, banner: message };
}
