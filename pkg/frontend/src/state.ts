// Editor state and its pure transitions.  Every layout mutation bumps
// `revision`; a prediction is only ever displayed when its revision matches
// the current one, so stale responses can never label a newer layout.

import { layoutValid, poseValid } from "./geometry.js";
import type {
  CatalogEntry,
  Layout,
  PredictResponse,
  RotationDeg,
  SimulateResponse,
} from "./types.js";

export interface EditorState {
  layout: Layout;
  selected: number | null;
  revision: number;
  lastPrediction: PredictResponse | null;
  predictionRevision: number; // revision that produced lastPrediction
  heatmapVisible: boolean;
  pendingRequest: boolean;
  groundTruth: SimulateResponse | null;
  groundTruthPending: boolean;
  banner: string | null;
}

export function initialState(layout: Layout): EditorState {
  return {
    layout,
    selected: null,
    revision: 0,
    lastPrediction: null,
    predictionRevision: -1,
    heatmapVisible: true,
    pendingRequest: false,
    groundTruth: null,
    groundTruthPending: false,
    banner: null,
  };
}

function withLayout(state: EditorState, layout: Layout): EditorState {
  // Any layout change invalidates the displayed ground truth.
  return {
    ...state,
    layout,
    revision: state.revision + 1,
    groundTruth: null,
  };
}

export function selectObject(state: EditorState, index: number | null): EditorState {
  return { ...state, selected: index };
}

// Continuous drag: commit the new center only while the pose stays legal;
// an illegal move leaves the object at its last valid pose (snap-back).
export function dragTo(
  state: EditorState,
  index: number,
  x: number,
  y: number,
  catalog: Map<string, CatalogEntry>,
): EditorState {
  const objects = state.layout.objects.slice();
  const moved = { ...objects[index], center_m: [x, y] as [number, number] };
  objects[index] = moved;
  const candidate = { ...state.layout, objects };
  if (!poseValid(candidate, index, catalog)) {
    return state;
  }
  return withLayout(state, candidate);
}

// Rotate cycles 0 -> 90 -> 180 -> 270 -> 0; an illegal result snaps back.
export function rotateObject(
  state: EditorState,
  index: number,
  catalog: Map<string, CatalogEntry>,
): EditorState {
  const objects = state.layout.objects.slice();
  const next = ((objects[index].rotation_deg + 90) % 360) as RotationDeg;
  objects[index] = { ...objects[index], rotation_deg: next };
  const candidate = { ...state.layout, objects };
  if (!poseValid(candidate, index, catalog)) {
    return state;
  }
  return withLayout(state, candidate);
}

// Latest-wins: a response is dropped unless it answers the current layout.
export function applyPrediction(
  state: EditorState,
  response: PredictResponse,
  revision: number,
): EditorState {
  if (revision !== state.revision) {
    return { ...state, pendingRequest: false };
  }
  return {
    ...state,
    lastPrediction: response,
    predictionRevision: revision,
    pendingRequest: false,
  };
}

export function setPending(state: EditorState, pending: boolean): EditorState {
  return { ...state, pendingRequest: pending };
}

export function applyGroundTruth(
  state: EditorState,
  response: SimulateResponse,
  revision: number,
): EditorState {
  if (revision !== state.revision) {
    return { ...state, groundTruthPending: false };
  }
  return { ...state, groundTruth: response, groundTruthPending: false };
}

export function setGroundTruthPending(state: EditorState, pending: boolean): EditorState {
  return { ...state, groundTruthPending: pending };
}

export function setBanner(state: EditorState, banner: string | null): EditorState {
  return { ...state, banner };
}

export function toggleHeatmap(state: EditorState): EditorState {
  return { ...state, heatmapVisible: !state.heatmapVisible };
}

// Export is canonical JSON (stable key order); export -> import round-trips
// byte-for-byte for unchanged layouts.
export function exportLayout(state: EditorState): string {
  const layout = state.layout;
  return JSON.stringify({
    room: { width_m: layout.room.width_m, height_m: layout.room.height_m },
    objects: layout.objects.map((o) => ({
      kind: o.kind,
      center_m: [o.center_m[0], o.center_m[1]],
      rotation_deg: o.rotation_deg,
    })),
  });
}

export interface ImportResult {
  state?: EditorState;
  errors: string[];
}

export function importLayout(
  state: EditorState,
  text: string,
  catalog: Map<string, CatalogEntry>,
): ImportResult {
  let data: unknown;
  try {
    data = JSON.parse(text);
  } catch (e) {
    return { errors: [`$: invalid JSON (${(e as Error).message})`] };
  }
  const errors: string[] = [];
  const obj = data as Record<string, unknown>;
  const room = obj?.room as Record<string, unknown> | undefined;
  if (
    !room ||
    typeof room.width_m !== "number" ||
    typeof room.height_m !== "number" ||
    room.width_m <= 0 ||
    room.height_m <= 0
  ) {
    errors.push("$.room: width_m/height_m must be positive numbers");
  }
  const rawObjects = obj?.objects;
  if (!Array.isArray(rawObjects)) {
    errors.push("$.objects: must be an array");
  } else {
    rawObjects.forEach((entry, i) => {
      const o = entry as Record<string, unknown>;
      if (typeof o?.kind !== "string" || !catalog.has(o.kind)) {
        errors.push(`$.objects[${i}].kind: unknown furniture kind`);
      }
      const c = o?.center_m;
      if (!Array.isArray(c) || c.length !== 2 || c.some((v) => typeof v !== "number")) {
        errors.push(`$.objects[${i}].center_m: must be [x, y] numbers`);
      }
      if (![0, 90, 180, 270].includes(o?.rotation_deg as number)) {
        errors.push(`$.objects[${i}].rotation_deg: must be 0, 90, 180 or 270`);
      }
    });
  }
  if (errors.length > 0) {
    return { errors };
  }
  const layout = data as Layout;
  if (!layoutValid(layout, catalog)) {
    return { errors: ["$.objects: layout violates placement rules (overlap or out of room)"] };
  }
  return { state: { ...withLayout(state, layout), selected: null }, errors: [] };
}
