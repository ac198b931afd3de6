import type { CatalogEntry, Layout, PredictResponse } from "../src/types.js";

// Mirror of the service's default furniture catalog.
export const CATALOG: Map<string, CatalogEntry> = new Map(
  (
    [
      { kind: "tv_stand", half_extents_m: [0.8, 0.2] },
      { kind: "sofa", half_extents_m: [1.0, 0.45] },
      { kind: "shelf_a", half_extents_m: [0.4, 0.15] },
      { kind: "shelf_b", half_extents_m: [0.4, 0.15] },
      { kind: "mini_fridge", half_extents_m: [0.25, 0.25] },
    ] as CatalogEntry[]
  ).map((e) => [e.kind, e]),
);

export function sampleLayout(): Layout {
  return {
    room: { width_m: 5, height_m: 5 },
    objects: [
      { kind: "sofa", center_m: [0, -1.5], rotation_deg: 0 },
      { kind: "mini_fridge", center_m: [1.8, 1.8], rotation_deg: 0 },
      { kind: "shelf_a", center_m: [-2.0, 1.0], rotation_deg: 90 },
    ],
  };
}

export function prediction(value: number, grid = 4): PredictResponse {
  const heatmap = Array.from({ length: grid }, (_, i) =>
    Array.from({ length: grid }, (_, j) => (i + j) / (2 * grid - 2)),
  );
  return {
    predicted_resets: value,
    heatmap,
    model_version: "test-version",
    latency_ms: 1.5,
  };
}
