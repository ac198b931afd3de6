// Shared wire types; they mirror the service's JSON schemas exactly.

export type RotationDeg = 0 | 90 | 180 | 270;

export interface RoomSpec {
  width_m: number;
  height_m: number;
}

export interface PlacedObject {
  kind: string;
  center_m: [number, number]; // room-centered coordinates, meters
  rotation_deg: RotationDeg;
}

export interface Layout {
  room: RoomSpec;
  objects: PlacedObject[];
}

export interface CatalogEntry {
  kind: string;
  half_extents_m: [number, number];
}

export interface PredictResponse {
  predicted_resets: number;
  heatmap: number[][];
  model_version: string;
  latency_ms: number;
}

export interface SimulateResponse {
  per_path: number[];
  mean: number;
  std: number;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  detail?: unknown;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: ApiErrorBody,
  ) {
    super(`${body.code}: ${body.message}`);
  }
}
