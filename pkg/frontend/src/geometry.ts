// Client-side layout validity, mirroring the server's 422 rules: objects
// stay inside the room, interiors never overlap (touching is fine), one of
// each catalog piece.  All footprints are axis-aligned rectangles because
// rotations are quarter turns.

import type { CatalogEntry, Layout, PlacedObject, RotationDeg } from "./types.js";

export interface Bounds {
  minX: number;
  maxX: number;
  minY: number;
  maxY: number;
}

export function rotatedHalfExtents(
  entry: CatalogEntry,
  rotation: RotationDeg,
): [number, number] {
  const [hx, hy] = entry.half_extents_m;
  return rotation === 90 || rotation === 270 ? [hy, hx] : [hx, hy];
}

export function objectBounds(
  obj: PlacedObject,
  catalog: Map<string, CatalogEntry>,
): Bounds {
  const entry = catalog.get(obj.kind);
  if (!entry) {
    throw new Error(`unknown furniture kind '${obj.kind}'`);
  }
  const [hx, hy] = rotatedHalfExtents(entry, obj.rotation_deg);
  const [cx, cy] = obj.center_m;
  return { minX: cx - hx, maxX: cx + hx, minY: cy - hy, maxY: cy + hy };
}

export function insideRoom(b: Bounds, room: { width_m: number; height_m: number }): boolean {
  const hw = room.width_m / 2;
  const hh = room.height_m / 2;
  return b.minX >= -hw && b.maxX <= hw && b.minY >= -hh && b.maxY <= hh;
}

// Interiors only: shared edges are allowed (furniture may sit flush).
export function boundsOverlap(a: Bounds, b: Bounds): boolean {
  return a.minX < b.maxX && b.minX < a.maxX && a.minY < b.maxY && b.minY < a.maxY;
}

export function layoutValid(layout: Layout, catalog: Map<string, CatalogEntry>): boolean {
  const kinds = new Set<string>();
  const bounds: Bounds[] = [];
  for (const obj of layout.objects) {
    if (kinds.has(obj.kind) || !catalog.has(obj.kind)) {
      return false;
    }
    kinds.add(obj.kind);
    const b = objectBounds(obj, catalog);
    if (!insideRoom(b, layout.room)) {
      return false;
    }
    for (const other of bounds) {
      if (boundsOverlap(b, other)) {
        return false;
      }
    }
    bounds.push(b);
  }
  return true;
}

// Validity of one object's pose against everything else in the layout.
export function poseValid(
  layout: Layout,
  index: number,
  catalog: Map<string, CatalogEntry>,
): boolean {
  const obj = layout.objects[index];
  const b = objectBounds(obj, catalog);
  if (!insideRoom(b, layout.room)) {
    return false;
  }
  for (let i = 0; i < layout.objects.length; i++) {
    if (i !== index && boundsOverlap(b, objectBounds(layout.objects[i], catalog))) {
      return false;
    }
  }
  return true;
}
