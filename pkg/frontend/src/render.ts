// Rendering splits in two: buildScene produces a plain description of what
// to draw (pure, unit-testable), paint rasterizes it onto a canvas.

import { objectBounds } from "./geometry.js";
import { heatmapPixels } from "./heatmap.js";
import type { EditorState } from "./state.js";
import type { CatalogEntry } from "./types.js";

export interface Viewport {
  width: number; // canvas px
  height: number;
}

export interface RoomNode {
  type: "room";
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface ObjectNode {
  type: "object";
  index: number;
  kind: string;
  x: number;
  y: number;
  w: number;
  h: number;
  selected: boolean;
}

export interface HeatmapNode {
  type: "heatmap";
  grid: number[][];
  x: number;
  y: number;
  w: number;
  h: number;
  opacity: number;
}

export interface TextNode {
  type: "prediction" | "groundTruth" | "banner" | "placeholder";
  text: string;
  color: string;
}

export type SceneNode = RoomNode | ObjectNode | HeatmapNode | TextNode;

export interface Transform {
  scale: number; // px per meter
  originX: number; // canvas x of room center
  originY: number;
}

export function roomTransform(
  room: { width_m: number; height_m: number },
  viewport: Viewport,
): Transform {
  const scale =
    0.92 * Math.min(viewport.width / room.width_m, viewport.height / room.height_m);
  return { scale, originX: viewport.width / 2, originY: viewport.height / 2 };
}

export function toCanvas(t: Transform, x: number, y: number): [number, number] {
  return [t.originX + x * t.scale, t.originY - y * t.scale]; // canvas y points down
}

// Green (few resets) to red (many); the scale saturates at `hi`.
export function predictionColor(value: number, hi = 800): string {
  const t = Math.max(0, Math.min(1, value / hi));
  const r = Math.round(255 * t);
  const g = Math.round(200 * (1 - t));
  return `rgb(${r}, ${g}, 40)`;
}

export function buildScene(
  state: EditorState,
  catalog: Map<string, CatalogEntry>,
  viewport: Viewport,
): SceneNode[] {
  const t = roomTransform(state.layout.room, viewport);
  const room = state.layout.room;
  const [rx, ry] = toCanvas(t, -room.width_m / 2, room.height_m / 2);
  const nodes: SceneNode[] = [
    {
      type: "room",
      x: rx,
      y: ry,
      w: room.width_m * t.scale,
      h: room.height_m * t.scale,
    },
  ];

  const current =
    state.lastPrediction !== null && state.predictionRevision === state.revision;
  if (state.heatmapVisible && current && state.lastPrediction) {
    nodes.push({
      type: "heatmap",
      grid: state.lastPrediction.heatmap,
      x: rx,
      y: ry,
      w: room.width_m * t.scale,
      h: room.height_m * t.scale,
      opacity: 0.4,
    });
  }

  state.layout.objects.forEach((obj, index) => {
    const b = objectBounds(obj, catalog);
    const [ox, oy] = toCanvas(t, b.minX, b.maxY);
    nodes.push({
      type: "object",
      index,
      kind: obj.kind,
      x: ox,
      y: oy,
      w: (b.maxX - b.minX) * t.scale,
      h: (b.maxY - b.minY) * t.scale,
      selected: index === state.selected,
    });
  });

  if (current && state.lastPrediction) {
    const value = state.lastPrediction.predicted_resets;
    nodes.push({
      type: "prediction",
      text: `predicted resets: ${value.toFixed(1)}`,
      color: predictionColor(value),
    });
  } else {
    nodes.push({
      type: "placeholder",
      text: state.pendingRequest ? "predicting..." : "no prediction yet",
      color: "#888888",
    });
  }

  if (state.groundTruth) {
    nodes.push({
      type: "groundTruth",
      text:
        `simulated: ${state.groundTruth.mean.toFixed(1)} ` +
        `± ${state.groundTruth.std.toFixed(1)}`,
      color: "#333333",
    });
  }
  if (state.banner) {
    nodes.push({ type: "banner", text: state.banner, color: "#b00020" });
  }
  return nodes;
}

const KIND_FILL: Record<string, string> = {
  tv_stand: "#7d6b91",
  sofa: "#5b8a72",
  shelf_a: "#a3793c",
  shelf_b: "#a3793c",
  mini_fridge: "#4f7cac",
};

export function paint(
  ctx: CanvasRenderingContext2D,
  scene: SceneNode[],
  viewport: Viewport,
): void {
  ctx.clearRect(0, 0, viewport.width, viewport.height);
  ctx.fillStyle = "#111111";
  ctx.fillRect(0, 0, viewport.width, viewport.height);
  let textY = 28;
  for (const node of scene) {
    switch (node.type) {
      case "room":
        ctx.fillStyle = "#f5f2ea";
        ctx.fillRect(node.x, node.y, node.w, node.h);
        ctx.strokeStyle = "#222222";
        ctx.lineWidth = 2;
        ctx.strokeRect(node.x, node.y, node.w, node.h);
        break;
      case "heatmap": {
        const w = Math.max(1, Math.round(node.w));
        const h = Math.max(1, Math.round(node.h));
        const image = new ImageData(heatmapPixels(node.grid, w, h), w, h);
        const off = document.createElement("canvas");
        off.width = w;
        off.height = h;
        off.getContext("2d")!.putImageData(image, 0, 0);
        ctx.drawImage(off, node.x, node.y);
        break;
      }
      case "object":
        ctx.fillStyle = KIND_FILL[node.kind] ?? "#999999";
        ctx.fillRect(node.x, node.y, node.w, node.h);
        ctx.strokeStyle = node.selected ? "#ffcc00" : "#222222";
        ctx.lineWidth = node.selected ? 3 : 1;
        ctx.strokeRect(node.x, node.y, node.w, node.h);
        ctx.fillStyle = "#ffffff";
        ctx.font = "11px sans-serif";
        ctx.fillText(node.kind, node.x + 3, node.y + 13, node.w - 6);
        break;
      default:
        ctx.fillStyle = node.color;
        ctx.font = node.type === "prediction" ? "bold 18px sans-serif" : "14px sans-serif";
        ctx.fillText(node.text, 12, textY);
        textY += 22;
        break;
    }
  }
}
