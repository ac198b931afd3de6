import { describe, expect, it } from "vitest";

import { buildScene, predictionColor, roomTransform, toCanvas } from "../src/render.js";
import { applyPrediction, dragTo, initialState, toggleHeatmap } from "../src/state.js";
import type { Layout } from "../src/types.js";
import { CATALOG, prediction, sampleLayout } from "./helpers.js";

const VIEWPORT = { width: 640, height: 640 };

describe("buildScene", () => {
  it("empty layout renders the room and a placeholder only", () => {
    const empty: Layout = { room: { width_m: 5, height_m: 5 }, objects: [] };
    const scene = buildScene(initialState(empty), CATALOG, VIEWPORT);
    expect(scene.map((n) => n.type)).toEqual(["room", "placeholder"]);
  });

  it("renders one node per object with selection flag", () => {
    let state = initialState(sampleLayout());
    state = { ...state, selected: 1 };
    const scene = buildScene(state, CATALOG, VIEWPORT);
    const objects = scene.filter((n) => n.type === "object");
    expect(objects).toHaveLength(3);
    expect(objects.map((o) => (o as { selected: boolean }).selected)).toEqual([
      false,
      true,
      false,
    ]);
  });

  it("prediction numeral matches the latest response", () => {
    let state = initialState(sampleLayout());
    state = applyPrediction(state, prediction(123.45), state.revision);
    const scene = buildScene(state, CATALOG, VIEWPORT);
    const label = scene.find((n) => n.type === "prediction");
    expect(label).toBeDefined();
    expect((label as { text: string }).text).toContain("123.5");
  });

  it("a stale prediction is never rendered for a newer layout", () => {
    let state = initialState(sampleLayout());
    state = applyPrediction(state, prediction(99), state.revision);
    state = dragTo(state, 0, 0.4, -1.3, CATALOG); // revision moves on
    const scene = buildScene(state, CATALOG, VIEWPORT);
    expect(scene.some((n) => n.type === "prediction")).toBe(false);
    expect(scene.some((n) => n.type === "heatmap")).toBe(false);
    expect(scene.some((n) => n.type === "placeholder")).toBe(true);
  });

  it("heatmap node appears only when visible and current", () => {
    let state = initialState(sampleLayout());
    state = applyPrediction(state, prediction(10), state.revision);
    expect(buildScene(state, CATALOG, VIEWPORT).some((n) => n.type === "heatmap")).toBe(true);
    state = toggleHeatmap(state);
    expect(buildScene(state, CATALOG, VIEWPORT).some((n) => n.type === "heatmap")).toBe(false);
  });

  it("ground truth renders mean and std verbatim", () => {
    let state = initialState(sampleLayout());
    state = {
      ...state,
      groundTruth: { per_path: [4, 6], mean: 5.0, std: 1.0 },
    };
    const scene = buildScene(state, CATALOG, VIEWPORT);
    const node = scene.find((n) => n.type === "groundTruth");
    expect((node as { text: string }).text).toBe("simulated: 5.0 ± 1.0");
  });

  it("banner appears when set", () => {
    const state = { ...initialState(sampleLayout()), banner: "infeasible_layout: stuck" };
    const scene = buildScene(state, CATALOG, VIEWPORT);
    expect(scene.some((n) => n.type === "banner")).toBe(true);
  });
});

describe("viewport math", () => {
  it("room center maps to canvas center, y axis flips", () => {
    const t = roomTransform({ width_m: 5, height_m: 5 }, VIEWPORT);
    expect(toCanvas(t, 0, 0)).toEqual([320, 320]);
    const [, yTop] = toCanvas(t, 0, 2.5);
    expect(yTop).toBeLessThan(320);
  });

  it("prediction color runs green to red", () => {
    expect(predictionColor(0)).toBe("rgb(0, 200, 40)");
    expect(predictionColor(10_000)).toBe("rgb(255, 0, 40)");
  });
});
