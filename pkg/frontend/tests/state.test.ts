import { describe, expect, it } from "vitest";

import {
  applyGroundTruth,
  applyPrediction,
  dragTo,
  exportLayout,
  importLayout,
  initialState,
  rotateObject,
  toggleHeatmap,
} from "../src/state.js";
import { CATALOG, prediction, sampleLayout } from "./helpers.js";

describe("drag", () => {
  it("moves the object and bumps the revision when the pose is legal", () => {
    const s0 = initialState(sampleLayout());
    const s1 = dragTo(s0, 0, 0.5, -1.0, CATALOG);
    expect(s1.layout.objects[0].center_m).toEqual([0.5, -1.0]);
    expect(s1.revision).toBe(s0.revision + 1);
  });

  it("snaps back when dragged into another object", () => {
    const s0 = initialState(sampleLayout());
    // sofa dragged onto the mini fridge
    const s1 = dragTo(s0, 0, 1.8, 1.8, CATALOG);
    expect(s1.layout.objects[0].center_m).toEqual([0, -1.5]);
    expect(s1.revision).toBe(s0.revision);
  });

  it("snaps back when dragged out of the room", () => {
    const s0 = initialState(sampleLayout());
    const s1 = dragTo(s0, 0, 2.4, 0, CATALOG); // sofa right edge would pass 2.5
    expect(s1.layout.objects[0].center_m).toEqual([0, -1.5]);
  });

  it("allows flush contact", () => {
    const s0 = initialState(sampleLayout());
    // sofa is 2.0 x 0.9; center y = -2.05 puts its edge exactly on the wall
    const s1 = dragTo(s0, 0, 0, -2.05, CATALOG);
    expect(s1.layout.objects[0].center_m).toEqual([0, -2.05]);
  });

  it("invalidates displayed ground truth on movement", () => {
    let s = initialState(sampleLayout());
    s = applyGroundTruth(s, { per_path: [3], mean: 3, std: 0 }, s.revision);
    expect(s.groundTruth).not.toBeNull();
    s = dragTo(s, 0, 0.2, -1.2, CATALOG);
    expect(s.groundTruth).toBeNull();
  });
});

describe("rotate", () => {
  it("cycles 0 -> 90 -> 180 -> 270 -> 0", () => {
    let s = initialState(sampleLayout());
    const rotations: number[] = [];
    for (let i = 0; i < 4; i++) {
      s = rotateObject(s, 1, CATALOG); // mini fridge is square: always legal
      rotations.push(s.layout.objects[1].rotation_deg);
    }
    expect(rotations).toEqual([90, 180, 270, 0]);
  });

  it("snaps back when rotation would collide or escape", () => {
    const layout = sampleLayout();
    // sofa flush against the bottom wall: rotating 90 would push through it
    layout.objects[0].center_m = [0, -2.05];
    const s0 = initialState(layout);
    const s1 = rotateObject(s0, 0, CATALOG);
    expect(s1.layout.objects[0].rotation_deg).toBe(0);
    expect(s1.revision).toBe(s0.revision);
  });
});

describe("prediction bookkeeping", () => {
  it("applies a response for the current revision", () => {
    const s0 = initialState(sampleLayout());
    const s1 = applyPrediction(s0, prediction(42), s0.revision);
    expect(s1.lastPrediction?.predicted_resets).toBe(42);
    expect(s1.predictionRevision).toBe(s1.revision);
  });

  it("drops a stale response (latest wins)", () => {
    const s0 = initialState(sampleLayout());
    const s1 = dragTo(s0, 0, 0.5, -1.2, CATALOG);
    const s2 = applyPrediction(s1, prediction(42), s0.revision); // answers old layout
    expect(s2.lastPrediction).toBeNull();
    expect(s2.pendingRequest).toBe(false);
  });
});

describe("heatmap toggle", () => {
  it("flips visibility", () => {
    const s0 = initialState(sampleLayout());
    expect(toggleHeatmap(s0).heatmapVisible).toBe(!s0.heatmapVisible);
  });
});

describe("export / import", () => {
  it("round-trips losslessly and byte-stably", () => {
    const s0 = initialState(sampleLayout());
    const text = exportLayout(s0);
    const result = importLayout(s0, text, CATALOG);
    expect(result.errors).toEqual([]);
    expect(result.state!.layout).toEqual(s0.layout);
    expect(exportLayout(result.state!)).toBe(text);
  });

  it("reports malformed JSON without touching state", () => {
    const s0 = initialState(sampleLayout());
    const result = importLayout(s0, "{nope", CATALOG);
    expect(result.state).toBeUndefined();
    expect(result.errors[0]).toMatch(/invalid JSON/);
  });

  it("reports unknown kinds per field", () => {
    const s0 = initialState(sampleLayout());
    const bad = {
      room: { width_m: 5, height_m: 5 },
      objects: [{ kind: "piano", center_m: [0, 0], rotation_deg: 0 }],
    };
    const result = importLayout(s0, JSON.stringify(bad), CATALOG);
    expect(result.errors).toEqual(["$.objects[0].kind: unknown furniture kind"]);
  });

  it("rejects layouts that violate placement rules", () => {
    const s0 = initialState(sampleLayout());
    const bad = {
      room: { width_m: 5, height_m: 5 },
      objects: [
        { kind: "sofa", center_m: [0, 0], rotation_deg: 0 },
        { kind: "tv_stand", center_m: [0.1, 0.1], rotation_deg: 0 },
      ],
    };
    const result = importLayout(s0, JSON.stringify(bad), CATALOG);
    expect(result.errors[0]).toMatch(/placement rules/);
  });
});
