// Browser entry point: canvas editor wired to the prediction service.
// Serve the service with CORS enabled (default) and open index.html.

import { ServiceClient } from "./api.js";
import { buildScene, paint, roomTransform } from "./render.js";
import { PredictScheduler } from "./scheduler.js";
import {
  applyGroundTruth,
  applyPrediction,
  dragTo,
  exportLayout,
  importLayout,
  initialState,
  rotateObject,
  selectObject,
  setBanner,
  setGroundTruthPending,
  setPending,
  toggleHeatmap,
  type EditorState,
} from "./state.js";
import { ApiError, type CatalogEntry, type Layout } from "./types.js";

const SERVICE_BASE =
  new URLSearchParams(window.location.search).get("service") ?? "http://127.0.0.1:8080";

const DEFAULT_LAYOUT: Layout = {
  room: { width_m: 5, height_m: 5 },
  objects: [
    { kind: "tv_stand", center_m: [0.0, 2.2], rotation_deg: 0 },
    { kind: "sofa", center_m: [0.0, -1.6], rotation_deg: 0 },
    { kind: "shelf_a", center_m: [-2.3, 0.0], rotation_deg: 90 },
    { kind: "shelf_b", center_m: [2.3, 0.0], rotation_deg: 90 },
    { kind: "mini_fridge", center_m: [-2.0, 2.0], rotation_deg: 0 },
  ],
};

async function bootstrap(): Promise<void> {
  const canvas = document.getElementById("editor") as HTMLCanvasElement;
  const ctx = canvas.getContext("2d")!;
  const viewport = { width: canvas.width, height: canvas.height };
  const client = new ServiceClient(SERVICE_BASE);

  let catalog: Map<string, CatalogEntry>;
  let state: EditorState = initialState(DEFAULT_LAYOUT);
  try {
    catalog = await client.catalog();
    const health = await client.healthz();
    setStatus(`service ok, model ${health.model_version}`);
  } catch (e) {
    setStatus(`service unreachable at ${SERVICE_BASE}: ${(e as Error).message}`);
    return;
  }

  const scheduler = new PredictScheduler(async (layout, revision) => {
    try {
      const resp = await client.predict(layout);
      update(applyPrediction(state, resp, revision));
    } catch (e) {
      update(setBanner(setPending(state, false), describe(e)));
    }
  }, 100);

  function update(next: EditorState): void {
    const layoutChanged = next.revision !== state.revision;
    state = next;
    if (layoutChanged) {
      state = setPending(state, true);
      scheduler.request(state.layout, state.revision);
    }
    paint(ctx, buildScene(state, catalog, viewport), viewport);
  }

  function describe(e: unknown): string {
    if (e instanceof ApiError) {
      return `${e.body.code}: ${e.body.message}`;
    }
    return (e as Error).message;
  }

  // -- pointer interaction ------------------------------------------------
  let dragging: number | null = null;
  let dragOffset: [number, number] = [0, 0];

  function pickObject(px: number, py: number): number | null {
    const scene = buildScene(state, catalog, viewport);
    for (let i = scene.length - 1; i >= 0; i--) {
      const node = scene[i];
      if (node.type === "object") {
        if (px >= node.x && px <= node.x + node.w && py >= node.y && py <= node.y + node.h) {
          return node.index;
        }
      }
    }
    return null;
  }

  function canvasToRoom(px: number, py: number): [number, number] {
    const t = roomTransform(state.layout.room, viewport);
    return [(px - t.originX) / t.scale, (t.originY - py) / t.scale];
  }

  canvas.addEventListener("pointerdown", (ev) => {
    const rect = canvas.getBoundingClientRect();
    const px = ev.clientX - rect.left;
    const py = ev.clientY - rect.top;
    const index = pickObject(px, py);
    update(selectObject(state, index));
    if (index !== null) {
      dragging = index;
      const [rx, ry] = canvasToRoom(px, py);
      const [cx, cy] = state.layout.objects[index].center_m;
      dragOffset = [cx - rx, cy - ry];
      canvas.setPointerCapture(ev.pointerId);
    }
  });

  canvas.addEventListener("pointermove", (ev) => {
    if (dragging === null) {
      return;
    }
    const rect = canvas.getBoundingClientRect();
    const [rx, ry] = canvasToRoom(ev.clientX - rect.left, ev.clientY - rect.top);
    update(dragTo(state, dragging, rx + dragOffset[0], ry + dragOffset[1], catalog));
  });

  canvas.addEventListener("pointerup", () => {
    dragging = null;
  });

  canvas.addEventListener("dblclick", () => {
    if (state.selected !== null) {
      update(rotateObject(state, state.selected, catalog));
    }
  });

  // -- controls -------------------------------------------------------------
  (document.getElementById("rotate") as HTMLButtonElement).onclick = () => {
    if (state.selected !== null) {
      update(rotateObject(state, state.selected, catalog));
    }
  };

  (document.getElementById("heatmap") as HTMLInputElement).onchange = () => {
    update(toggleHeatmap(state));
  };

  (document.getElementById("simulate") as HTMLButtonElement).onclick = async () => {
    if (state.groundTruthPending) {
      return;
    }
    const revision = state.revision;
    update(setGroundTruthPending(state, true));
    try {
      const resp = await client.simulate(state.layout, 10, 42);
      update(applyGroundTruth(state, resp, revision));
    } catch (e) {
      update(setBanner(setGroundTruthPending(state, false), describe(e)));
    }
  };

  (document.getElementById("export") as HTMLButtonElement).onclick = () => {
    const blob = new Blob([exportLayout(state)], { type: "application/json" });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = "layout.json";
    a.click();
    URL.revokeObjectURL(a.href);
  };

  (document.getElementById("import") as HTMLInputElement).onchange = async (ev) => {
    const input = ev.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) {
      return;
    }
    const result = importLayout(state, await file.text(), catalog);
    if (result.state) {
      update(setBanner(result.state, null));
    } else {
      update(setBanner(state, result.errors.join("; ")));
    }
    input.value = "";
  };

  (document.getElementById("dismiss") as HTMLButtonElement).onclick = () => {
    update(setBanner(state, null));
  };

  function setStatus(text: string): void {
    (document.getElementById("status") as HTMLElement).textContent = text;
  }

  update(state); // initial paint + first prediction
  state = setPending(state, true);
  scheduler.request(state.layout, state.revision);
}

void bootstrap();
