"""
The HTTP service: live prediction and on-demand ground truth
============================================================

`roomroam serve --model model.bin --port 8080` exposes the model to the
placement editor (frontend/) and to scripts.  This demo runs the server
in-process on an ephemeral port and exercises every endpoint.
"""

import json
import threading
import urllib.request

from roomroam import ModelConfig, init_params, layout_to_json, sample_layout, save_model
from roomroam.service import create_server, load_state

cfg = ModelConfig(image_size=64, patch_size=16, embed_dim=8, depth=2, heads=2)
save_model(init_params(cfg, seed=1, label_mean=200.0), cfg, "demo_model.bin")

state = load_state("demo_model.bin", sim_workers=2, time_budget_ms=30_000)
server = create_server(state, port=0)
threading.Thread(target=server.serve_forever, daemon=True).start()
base = f"http://127.0.0.1:{server.server_address[1]}"
print("serving on", base)


def get(path):
    with urllib.request.urlopen(base + path, timeout=30) as r:
        return json.loads(r.read())


def post(path, body):
    req = urllib.request.Request(
        base + path, data=json.dumps(body).encode(),
        headers={"Content-Type": "application/json"},
    )
    with urllib.request.urlopen(req, timeout=60) as r:
        return json.loads(r.read())


print("healthz:", get("/healthz"))
print("catalog:", [e["kind"] for e in get("/api/catalog")])

layout = layout_to_json(sample_layout(seed=3, n_objects=4))

pred = post("/api/predict", layout)
print(f"predicted resets: {pred['predicted_resets']:.2f} "
      f"(latency {pred['latency_ms']:.1f} ms, model {pred['model_version']})")

truth = post("/api/simulate", {"layout": layout, "paths": 5, "seed": 42})
print(f"simulated ground truth: {truth['mean']:.1f} +/- {truth['std']:.1f} "
      f"over {len(truth['per_path'])} paths")

server.shutdown()
server.server_close()
