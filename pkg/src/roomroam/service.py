"""HTTP service: real-time prediction, on-demand simulation, catalog.

A small stdlib JSON-over-HTTP server; endpoints:

* ``POST /api/predict``  layout JSON -> predicted resets + rollout heatmap
* ``POST /api/simulate`` {layout, paths, seed} -> ground-truth estimate
* ``GET  /api/catalog``  furniture specs
* ``GET  /healthz``      200 with the model version once a model is loaded

Handlers are stateless over an immutable loaded model, so concurrent
requests interleave freely; simulation jobs run on a bounded worker pool
behind a response-time budget.  Error bodies are structured JSON
{code, message, detail}.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor, TimeoutError as FutureTimeout
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import model as model_lib
from .geometry import rasterize
from .layout import (
    InfeasibleLayoutError,
    Layout,
    LayoutError,
    SchemaError,
    catalog,
    layout_from_json,
    validate_layout,
)
from .rdwsim import SimConfig, estimate_resets

MAX_SIMULATE_PATHS = 100


@dataclass
class ServiceState:
    """Everything a handler needs; immutable after startup."""

    params: dict | None = None
    model_config: model_lib.ModelConfig | None = None
    model_version: str = ""
    sim_config: SimConfig = SimConfig()
    time_budget_ms: float = 30_000.0
    cors_origin: str = "*"
    executor: ThreadPoolExecutor | None = None

    @property
    def model_loaded(self) -> bool:
        return self.params is not None


def load_state(
    model_path: str | None,
    sim_workers: int = 2,
    time_budget_ms: float = 30_000.0,
    cors_origin: str = "*",
) -> ServiceState:
    state = ServiceState(
        time_budget_ms=time_budget_ms,
        cors_origin=cors_origin,
        executor=ThreadPoolExecutor(max_workers=max(1, sim_workers)),
    )
    if model_path:
        with open(model_path, "rb") as f:
            blob = f.read()
        params, config = model_lib.deserialize(blob)
        state.params = params
        state.model_config = config
        state.model_version = hashlib.sha256(blob).hexdigest()[:12]
    return state


def predict_payload(state: ServiceState, layout: Layout) -> dict:
    """Shared prediction path (used verbatim by the CLI for consistency)."""
    image = rasterize(
        layout.room,
        [o.footprint for o in layout.objects],
        state.model_config.image_size,
    )
    pred = model_lib.predict(state.params, state.model_config, image)
    return {
        "predicted_resets": float(pred.resets),
        "heatmap": [[float(x) for x in row] for row in pred.heatmap],
        "model_version": state.model_version,
    }


class _ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, detail=None):
        self.status = status
        self.body = {"code": code, "message": message, "detail": detail}
        super().__init__(message)


def _parse_request_layout(data) -> Layout:
    try:
        layout = layout_from_json(data)
    except SchemaError as e:
        raise _ApiError(400, "schema_error", str(e), detail=e.path) from e
    try:
        validate_layout(layout)
    except LayoutError as e:
        raise _ApiError(422, "invalid_layout", str(e)) from e
    return layout


def _handle_predict(state: ServiceState, body: dict) -> dict:
    if not state.model_loaded:
        raise _ApiError(503, "model_not_loaded", "no model is loaded")
    layout = _parse_request_layout(body)
    t0 = time.perf_counter()
    payload = predict_payload(state, layout)
    payload["latency_ms"] = (time.perf_counter() - t0) * 1e3
    return payload


def _handle_simulate(state: ServiceState, body: dict) -> dict:
    if not isinstance(body, dict):
        raise _ApiError(400, "schema_error", "body must be a JSON object")
    paths = body.get("paths", 10)
    seed = body.get("seed", 0)
    if not isinstance(paths, int) or isinstance(paths, bool) or not 1 <= paths <= MAX_SIMULATE_PATHS:
        raise _ApiError(
            400, "bad_paths", f"paths must be an integer in [1, {MAX_SIMULATE_PATHS}]"
        )
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise _ApiError(400, "bad_seed", "seed must be an integer")
    layout = _parse_request_layout(body.get("layout"))
    future = state.executor.submit(
        estimate_resets, layout, state.sim_config, paths, seed
    )
    try:
        est = future.result(timeout=state.time_budget_ms / 1e3)
    except FutureTimeout:
        raise _ApiError(
            504, "time_budget_exceeded",
            f"simulation exceeded {state.time_budget_ms:.0f} ms",
        ) from None
    except InfeasibleLayoutError as e:
        raise _ApiError(422, "infeasible_layout", str(e)) from e
    return {"per_path": est.per_path, "mean": est.mean, "std": est.std}


def _handle_catalog(_: ServiceState) -> list:
    return [
        {"kind": s.kind, "half_extents_m": [s.half_extents[0], s.half_extents[1]]}
        for s in catalog()
    ]


def make_handler(state: ServiceState):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, fmt, *args):  # quiet by default
            pass

        def _send(self, status: int, payload) -> None:
            body = json.dumps(payload).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", state.cors_origin)
            self.end_headers()
            self.wfile.write(body)

        def do_OPTIONS(self):
            self.send_response(204)
            self.send_header("Access-Control-Allow-Origin", state.cors_origin)
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Content-Length", "0")
            self.end_headers()

        def do_GET(self):
            if self.path == "/healthz":
                if state.model_loaded:
                    self._send(200, {"status": "ok", "model_version": state.model_version})
                else:
                    self._send(503, {"status": "no_model", "model_version": None})
            elif self.path == "/api/catalog":
                self._send(200, _handle_catalog(state))
            else:
                self._send(404, {"code": "not_found", "message": self.path, "detail": None})

        def do_POST(self):
            try:
                length = int(self.headers.get("Content-Length", 0))
                raw = self.rfile.read(length) if length else b""
                try:
                    body = json.loads(raw.decode("utf-8")) if raw else {}
                except (json.JSONDecodeError, UnicodeDecodeError) as e:
                    raise _ApiError(400, "schema_error", f"invalid JSON body: {e}")
                if self.path == "/api/predict":
                    self._send(200, _handle_predict(state, body))
                elif self.path == "/api/simulate":
                    self._send(200, _handle_simulate(state, body))
                else:
                    self._send(404, {"code": "not_found", "message": self.path, "detail": None})
            except _ApiError as e:
                self._send(e.status, e.body)
            except Exception as e:  # last-resort: keep the connection sane
                self._send(500, {"code": "internal", "message": str(e), "detail": None})

    return Handler


def create_server(state: ServiceState, host: str = "127.0.0.1", port: int = 0) -> ThreadingHTTPServer:
    server = ThreadingHTTPServer((host, port), make_handler(state))
    server.daemon_threads = True
    return server


def add_serve_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", help="model file (ROOMROAM_MODEL overrides)")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8080)
    parser.add_argument("--sim-workers", type=int, default=2)
    parser.add_argument("--time-budget-ms", type=float, default=30_000.0)
    parser.add_argument("--cors-origin", default="*")


def serve_from_args(args) -> None:
    model_path = os.environ.get("ROOMROAM_MODEL") or args.model
    state = load_state(
        model_path,
        sim_workers=args.sim_workers,
        time_budget_ms=args.time_budget_ms,
        cors_origin=args.cors_origin,
    )
    server = create_server(state, host=args.host, port=args.port)
    print(
        f"serving on http://{args.host}:{server.server_address[1]} "
        f"(model={'loaded ' + state.model_version if state.model_loaded else 'none'})",
        flush=True,
    )
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
