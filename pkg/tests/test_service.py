"""HTTP service endpoints, error contracts, and CLI consistency."""

from __future__ import annotations

import json
import threading
import urllib.error
import urllib.request
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from roomroam.layout import layout_to_json, sample_layout
from roomroam.model import ModelConfig, init_params, save_model
from roomroam.service import create_server, load_state

TOY = ModelConfig(image_size=64, patch_size=16, embed_dim=8, depth=2, heads=2)


def _request(base, path, body=None, method=None):
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(
        base + path, data=data, method=method or ("POST" if data else "GET"),
        headers={"Content-Type": "application/json"},
    )
    try:
        with urllib.request.urlopen(req, timeout=30) as resp:
            return resp.status, json.loads(resp.read().decode())
    except urllib.error.HTTPError as e:
        return e.code, json.loads(e.read().decode())


@pytest.fixture(scope="module")
def model_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("model") / "toy.bin"
    save_model(init_params(TOY, seed=1, label_mean=100.0), TOY, path)
    return path


@pytest.fixture(scope="module")
def server(model_file):
    state = load_state(str(model_file), sim_workers=2, time_budget_ms=30_000)
    srv = create_server(state, port=0)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{srv.server_address[1]}", state
    srv.shutdown()
    srv.server_close()


@pytest.fixture(scope="module")
def modelless_server():
    state = load_state(None)
    srv = create_server(state, port=0)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{srv.server_address[1]}"
    srv.shutdown()
    srv.server_close()


def valid_layout_body(seed=3, n=3):
    return layout_to_json(sample_layout(seed, n))


class TestHealthz:
    def test_ok_with_model(self, server):
        base, state = server
        status, body = _request(base, "/healthz")
        assert status == 200
        assert body == {"status": "ok", "model_version": state.model_version}
        assert len(state.model_version) == 12

    def test_503_without_model(self, modelless_server):
        status, body = _request(modelless_server, "/healthz")
        assert status == 503
        assert body["status"] == "no_model"


class TestCatalog:
    def test_five_entries(self, server):
        base, _ = server
        status, body = _request(base, "/api/catalog")
        assert status == 200
        assert len(body) == 5
        kinds = {e["kind"] for e in body}
        assert "sofa" in kinds and "mini_fridge" in kinds
        for e in body:
            assert len(e["half_extents_m"]) == 2


class TestPredict:
    def test_valid_layout(self, server):
        base, _ = server
        status, body = _request(base, "/api/predict", valid_layout_body())
        assert status == 200
        assert np.isfinite(body["predicted_resets"])
        heat = np.asarray(body["heatmap"])
        assert heat.shape == (4, 4)
        assert heat.min() >= 0.0 and heat.max() <= 1.0
        assert body["latency_ms"] > 0

    def test_schema_error_400_with_field_path(self, server):
        base, _ = server
        bad = {"room": {"width_m": 5, "height_m": 5},
               "objects": [{"kind": "piano", "center_m": [0, 0], "rotation_deg": 0}]}
        status, body = _request(base, "/api/predict", bad)
        assert status == 400
        assert body["code"] == "schema_error"
        assert "objects[0].kind" in body["message"]

    def test_out_of_room_422(self, server):
        base, _ = server
        bad = {"room": {"width_m": 5, "height_m": 5},
               "objects": [{"kind": "sofa", "center_m": [2.4, 0.0], "rotation_deg": 0}]}
        status, body = _request(base, "/api/predict", bad)
        assert status == 422
        assert body["code"] == "invalid_layout"

    def test_overlap_422(self, server):
        base, _ = server
        bad = {"room": {"width_m": 5, "height_m": 5},
               "objects": [
                   {"kind": "sofa", "center_m": [0, 0], "rotation_deg": 0},
                   {"kind": "tv_stand", "center_m": [0.1, 0.1], "rotation_deg": 0},
               ]}
        status, body = _request(base, "/api/predict", bad)
        assert status == 422

    def test_no_model_503(self, modelless_server):
        status, body = _request(modelless_server, "/api/predict", valid_layout_body())
        assert status == 503
        assert body["code"] == "model_not_loaded"

    def test_concurrent_predictions_agree(self, server):
        base, _ = server
        body = valid_layout_body(seed=9, n=4)
        with ThreadPoolExecutor(max_workers=6) as pool:
            results = list(pool.map(
                lambda _: _request(base, "/api/predict", body), range(6)
            ))
        values = {r[1]["predicted_resets"] for r in results}
        assert len(values) == 1


class TestSimulate:
    def test_deterministic_single_path(self, server):
        base, _ = server
        body = {"layout": valid_layout_body(), "paths": 1, "seed": 5}
        s1, r1 = _request(base, "/api/simulate", body)
        s2, r2 = _request(base, "/api/simulate", body)
        assert s1 == s2 == 200
        assert r1 == r2
        assert len(r1["per_path"]) == 1

    def test_mean_is_average(self, server):
        base, _ = server
        status, r = _request(
            base, "/api/simulate", {"layout": valid_layout_body(), "paths": 3, "seed": 2}
        )
        assert status == 200
        assert r["mean"] == pytest.approx(sum(r["per_path"]) / 3)

    def test_paths_out_of_range(self, server):
        base, _ = server
        status, body = _request(
            base, "/api/simulate", {"layout": valid_layout_body(), "paths": 200, "seed": 0}
        )
        assert status == 400
        assert body["code"] == "bad_paths"

    def test_invalid_layout_422(self, server):
        base, _ = server
        bad = {"room": {"width_m": 5, "height_m": 5},
               "objects": [{"kind": "sofa", "center_m": [2.6, 0], "rotation_deg": 0}]}
        status, body = _request(base, "/api/simulate", {"layout": bad, "paths": 1, "seed": 0})
        assert status == 422

    def test_time_budget_504(self, model_file):
        state = load_state(str(model_file), sim_workers=1, time_budget_ms=1.0)
        srv = create_server(state, port=0)
        thread = threading.Thread(target=srv.serve_forever, daemon=True)
        thread.start()
        try:
            base = f"http://127.0.0.1:{srv.server_address[1]}"
            status, body = _request(
                base, "/api/simulate",
                {"layout": valid_layout_body(seed=1, n=5), "paths": 50, "seed": 0},
            )
            assert status == 504
            assert body["code"] == "time_budget_exceeded"
        finally:
            srv.shutdown()
            srv.server_close()


class TestCliConsistency:
    def test_cli_predict_matches_service(self, server, model_file, tmp_path, capsys):
        from roomroam.cli import run

        base, _ = server
        layout_body = valid_layout_body(seed=21, n=4)
        _, service_resp = _request(base, "/api/predict", layout_body)

        layout_path = tmp_path / "layout.json"
        layout_path.write_text(json.dumps(layout_body))
        assert run(["predict", "--model", str(model_file), "--layout", str(layout_path)]) == 0
        cli_resp = json.loads(capsys.readouterr().out)
        assert cli_resp["predicted_resets"] == service_resp["predicted_resets"]
        assert cli_resp["heatmap"] == service_resp["heatmap"]
        assert cli_resp["model_version"] == service_resp["model_version"]


class TestCors:
    def test_preflight(self, server):
        base, _ = server
        req = urllib.request.Request(base + "/api/predict", method="OPTIONS")
        with urllib.request.urlopen(req, timeout=10) as resp:
            assert resp.status == 204
            assert resp.headers["Access-Control-Allow-Origin"] == "*"
