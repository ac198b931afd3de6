"""CLI commands: pipeline closure, determinism, error contracts."""

from __future__ import annotations

import hashlib
import json

import numpy as np
import pytest

from roomroam.cli import run
from roomroam.dataset import Sample, read_dataset, write_dataset
from roomroam.layout import sample_layout
from roomroam.model import ModelConfig, param_shapes, save_model
from roomroam.training import load_model_config

TOY_MODEL_CFG = (
    "image_size = 64\npatch_size = 16\nembed_dim = 8\ndepth = 2\nheads = 2\n"
)
TOY_TRAIN_CFG = (
    "batch_size = 8\nmax_lr = 1e-3\nepochs = 10\npatience = 9\nseed = 3\n"
    "augment_prob = 0.05\n"
)


def sha(path):
    return hashlib.sha256(path.read_bytes()).hexdigest()


class TestGen:
    def test_deterministic_output_file(self, tmp_path, capsys):
        a = tmp_path / "a.jsonl"
        b = tmp_path / "b.jsonl"
        assert run(["gen", "--counts", "3:3,4:2", "--seed", "7", "--out", str(a)]) == 0
        assert run(["gen", "--counts", "3:3,4:2", "--seed", "7", "--out", str(b)]) == 0
        assert sha(a) == sha(b)
        lines = a.read_text().strip().split("\n")
        assert json.loads(lines[0])["format"] == "roomroam-layouts"
        assert len(lines) == 6
        ids = [json.loads(ln)["id"] for ln in lines[1:]]
        assert ids == ["g3-0", "g3-1", "g3-2", "g4-0", "g4-1"]

    def test_usage_error_exit_2(self):
        with pytest.raises(SystemExit) as exc:
            run(["gen", "--counts", "3:1"])  # missing --seed/--out
        assert exc.value.code == 2

    def test_unknown_command_exit_2(self):
        with pytest.raises(SystemExit) as exc:
            run(["frobnicate"])
        assert exc.value.code == 2


class TestRuntimeErrors:
    def test_missing_file_exit_1_with_json_error(self, tmp_path, capsys):
        code = run(["analyze", "--dataset", str(tmp_path / "nope.jsonl")])
        assert code == 1
        err = capsys.readouterr().err
        payload = json.loads(err.strip().split("\n")[-1])
        assert "error" in payload


class TestAnalyze:
    def test_identical_groups_zero_h(self, tmp_path, capsys):
        samples = []
        for n, tag in ((3, "a"), (4, "b"), (5, "c")):
            lay = sample_layout(n, n)
            for i in range(3):
                samples.append(
                    Sample(id=f"{tag}{i}", layout=lay, per_path_resets=[7], mean_resets=7.0)
                )
        path = tmp_path / "d.jsonl"
        write_dataset(samples, path)
        assert run(["analyze", "--dataset", str(path)]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["kw_h"] == 0.0
        assert report["kw_p"] == 1.0


class TestEval:
    def test_perfect_model_r2_one(self, tmp_path, capsys):
        # All-zero weights with head bias c predict exactly c; labels all c.
        cfg = ModelConfig(image_size=64, patch_size=16, embed_dim=8, depth=1, heads=2)
        params = {k: np.zeros(s) for k, s in param_shapes(cfg).items()}
        params["head.bias"] = np.array([6.0])
        model_path = tmp_path / "m.bin"
        save_model(params, cfg, model_path)
        samples = [
            Sample(id=f"s{i}", layout=sample_layout(i, 3), per_path_resets=[6],
                   mean_resets=6.0, split="test")
            for i in range(4)
        ]
        data_path = tmp_path / "d.jsonl"
        write_dataset(samples, data_path)
        assert run(["eval", "--model", str(model_path), "--dataset", str(data_path),
                    "--split", "test"]) == 0
        metrics = json.loads(capsys.readouterr().out)
        assert metrics["rmse"] == 0.0
        assert abs(metrics["r2"] - 1.0) < 1e-9


class TestPipelineClosure:
    def test_gen_simulate_train_eval_predict_rollout(self, tmp_path, capsys):
        layouts = tmp_path / "layouts.jsonl"
        dataset = tmp_path / "dataset.jsonl"
        labeled = tmp_path / "labeled.jsonl"
        model = tmp_path / "model.bin"
        hist = tmp_path / "hist.csv"
        mcfg = tmp_path / "model.cfg"
        tcfg = tmp_path / "train.cfg"
        mcfg.write_text(TOY_MODEL_CFG)
        tcfg.write_text(TOY_TRAIN_CFG)

        assert run(["gen", "--counts", "3:3,4:3,5:3", "--seed", "11", "--out",
                    str(layouts)]) == 0
        assert run(["simulate", "--layouts", str(layouts), "--paths", "2",
                    "--seed", "5", "--out", str(dataset)]) == 0
        samples = read_dataset(dataset)
        assert len(samples) == 9
        assert all(len(s.per_path_resets) == 2 for s in samples)

        assert run(["train", "--dataset", str(dataset), "--model-config", str(mcfg),
                    "--train-config", str(tcfg), "--out", str(model),
                    "--history", str(hist), "--split-seed", "42",
                    "--split-ratios", "0.6,0.2,0.2",
                    "--out-dataset", str(labeled)]) == 0
        assert model.exists() and hist.exists() and labeled.exists()

        assert run(["eval", "--model", str(model), "--dataset", str(labeled),
                    "--split", "test"]) == 0
        metrics = json.loads(capsys.readouterr().out)
        assert np.isfinite(metrics["rmse"]) and metrics["rmse"] >= metrics["mae"]

        layout_file = tmp_path / "one.json"
        rec = json.loads(labeled.read_text().strip().split("\n")[1])
        layout_file.write_text(json.dumps({"room": rec["room"], "objects": rec["objects"]}))
        assert run(["predict", "--model", str(model), "--layout", str(layout_file)]) == 0
        pred = json.loads(capsys.readouterr().out)
        assert np.isfinite(pred["predicted_resets"])
        assert np.asarray(pred["heatmap"]).shape == (4, 4)

        heat = tmp_path / "heat.pgm"
        assert run(["rollout", "--model", str(model), "--layout", str(layout_file),
                    "--out", str(heat)]) == 0
        data = heat.read_bytes()
        assert data.startswith(b"P5\n4 4\n255\n")
        assert len(data) == len(b"P5\n4 4\n255\n") + 16

        assert run(["analyze", "--dataset", str(labeled)]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["group_sizes"] == [3, 3, 3]

    def test_train_requires_split_info(self, tmp_path, capsys):
        dataset = tmp_path / "d.jsonl"
        samples = [
            Sample(id=f"s{i}", layout=sample_layout(i, 3), per_path_resets=[i],
                   mean_resets=float(i))
            for i in range(5)
        ]
        write_dataset(samples, dataset)
        code = run(["train", "--dataset", str(dataset), "--out", str(tmp_path / "m.bin")])
        assert code == 1
        err = json.loads(capsys.readouterr().err.strip().split("\n")[-1])
        assert "split" in err["error"]["message"]


class TestConfigDefaults:
    def test_model_config_file_round_trip(self, tmp_path):
        p = tmp_path / "m.cfg"
        p.write_text(TOY_MODEL_CFG)
        cfg = load_model_config(p)
        assert cfg.image_size == 64 and cfg.embed_dim == 8
