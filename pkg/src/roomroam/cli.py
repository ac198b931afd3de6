"""Command-line entry points for the full pipeline.

Each command is a thin shell over the library: machine-readable JSON goes
to stdout, human diagnostics to stderr, and every stochastic step takes an
explicit --seed (no wall-clock seeding anywhere).  Exit codes: 0 success,
1 runtime failure (structured JSON error on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import service as service_lib
from .dataset import (
    Sample,
    analyze,
    build_dataset,
    read_dataset,
    split,
    write_dataset,
)
from .geometry import pgm_bytes
from .layout import (
    Layout,
    layout_from_json,
    layout_to_json,
    parse_layout,
    sample_layout,
    validate_layout,
)
from .model import load_model, save_model
from .rdwsim import SimConfig, estimate_resets
from .rng import mix
from .training import (
    ModelConfig,
    TrainConfig,
    evaluate,
    load_model_config,
    load_train_config,
    train,
    write_history_csv,
)

_TAG_GEN = 21
_TAG_SIM_FILE = 22

LAYOUTS_FORMAT = "roomroam-layouts"


def _parse_counts(text: str) -> dict[int, int]:
    """Parse '3:100,4:100,5:100' into {3: 100, 4: 100, 5: 100}."""
    counts: dict[int, int] = {}
    for part in text.split(","):
        n, _, c = part.partition(":")
        counts[int(n)] = int(c)
    return counts


def _write_layouts(records: list[dict], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(json.dumps({"format": LAYOUTS_FORMAT, "version": 1}) + "\n")
        for rec in records:
            f.write(json.dumps(rec) + "\n")


def _read_layouts(path) -> list[tuple[str, Layout]]:
    with open(path, "r", encoding="utf-8") as f:
        lines = [ln for ln in f.read().split("\n") if ln.strip()]
    if not lines:
        raise ValueError("empty layouts file")
    header = json.loads(lines[0])
    if header.get("format") != LAYOUTS_FORMAT:
        raise ValueError(f"not a layouts file: header {header!r}")
    out = []
    for ln in lines[1:]:
        rec = json.loads(ln)
        layout = layout_from_json({"room": rec["room"], "objects": rec["objects"]})
        validate_layout(layout)
        out.append((str(rec["id"]), layout))
    return out


def _load_layout_file(path) -> Layout:
    with open(path, "r", encoding="utf-8") as f:
        layout = parse_layout(f.read())
    validate_layout(layout)
    return layout


def _cmd_gen(args) -> int:
    counts = _parse_counts(args.counts)
    records = []
    for n in sorted(counts):
        for i in range(counts[n]):
            layout = sample_layout(mix(args.seed, _TAG_GEN, n, i), n)
            rec = {"id": f"g{n}-{i}"}
            rec.update(layout_to_json(layout))
            records.append(rec)
    _write_layouts(records, args.out)
    print(f"wrote {len(records)} layouts to {args.out}", file=sys.stderr)
    return 0


def _cmd_simulate(args) -> int:
    cfg = SimConfig()
    entries = _read_layouts(args.layouts)
    samples = []
    for index, (layout_id, layout) in enumerate(entries):
        est = estimate_resets(
            layout, cfg, args.paths, mix(args.seed, _TAG_SIM_FILE, index),
            workers=args.workers,
        )
        samples.append(
            Sample(
                id=layout_id,
                layout=layout,
                per_path_resets=est.per_path,
                mean_resets=est.mean,
            )
        )
        print(
            f"[{index + 1}/{len(entries)}] {layout_id}: mean={est.mean:.2f}",
            file=sys.stderr,
        )
    write_dataset(samples, args.out)
    return 0


def _cmd_build_dataset(args) -> int:
    cfg = SimConfig()
    samples = build_dataset(
        _parse_counts(args.counts), cfg, args.paths, args.seed, workers=args.workers
    )
    write_dataset(samples, args.out)
    print(f"wrote {len(samples)} samples to {args.out}", file=sys.stderr)
    return 0


def _cmd_train(args) -> int:
    samples = read_dataset(args.dataset)
    model_config = load_model_config(args.model_config) if args.model_config else ModelConfig()
    train_config = load_train_config(args.train_config) if args.train_config else TrainConfig()
    labeled = [s for s in samples if s.split != "unassigned"]
    if not labeled:
        if args.split_seed is None:
            raise ValueError(
                "dataset has no split labels; pass --split-seed (and optionally "
                "--split-ratios) to assign them"
            )
        ratios = tuple(float(x) for x in args.split_ratios.split(","))
        samples = split(samples, ratios=ratios, seed=args.split_seed)
        if args.out_dataset:
            write_dataset(samples, args.out_dataset)
            print(f"wrote split dataset to {args.out_dataset}", file=sys.stderr)
    elif len(labeled) != len(samples):
        raise ValueError("dataset is partially labeled; refusing to guess")

    params, history = train(samples, model_config, train_config)
    save_model(params, model_config, args.out)
    if args.history:
        write_history_csv(history, args.history)
    best = min(history, key=lambda h: h.val_loss)
    print(
        f"trained {len(history)} epochs; best val loss {best.val_loss:.6g} "
        f"at epoch {best.epoch}; model -> {args.out}",
        file=sys.stderr,
    )
    return 0


def _cmd_eval(args) -> int:
    params, model_config = load_model(args.model)
    samples = read_dataset(args.dataset)
    if args.split != "all":
        samples = [s for s in samples if s.split == args.split]
    if not samples:
        raise ValueError(f"no samples in split {args.split!r}")
    metrics = evaluate(params, model_config, samples)
    print(json.dumps({"rmse": metrics.rmse, "mae": metrics.mae, "r2": metrics.r2}))
    return 0


def _predict_state(model_path: str):
    state = service_lib.load_state(model_path)
    if not state.model_loaded:
        raise ValueError("a model file is required")
    return state


def _cmd_predict(args) -> int:
    state = _predict_state(args.model)
    layout = _load_layout_file(args.layout)
    print(json.dumps(service_lib.predict_payload(state, layout)))
    return 0


def _cmd_rollout(args) -> int:
    state = _predict_state(args.model)
    layout = _load_layout_file(args.layout)
    payload = service_lib.predict_payload(state, layout)
    heat = np.asarray(payload["heatmap"], dtype=np.float64)
    gray = np.round(heat * 255.0).astype(np.uint8)
    with open(args.out, "wb") as f:
        f.write(pgm_bytes(gray))
    print(f"wrote {gray.shape[0]}x{gray.shape[1]} heatmap to {args.out}", file=sys.stderr)
    return 0


def _cmd_analyze(args) -> int:
    samples = read_dataset(args.dataset)
    report = analyze(samples)
    print(json.dumps(report.to_json()))
    return 0


def _cmd_serve(args) -> int:
    service_lib.serve_from_args(args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="roomroam", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="sample random layouts to a JSONL file")
    p.add_argument("--counts", required=True, help="e.g. 3:100,4:100,5:100")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("simulate", help="simulate reset estimates for layouts")
    p.add_argument("--layouts", required=True)
    p.add_argument("--paths", type=int, default=30)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("build-dataset", help="gen + simulate fused")
    p.add_argument("--counts", required=True)
    p.add_argument("--paths", type=int, default=30)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_build_dataset)

    p = sub.add_parser("train", help="train the regressor on a dataset")
    p.add_argument("--dataset", required=True)
    p.add_argument("--model-config", help="key=value file; defaults to full scale")
    p.add_argument("--train-config", help="key=value file; defaults to study settings")
    p.add_argument("--out", required=True, help="output model file")
    p.add_argument("--history", help="per-epoch CSV")
    p.add_argument("--split-seed", type=int, default=None,
                   help="assign 6:2:2 splits first (unlabeled datasets)")
    p.add_argument("--split-ratios", default="0.6,0.2,0.2")
    p.add_argument("--out-dataset", help="write the split-labeled dataset here")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("eval", help="RMSE/MAE/R2 on a dataset split")
    p.add_argument("--model", required=True)
    p.add_argument("--dataset", required=True)
    p.add_argument("--split", default="test", choices=["train", "val", "test", "all"])
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("predict", help="predict resets for one layout JSON")
    p.add_argument("--model", required=True)
    p.add_argument("--layout", required=True)
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("rollout", help="attention heatmap for one layout as PGM")
    p.add_argument("--model", required=True)
    p.add_argument("--layout", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_rollout)

    p = sub.add_parser("analyze", help="group statistics of a dataset")
    p.add_argument("--dataset", required=True)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("serve", help="run the HTTP service")
    service_lib.add_serve_args(p)
    p.set_defaults(func=_cmd_serve)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError, FloatingPointError) as e:
        print(
            json.dumps({"error": {"code": type(e).__name__, "message": str(e)}}),
            file=sys.stderr,
        )
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
