"""Dataset construction, JSONL persistence, splitting, and augmentation.

A sample pairs a layout with its per-path simulated reset counts and their
mean (the regression label, kept real-valued).  Files are JSON Lines with a
version header; field order and float formatting are fixed so identical
seeds reproduce byte-identical files.
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, replace

import numpy as np

from .geometry import BinaryImage
from .layout import (
    InfeasibleLayoutError,
    Layout,
    layout_from_json,
    layout_to_json,
    sample_layout,
)
from .rdwsim import SimConfig, estimate_resets
from .rng import mix
from .stats import StatsReport, analyze_groups

log = logging.getLogger(__name__)

FORMAT_NAME = "roomroam-dataset"
FORMAT_VERSION = 1

SPLITS = ("train", "val", "test", "unassigned")

# Stream-index tags so layout sampling, simulation, splitting, and
# augmentation never share a derived seed.
_TAG_LAYOUT = 1
_TAG_SIM = 2
_TAG_SPLIT = 3
_TAG_AUGMENT = 4


class DatasetFormatError(ValueError):
    """Dataset file violates the JSONL schema or version header."""


@dataclass(frozen=True)
class Sample:
    id: str
    layout: Layout
    per_path_resets: list[int]
    mean_resets: float
    split: str = "unassigned"

    def __post_init__(self):
        if not self.per_path_resets:
            raise ValueError("per_path_resets must be non-empty")
        mean = sum(self.per_path_resets) / len(self.per_path_resets)
        if abs(mean - self.mean_resets) > 1e-9:
            raise ValueError(
                f"mean_resets {self.mean_resets} != mean(per_path_resets) {mean}"
            )
        if self.split not in SPLITS:
            raise ValueError(f"split must be one of {SPLITS}, got {self.split!r}")


def build_dataset(
    layout_counts: dict[int, int],
    cfg: SimConfig,
    paths: int,
    seed: int,
    workers: int | None = None,
) -> list[Sample]:
    """Sample layouts per group size and simulate their reset estimates.

    Groups are keyed by object count; sample ids are "g{n}-{index}".
    Infeasible draws (sampling or simulation) are logged, skipped, and
    replaced; seeds are namespaced per (group, slot, attempt) so results do
    not depend on worker scheduling or on failures in other slots.
    """
    samples: list[Sample] = []
    for n in sorted(layout_counts):
        count = layout_counts[n]
        if count < 0:
            raise ValueError(f"negative count for group {n}")
        for index in range(count):
            attempt = 0
            while True:
                try:
                    layout = sample_layout(mix(seed, _TAG_LAYOUT, n, index, attempt), n)
                    est = estimate_resets(
                        layout, cfg, paths, mix(seed, _TAG_SIM, n, index, attempt),
                        workers=workers,
                    )
                    break
                except InfeasibleLayoutError as e:
                    log.warning(
                        "g%d-%d attempt %d infeasible (%s); resampling", n, index, attempt, e
                    )
                    attempt += 1
                    if attempt > 100:
                        raise
            samples.append(
                Sample(
                    id=f"g{n}-{index}",
                    layout=layout,
                    per_path_resets=est.per_path,
                    mean_resets=est.mean,
                )
            )
    return samples


def split(
    samples: list[Sample],
    ratios: tuple[float, float, float] = (0.6, 0.2, 0.2),
    seed: int = 0,
) -> list[Sample]:
    """Assign train/val/test labels by a seeded permutation of sample ids.

    Counts are floor-based for val and test with the remainder going to
    train; assignment depends only on the id set and the seed, not on the
    input order.  Returns relabeled copies in the input order.
    """
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError(f"ratios must sum to 1, got {ratios}")
    if not samples:
        return []
    ids = sorted(s.id for s in samples)
    if len(set(ids)) != len(ids):
        raise ValueError("sample ids must be unique")
    rng = random.Random(mix(seed, _TAG_SPLIT))
    # Fisher-Yates on the sorted ids, driven by rng.random() only.
    for i in range(len(ids) - 1, 0, -1):
        j = min(int(rng.random() * (i + 1)), i)
        ids[i], ids[j] = ids[j], ids[i]
    n = len(ids)
    n_val = int(ratios[1] * n)
    n_test = int(ratios[2] * n)
    n_train = n - n_val - n_test
    label_of = {}
    for pos, sid in enumerate(ids):
        if pos < n_train:
            label_of[sid] = "train"
        elif pos < n_train + n_val:
            label_of[sid] = "val"
        else:
            label_of[sid] = "test"
    return [replace(s, split=label_of[s.id]) for s in samples]


def augment(
    image: BinaryImage, label: float, seed: int, prob: float = 0.05
) -> tuple[BinaryImage, float]:
    """Random label-preserving dihedral augmentation of a square image.

    Five transforms (horizontal flip, vertical flip, rotations by 90, 180,
    270 degrees) are each applied independently with probability `prob`, in
    that fixed order; the label never changes.
    """
    rng = random.Random(mix(seed, _TAG_AUGMENT))
    px = image.pixels
    draws = [rng.random() < prob for _ in range(5)]
    if any(draws[2:]) and px.shape[0] != px.shape[1]:
        raise ValueError("rotations require a square image")
    if draws[0]:
        px = np.fliplr(px)
    if draws[1]:
        px = np.flipud(px)
    if draws[2]:
        px = np.rot90(px, 1)
    if draws[3]:
        px = np.rot90(px, 2)
    if draws[4]:
        px = np.rot90(px, 3)
    return BinaryImage(np.ascontiguousarray(px)), label


def analyze(samples: list[Sample]) -> StatsReport:
    """Study-style report: group mean resets by object count, run the
    omnibus rank and variance tests across groups."""
    by_count: dict[int, list[float]] = {}
    for s in samples:
        by_count.setdefault(len(s.layout.objects), []).append(s.mean_resets)
    groups = [by_count[k] for k in sorted(by_count)]
    return analyze_groups(groups)


# --- JSONL persistence ------------------------------------------------------


def _sample_to_json(sample: Sample) -> dict:
    lj = layout_to_json(sample.layout)
    return {
        "id": sample.id,
        "room": lj["room"],
        "objects": lj["objects"],
        "per_path_resets": list(sample.per_path_resets),
        "mean_resets": sample.mean_resets,
        "split": sample.split,
    }


def _sample_from_json(data: dict) -> Sample:
    try:
        layout = layout_from_json({"room": data["room"], "objects": data["objects"]})
        return Sample(
            id=str(data["id"]),
            layout=layout,
            per_path_resets=[int(x) for x in data["per_path_resets"]],
            mean_resets=float(data["mean_resets"]),
            split=str(data.get("split", "unassigned")),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise DatasetFormatError(f"bad sample record: {e}") from e


def dumps_dataset(samples: list[Sample]) -> str:
    lines = [json.dumps({"format": FORMAT_NAME, "version": FORMAT_VERSION})]
    lines += [json.dumps(_sample_to_json(s)) for s in samples]
    return "\n".join(lines) + "\n"


def write_dataset(samples: list[Sample], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dumps_dataset(samples))


def loads_dataset(text: str) -> list[Sample]:
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines:
        raise DatasetFormatError("empty dataset file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as e:
        raise DatasetFormatError(f"bad header line: {e}") from e
    if header.get("format") != FORMAT_NAME or header.get("version") != FORMAT_VERSION:
        raise DatasetFormatError(
            f"expected header {{'format': '{FORMAT_NAME}', 'version': {FORMAT_VERSION}}}, "
            f"got {header!r}"
        )
    return [_sample_from_json(json.loads(ln)) for ln in lines[1:]]


def read_dataset(path) -> list[Sample]:
    with open(path, "r", encoding="utf-8") as f:
        return loads_dataset(f.read())
