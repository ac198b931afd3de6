"""Training loop: one-cycle learning rate, momentum SGD, early stopping.

The schedule warms the learning rate cosine-wise from max_lr / div_factor
up to max_lr over the first pct_start of the run, then anneals down to
max_lr / (div_factor * final_div_factor); momentum anti-cycles from its
high end down to its low end and back.  Weight decay is decoupled (applied
at the update, skipping biases and norm parameters) and improvement must
beat the best validation loss by more than 1e-12 to reset patience, so
float noise cannot stall early stopping.
"""

from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass

import numpy as np

from .dataset import Sample, augment
from .geometry import BinaryImage, rasterize
from .model import ModelConfig, ModelParams, NumericError, _forward_batch, backward, init_params
from .rng import mix

_TAG_SHUFFLE = 11
_TAG_AUG = 12
_IMPROVE_EPS = 1e-12


class TrainConfigError(ValueError):
    """Training configuration or dataset splits unusable."""


@dataclass(frozen=True)
class TrainConfig:
    batch_size: int = 64
    max_lr: float = 1e-6
    epochs: int = 500
    weight_decay: float = 1e-4
    patience: int = 30
    augment_prob: float = 0.05
    seed: int = 0
    pct_start: float = 0.3
    div_factor: float = 25.0
    final_div_factor: float = 1e4
    momentum_range: tuple[float, float] = (0.85, 0.95)

    def __post_init__(self):
        if self.batch_size < 1 or self.epochs < 1 or self.patience < 1:
            raise TrainConfigError("batch_size, epochs, patience must be >= 1")
        if self.patience >= self.epochs:
            raise TrainConfigError("patience must be smaller than epochs")
        if not (self.max_lr > 0 and self.div_factor > 0 and self.final_div_factor > 0):
            raise TrainConfigError("learning-rate constants must be positive")
        if not 0.0 < self.pct_start < 1.0:
            raise TrainConfigError("pct_start must be in (0, 1)")
        if not 0.0 <= self.augment_prob <= 1.0:
            raise TrainConfigError("augment_prob must be in [0, 1]")
        lo, hi = self.momentum_range
        if not 0.0 <= lo <= hi < 1.0:
            raise TrainConfigError("momentum_range must be ordered within [0, 1)")
        if self.weight_decay < 0:
            raise TrainConfigError("weight_decay must be >= 0")


@dataclass(frozen=True)
class Metrics:
    rmse: float
    mae: float
    r2: float


@dataclass(frozen=True)
class EpochStats:
    epoch: int  # 1-based
    train_loss: float
    val_loss: float
    lr: float


def peak_step(total_steps: int, cfg: TrainConfig) -> int:
    """Step index at which the learning rate tops out at max_lr."""
    return int(round(cfg.pct_start * (total_steps - 1)))


def one_cycle_lr(step: int, total_steps: int, cfg: TrainConfig) -> tuple[float, float]:
    """(learning rate, momentum) at an optimizer step.

    Cosine warmup to max_lr at peak_step, cosine anneal to the final floor
    at the last step; momentum runs the inverse cycle between its range
    endpoints (high at the ends, low at the peak).
    """
    if not 0 <= step < total_steps:
        raise ValueError(f"step {step} outside [0, {total_steps})")
    lr_start = cfg.max_lr / cfg.div_factor
    lr_final = cfg.max_lr / (cfg.div_factor * cfg.final_div_factor)
    m_lo, m_hi = cfg.momentum_range
    peak = peak_step(total_steps, cfg)
    if total_steps == 1 or (step == peak):
        return cfg.max_lr, m_lo
    if step < peak:
        t = step / peak
        lr = lr_start + (cfg.max_lr - lr_start) * 0.5 * (1.0 - math.cos(math.pi * t))
        mom = m_hi + (m_lo - m_hi) * 0.5 * (1.0 - math.cos(math.pi * t))
    else:
        t = (step - peak) / (total_steps - 1 - peak)
        lr = lr_final + (cfg.max_lr - lr_final) * 0.5 * (1.0 + math.cos(math.pi * t))
        mom = m_lo + (m_hi - m_lo) * 0.5 * (1.0 - math.cos(math.pi * t))
    return lr, mom


def _decayable(name: str, tensor: np.ndarray) -> bool:
    # Decoupled weight decay touches matrices only; biases, norm scales,
    # and the class token stay unregularized.
    return tensor.ndim >= 2


def sample_image(sample: Sample, image_size: int) -> BinaryImage:
    """Rasterize a sample's layout at the model's input resolution."""
    return rasterize(
        sample.layout.room, [o.footprint for o in sample.layout.objects], image_size
    )


def _eval_loss(params: ModelParams, config: ModelConfig, images: np.ndarray, labels: np.ndarray) -> float:
    preds, _, _ = _forward_batch(params, config, images, need_cache=False)
    return float(np.mean((preds - labels) ** 2))


def train(
    samples: list[Sample],
    model_config: ModelConfig,
    cfg: TrainConfig,
    params: ModelParams | None = None,
) -> tuple[ModelParams, list[EpochStats]]:
    """Fit the regressor on the train split, early-stopping on the val split.

    Each epoch reshuffles the train split with a seeded permutation and
    re-augments every image online; batches update with momentum SGD plus
    decoupled weight decay under the one-cycle schedule.  Returns the
    parameters of the best validation epoch and the per-epoch history.
    Pass `params` to fine-tune existing weights (e.g. an imported backbone).
    """
    train_samples = [s for s in samples if s.split == "train"]
    val_samples = [s for s in samples if s.split == "val"]
    if not train_samples or not val_samples:
        raise TrainConfigError("dataset needs non-empty train and val splits")

    train_images = [sample_image(s, model_config.image_size) for s in train_samples]
    train_labels = np.array([s.mean_resets for s in train_samples], dtype=np.float64)
    val_batch = np.stack(
        [sample_image(s, model_config.image_size).pixels for s in val_samples]
    )
    val_labels = np.array([s.mean_resets for s in val_samples], dtype=np.float64)

    if params is None:
        params = init_params(
            model_config, seed=mix(cfg.seed), label_mean=float(train_labels.mean())
        )
    params = {k: np.asarray(v, dtype=np.float64).copy() for k, v in params.items()}
    velocity = {k: np.zeros_like(v) for k, v in params.items()}

    n = len(train_samples)
    steps_per_epoch = (n + cfg.batch_size - 1) // cfg.batch_size
    total_steps = cfg.epochs * steps_per_epoch

    history: list[EpochStats] = []
    best_val = math.inf
    best_params = {k: v.copy() for k, v in params.items()}
    stale = 0
    global_step = 0

    for epoch in range(1, cfg.epochs + 1):
        order = list(range(n))
        shuffle_rng = random.Random(mix(cfg.seed, _TAG_SHUFFLE, epoch))
        for i in range(n - 1, 0, -1):
            j = min(int(shuffle_rng.random() * (i + 1)), i)
            order[i], order[j] = order[j], order[i]

        epoch_sq_sum = 0.0
        last_lr = 0.0
        for start in range(0, n, cfg.batch_size):
            idx = order[start : start + cfg.batch_size]
            imgs = []
            for i in idx:
                img, _ = augment(
                    train_images[i],
                    float(train_labels[i]),
                    mix(cfg.seed, _TAG_AUG, epoch, i),
                    prob=cfg.augment_prob,
                )
                imgs.append(img.pixels)
            batch = np.stack(imgs)
            labels = train_labels[idx]
            try:
                loss, grads = backward(params, model_config, batch, labels)
            except NumericError as e:
                raise FloatingPointError(
                    f"NaN loss at epoch {epoch}, batch {start // cfg.batch_size} "
                    f"(encoder block {e.layer_index})"
                ) from e
            if math.isnan(loss):
                raise FloatingPointError(
                    f"NaN loss at epoch {epoch}, batch {start // cfg.batch_size}"
                )
            lr, mom = one_cycle_lr(global_step, total_steps, cfg)
            last_lr = lr
            for name in params:
                velocity[name] = mom * velocity[name] + grads[name]
                params[name] -= lr * velocity[name]
                if cfg.weight_decay and _decayable(name, params[name]):
                    params[name] -= lr * cfg.weight_decay * params[name]
            epoch_sq_sum += loss * len(idx)
            global_step += 1

        train_loss = epoch_sq_sum / n
        val_loss = _eval_loss(params, model_config, val_batch, val_labels)
        history.append(EpochStats(epoch, train_loss, val_loss, last_lr))

        if val_loss < best_val - _IMPROVE_EPS:
            best_val = val_loss
            best_params = {k: v.copy() for k, v in params.items()}
            stale = 0
        else:
            stale += 1
            if stale >= cfg.patience:
                break
    return best_params, history


def evaluate(params: ModelParams, model_config: ModelConfig, samples: list[Sample]) -> Metrics:
    """RMSE / MAE / R^2 of the model over samples (no augmentation).

    With zero label variance and nonzero residuals, R^2 is reported as
    -inf (the documented degenerate sentinel).
    """
    if not samples:
        raise ValueError("samples must be non-empty")
    batch = np.stack([sample_image(s, model_config.image_size).pixels for s in samples])
    labels = np.array([s.mean_resets for s in samples], dtype=np.float64)
    preds, _, _ = _forward_batch(params, model_config, batch, need_cache=False)
    preds = np.asarray(preds, dtype=np.float64)
    residuals = preds - labels
    rmse = float(np.sqrt(np.mean(residuals**2)))
    mae = float(np.mean(np.abs(residuals)))
    ss_res = float(np.sum(residuals**2))
    ss_tot = float(np.sum((labels - labels.mean()) ** 2))
    if ss_tot == 0.0:
        r2 = 1.0 if ss_res == 0.0 else -math.inf
    else:
        r2 = 1.0 - ss_res / ss_tot
    return Metrics(rmse=rmse, mae=mae, r2=r2)


def write_history_csv(history: list[EpochStats], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["epoch", "train_loss", "val_loss", "lr"])
        for row in history:
            writer.writerow([row.epoch, repr(row.train_loss), repr(row.val_loss), repr(row.lr)])


# --- config files -----------------------------------------------------------
#
# Both configs use a plain key = value text format: one pair per line,
# '#' comments, tuples as comma-separated values, "none" for absent
# optionals.  Unknown keys are rejected.


def _parse_kv(path) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise TrainConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


def load_train_config(path) -> TrainConfig:
    fields = _parse_kv(path)
    kwargs: dict = {}
    for key, value in fields.items():
        if key in ("batch_size", "epochs", "patience", "seed"):
            kwargs[key] = int(value)
        elif key in ("max_lr", "weight_decay", "augment_prob", "pct_start",
                     "div_factor", "final_div_factor"):
            kwargs[key] = float(value)
        elif key == "momentum_range":
            lo, hi = value.split(",")
            kwargs[key] = (float(lo), float(hi))
        else:
            raise TrainConfigError(f"unknown training config key {key!r}")
    return TrainConfig(**kwargs)


def load_model_config(path) -> ModelConfig:
    fields = _parse_kv(path)
    kwargs: dict = {}
    for key, value in fields.items():
        if key == "head_hidden":
            kwargs[key] = None if value.lower() == "none" else int(value)
        elif key in ("image_size", "patch_size", "in_channels", "embed_dim",
                     "depth", "heads", "mlp_ratio"):
            kwargs[key] = int(value)
        else:
            raise TrainConfigError(f"unknown model config key {key!r}")
    return ModelConfig(**kwargs)
