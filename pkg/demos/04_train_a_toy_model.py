"""
Training the transformer regressor at toy scale
===============================================

The full configuration (16 x 16 patches on 224 x 224 images, 768-d, 12
layers, ~86M parameters) is the study's setup; everything here also runs
at desk scale by shrinking the config.  Training uses momentum SGD under a
one-cycle learning-rate schedule with early stopping on the validation
split, exactly as the full pipeline does.
"""

import numpy as np

from roomroam import (
    ModelConfig,
    SimConfig,
    TrainConfig,
    build_dataset,
    evaluate,
    load_model,
    save_model,
    split,
    train,
)

# Tiny data, tiny model: enough to watch the machinery work end to end.
sim = SimConfig(episode_distance=60.0)
samples = split(build_dataset({3: 8, 4: 8, 5: 8}, sim, paths=2, seed=7), seed=1)

model_cfg = ModelConfig(image_size=64, patch_size=16, embed_dim=8, depth=2, heads=2)
train_cfg = TrainConfig(
    batch_size=8, max_lr=1e-3, epochs=60, patience=20, seed=5, augment_prob=0.05
)

params, history = train(samples, model_cfg, train_cfg)
print(f"trained {len(history)} epochs "
      f"(best val loss {min(h.val_loss for h in history):.1f})")
print("lr went", f"{history[0].lr:.2e}", "->",
      f"{max(h.lr for h in history):.2e}", "->", f"{history[-1].lr:.2e}")

for name in ("train", "val", "test"):
    subset = [s for s in samples if s.split == name]
    m = evaluate(params, model_cfg, subset)
    print(f"{name:5s}: RMSE {m.rmse:7.2f}  MAE {m.mae:7.2f}  R2 {m.r2:+.3f}")

# Models serialize to a small versioned binary (float32 tensors).
save_model(params, model_cfg, "toy_model.bin")
params2, cfg2 = load_model("toy_model.bin")
print("round-trip OK:", cfg2 == model_cfg,
      "| tensors:", len(params2))

# The study-scale run is the same code path:
#   roomroam build-dataset --counts 3:100,4:100,5:100 --paths 30 --seed 1 \
#       --out study.jsonl --workers 8
#   roomroam train --dataset study.jsonl --out vit.bin --split-seed 2 \
#       --out-dataset study_split.jsonl
# optionally warm-starting from imported pretrained backbone weights
# (see roomroam.model.import_pretrained and pretrained_name_map.txt).
