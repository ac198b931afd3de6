"""
Where does the model look?  Attention rollout heatmaps
======================================================

Rollout multiplies the per-layer attention matrices (head-averaged, mixed
half-and-half with the identity for the residual path) and reads the class
token's row: a per-patch attribution of the prediction, normalized to
[0, 1].  The serving stack returns this 14 x 14 grid (4 x 4 at this demo's
toy scale) next to every prediction.
"""

import numpy as np

from roomroam import (
    ModelConfig,
    attention_rollout,
    forward,
    init_params,
    layout_to_image,
    predict,
    sample_layout,
)
from roomroam.geometry import pgm_bytes, rasterize

cfg = ModelConfig(image_size=64, patch_size=16, embed_dim=8, depth=2, heads=2)
params = init_params(cfg, seed=11, label_mean=150.0)

layout = sample_layout(seed=5, n_objects=5)
image = rasterize(layout.room, [o.footprint for o in layout.objects], cfg.image_size)

scalar, attention_maps = forward(params, cfg, image)
print(f"predicted resets (untrained toy): {scalar:.2f}")
print(f"{len(attention_maps)} layers of {attention_maps[0].shape} attention")

heat = attention_rollout(attention_maps)
print("rollout grid:")
for row in heat:
    print("  " + " ".join(f"{v:.2f}" for v in row))

# predict() bundles forward + rollout.
pred = predict(params, cfg, image)
assert np.array_equal(pred.heatmap, heat)

# Save input and heatmap side by side as PGMs; upscale the heatmap grid by
# nearest neighbor so image viewers show something inspectable.
with open("rollout_input.pgm", "wb") as f:
    f.write(image.to_pgm())
up = np.kron(np.round(heat * 255).astype(np.uint8), np.ones((16, 16), np.uint8))
with open("rollout_heat.pgm", "wb") as f:
    f.write(pgm_bytes(up))
print("wrote rollout_input.pgm and rollout_heat.pgm")
