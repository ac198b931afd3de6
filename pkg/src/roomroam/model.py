"""Vision-transformer regression on binary room images, in plain numpy.

Patch embedding, pre-norm encoder blocks (multi-head self-attention + GELU
MLP), final layer norm, and a regression head reading the class token.
Forward, reverse-mode gradients, and attention rollout are implemented
directly so the whole training path runs at float64 while inference and
the on-disk format stay float32.  The geometry scales from toy configs
(for gradient checking) up to the base configuration with 16 x 16 patches
on 224 x 224 inputs.

Parameters live in a flat {name: ndarray} dict; see init_params for the
naming scheme.
"""

from __future__ import annotations

import io
import struct
from dataclasses import dataclass

import numpy as np
from scipy import special

from .geometry import BinaryImage

_LN_EPS = 1e-6
_MAGIC = b"RRVT"
_FORMAT_VERSION = 1

#: Parameter set type: flat mapping from tensor name to ndarray.
ModelParams = dict


class ModelConfigError(ValueError):
    """Configuration or input shape violates the model contract."""


class NumericError(FloatingPointError):
    """NaN appeared during the forward pass; carries the block index."""

    def __init__(self, layer_index: int):
        self.layer_index = layer_index
        super().__init__(f"non-finite activations in encoder block {layer_index}")


class FormatError(ValueError):
    """Serialized model bytes are malformed or truncated."""


class PretrainedImportError(ValueError):
    """External weight file is missing tensors or has wrong shapes."""


@dataclass(frozen=True)
class ModelConfig:
    image_size: int = 224
    patch_size: int = 16
    in_channels: int = 3
    embed_dim: int = 768
    depth: int = 12
    heads: int = 12
    mlp_ratio: int = 4
    head_hidden: int | None = None

    def __post_init__(self):
        if self.image_size % self.patch_size != 0:
            raise ModelConfigError("image_size must be divisible by patch_size")
        if self.embed_dim % self.heads != 0:
            raise ModelConfigError("embed_dim must be divisible by heads")
        if self.depth < 1:
            raise ModelConfigError("depth must be >= 1")
        if self.head_hidden is not None and self.head_hidden < 1:
            raise ModelConfigError("head_hidden must be >= 1 when set")

    @property
    def grid(self) -> int:
        return self.image_size // self.patch_size

    @property
    def num_patches(self) -> int:
        return self.grid * self.grid

    @property
    def tokens(self) -> int:
        return self.num_patches + 1

    @property
    def patch_dim(self) -> int:
        return self.patch_size * self.patch_size * self.in_channels


#: The full-scale configuration (16 x 16 patches, 768-d, 12 layers, 12 heads).
VIT_B16 = ModelConfig()


@dataclass(frozen=True)
class Prediction:
    resets: float
    heatmap: np.ndarray  # (grid, grid), min-max normalized to [0, 1]


def _param_names(config: ModelConfig) -> list[str]:
    names = ["patch_embed.weight", "patch_embed.bias", "cls_token", "pos_embed"]
    for i in range(config.depth):
        b = f"blocks.{i}"
        names += [
            f"{b}.ln1.weight", f"{b}.ln1.bias",
            f"{b}.attn.q.weight", f"{b}.attn.q.bias",
            f"{b}.attn.k.weight", f"{b}.attn.k.bias",
            f"{b}.attn.v.weight", f"{b}.attn.v.bias",
            f"{b}.attn.out.weight", f"{b}.attn.out.bias",
            f"{b}.ln2.weight", f"{b}.ln2.bias",
            f"{b}.mlp.fc1.weight", f"{b}.mlp.fc1.bias",
            f"{b}.mlp.fc2.weight", f"{b}.mlp.fc2.bias",
        ]
    names += ["norm.weight", "norm.bias"]
    if config.head_hidden is None:
        names += ["head.weight", "head.bias"]
    else:
        names += ["head.fc1.weight", "head.fc1.bias", "head.fc2.weight", "head.fc2.bias"]
    return names


def param_shapes(config: ModelConfig) -> dict[str, tuple[int, ...]]:
    d = config.embed_dim
    dm = d * config.mlp_ratio
    shapes: dict[str, tuple[int, ...]] = {
        "patch_embed.weight": (config.patch_dim, d),
        "patch_embed.bias": (d,),
        "cls_token": (d,),
        "pos_embed": (config.tokens, d),
        "norm.weight": (d,),
        "norm.bias": (d,),
    }
    for i in range(config.depth):
        b = f"blocks.{i}"
        shapes[f"{b}.ln1.weight"] = (d,)
        shapes[f"{b}.ln1.bias"] = (d,)
        for proj in ("q", "k", "v", "out"):
            shapes[f"{b}.attn.{proj}.weight"] = (d, d)
            shapes[f"{b}.attn.{proj}.bias"] = (d,)
        shapes[f"{b}.ln2.weight"] = (d,)
        shapes[f"{b}.ln2.bias"] = (d,)
        shapes[f"{b}.mlp.fc1.weight"] = (d, dm)
        shapes[f"{b}.mlp.fc1.bias"] = (dm,)
        shapes[f"{b}.mlp.fc2.weight"] = (dm, d)
        shapes[f"{b}.mlp.fc2.bias"] = (d,)
    if config.head_hidden is None:
        shapes["head.weight"] = (d, 1)
        shapes["head.bias"] = (1,)
    else:
        shapes["head.fc1.weight"] = (d, config.head_hidden)
        shapes["head.fc1.bias"] = (config.head_hidden,)
        shapes["head.fc2.weight"] = (config.head_hidden, 1)
        shapes["head.fc2.bias"] = (1,)
    return shapes


def init_params(
    config: ModelConfig, seed: int = 0, label_mean: float = 0.0
) -> ModelParams:
    """Fresh parameters: uniform +-1/sqrt(fan_in) linears, N(0, 0.02) token
    and positional embeddings, unit layer norms.  The head bias starts at
    the dataset label mean so regression converges from a sane offset."""
    rng = np.random.Generator(np.random.PCG64(seed))
    shapes = param_shapes(config)
    params: ModelParams = {}
    for name in _param_names(config):
        shape = shapes[name]
        if name in ("cls_token", "pos_embed"):
            params[name] = rng.normal(0.0, 0.02, size=shape)
        elif name.endswith(".weight") and len(shape) == 2:
            bound = 1.0 / np.sqrt(shape[0])
            params[name] = rng.uniform(-bound, bound, size=shape)
        elif name.endswith(".weight"):  # layer-norm scales
            params[name] = np.ones(shape)
        else:
            params[name] = np.zeros(shape)
    if config.head_hidden is None:
        params["head.bias"] = np.full((1,), float(label_mean))
    else:
        params["head.fc2.bias"] = np.full((1,), float(label_mean))
    return params


def count_params(params: ModelParams) -> int:
    return int(sum(int(np.prod(t.shape)) for t in params.values()))


def _check_params(params: ModelParams, config: ModelConfig) -> None:
    shapes = param_shapes(config)
    missing = sorted(set(shapes) - set(params))
    if missing:
        raise ModelConfigError(f"missing parameters: {missing}")
    for name, shape in shapes.items():
        if tuple(params[name].shape) != shape:
            raise ModelConfigError(
                f"{name}: expected shape {shape}, got {tuple(params[name].shape)}"
            )


def _patchify(images: np.ndarray, config: ModelConfig, dtype) -> np.ndarray:
    """(B, S, S) bit images -> (B, N, patch_dim) raw patch vectors.

    The single channel is replicated across in_channels; each patch
    flattens in (row, col, channel) order.
    """
    b, s, s2 = images.shape
    if s != config.image_size or s2 != config.image_size:
        raise ModelConfigError(
            f"image must be {config.image_size} x {config.image_size}, got {s} x {s2}"
        )
    g, p = config.grid, config.patch_size
    x = images.astype(dtype, copy=False)
    x = x.reshape(b, g, p, g, p).transpose(0, 1, 3, 2, 4).reshape(b, g * g, p * p)
    return np.repeat(x, config.in_channels, axis=2)


def _gelu(x: np.ndarray) -> np.ndarray:
    return 0.5 * x * (1.0 + special.erf(x / np.sqrt(2.0)))


def _gelu_grad(x: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + special.erf(x / np.sqrt(2.0))) + x * np.exp(-0.5 * x * x) / np.sqrt(
        2.0 * np.pi
    )


def _layer_norm(x: np.ndarray, gamma: np.ndarray, beta: np.ndarray):
    mean = x.mean(axis=-1, keepdims=True)
    var = x.var(axis=-1, keepdims=True)
    inv_std = 1.0 / np.sqrt(var + _LN_EPS)
    xhat = (x - mean) * inv_std
    return xhat * gamma + beta, xhat, inv_std


def _layer_norm_backward(dy, xhat, inv_std, gamma):
    dgamma = (dy * xhat).sum(axis=tuple(range(dy.ndim - 1)))
    dbeta = dy.sum(axis=tuple(range(dy.ndim - 1)))
    dxhat = dy * gamma
    m1 = dxhat.mean(axis=-1, keepdims=True)
    m2 = (dxhat * xhat).mean(axis=-1, keepdims=True)
    dx = inv_std * (dxhat - m1 - xhat * m2)
    return dx, dgamma, dbeta


def _softmax(scores: np.ndarray) -> np.ndarray:
    shifted = scores - scores.max(axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=-1, keepdims=True)


def _split_heads(x: np.ndarray, heads: int) -> np.ndarray:
    b, t, d = x.shape
    return x.reshape(b, t, heads, d // heads).transpose(0, 2, 1, 3)


def _merge_heads(x: np.ndarray) -> np.ndarray:
    b, h, t, dh = x.shape
    return x.transpose(0, 2, 1, 3).reshape(b, t, h * dh)


def _forward_batch(
    params: ModelParams,
    config: ModelConfig,
    images: np.ndarray,
    need_cache: bool,
    check_numeric: bool = False,
):
    """Forward over a (B, S, S) image batch.

    Returns (preds (B,), attns list per layer of (B, H, T, T), cache).
    The computation dtype follows the parameter dtype.
    """
    _check_params(params, config)
    dtype = params["patch_embed.weight"].dtype
    patches = _patchify(images, config, dtype)
    b = patches.shape[0]
    scale = 1.0 / np.sqrt(config.embed_dim // config.heads)

    tokens = patches @ params["patch_embed.weight"] + params["patch_embed.bias"]
    cls = np.broadcast_to(params["cls_token"], (b, 1, config.embed_dim))
    x = np.concatenate([cls, tokens], axis=1) + params["pos_embed"]

    attns = []
    block_caches = [] if need_cache else None
    for i in range(config.depth):
        p = f"blocks.{i}"
        h, xhat1, inv1 = _layer_norm(x, params[f"{p}.ln1.weight"], params[f"{p}.ln1.bias"])
        q = _split_heads(h @ params[f"{p}.attn.q.weight"] + params[f"{p}.attn.q.bias"], config.heads)
        k = _split_heads(h @ params[f"{p}.attn.k.weight"] + params[f"{p}.attn.k.bias"], config.heads)
        v = _split_heads(h @ params[f"{p}.attn.v.weight"] + params[f"{p}.attn.v.bias"], config.heads)
        scores = (q @ k.transpose(0, 1, 3, 2)) * scale
        attn = _softmax(scores)
        ctx = _merge_heads(attn @ v)
        attn_out = ctx @ params[f"{p}.attn.out.weight"] + params[f"{p}.attn.out.bias"]
        x_mid = x + attn_out

        h2, xhat2, inv2 = _layer_norm(
            x_mid, params[f"{p}.ln2.weight"], params[f"{p}.ln2.bias"]
        )
        u1 = h2 @ params[f"{p}.mlp.fc1.weight"] + params[f"{p}.mlp.fc1.bias"]
        a1 = _gelu(u1)
        u2 = a1 @ params[f"{p}.mlp.fc2.weight"] + params[f"{p}.mlp.fc2.bias"]
        x_out = x_mid + u2

        if check_numeric and not np.all(np.isfinite(x_out)):
            raise NumericError(i)
        attns.append(attn)
        if need_cache:
            block_caches.append(
                dict(
                    x=x, h=h, xhat1=xhat1, inv1=inv1, q=q, k=k, v=v, attn=attn,
                    ctx=ctx, x_mid=x_mid, xhat2=xhat2, inv2=inv2, h2=h2, u1=u1, a1=a1,
                )
            )
        x = x_out

    hn, xhatn, invn = _layer_norm(x, params["norm.weight"], params["norm.bias"])
    cls_vec = hn[:, 0, :]
    if config.head_hidden is None:
        preds = cls_vec @ params["head.weight"][:, 0] + params["head.bias"][0]
        head_cache = dict(cls_vec=cls_vec)
    else:
        hu1 = cls_vec @ params["head.fc1.weight"] + params["head.fc1.bias"]
        ha1 = _gelu(hu1)
        preds = ha1 @ params["head.fc2.weight"][:, 0] + params["head.fc2.bias"][0]
        head_cache = dict(cls_vec=cls_vec, hu1=hu1, ha1=ha1)

    cache = None
    if need_cache:
        cache = dict(
            patches=patches, blocks=block_caches, x_final=x, xhatn=xhatn, invn=invn,
            head=head_cache, scale=scale,
        )
    return preds, attns, cache


def _images_array(images) -> np.ndarray:
    """Stack BinaryImage(s) / 2-D array(s) into a (B, S, S) array."""
    if isinstance(images, BinaryImage):
        return images.pixels[None, :, :]
    if isinstance(images, np.ndarray):
        return images[None, :, :] if images.ndim == 2 else images
    arrs = []
    for im in images:
        arrs.append(im.pixels if isinstance(im, BinaryImage) else np.asarray(im))
    return np.stack(arrs, axis=0)


def forward(params: ModelParams, config: ModelConfig, image):
    """Predict one image; returns (scalar, per-layer (H, T, T) attention)."""
    batch = _images_array(image)
    if batch.shape[0] != 1:
        raise ModelConfigError("forward takes a single image; use backward for batches")
    preds, attns, _ = _forward_batch(params, config, batch, need_cache=False)
    return float(preds[0]), [a[0] for a in attns]


def backward(params: ModelParams, config: ModelConfig, images, labels):
    """Mean-squared-error loss and exact gradients over an image batch.

    Weight decay is decoupled (applied by the optimizer update, never in
    the loss).  Raises NumericError with the offending block index if the
    forward pass produces NaNs.
    """
    batch = _images_array(images)
    y = np.asarray(labels, dtype=np.float64)
    if batch.shape[0] == 0:
        raise ModelConfigError("batch must be non-empty")
    if y.shape != (batch.shape[0],):
        raise ModelConfigError("labels must match the batch size")
    preds, _, cache = _forward_batch(
        params, config, batch, need_cache=True, check_numeric=True
    )
    b = batch.shape[0]
    residual = preds - y
    loss = float(np.mean(residual**2))
    dpred = (2.0 / b) * residual

    grads: ModelParams = {}
    head = cache["head"]
    if config.head_hidden is None:
        grads["head.weight"] = (head["cls_vec"] * dpred[:, None]).sum(axis=0)[:, None]
        grads["head.bias"] = np.array([dpred.sum()])
        dcls = dpred[:, None] * params["head.weight"][:, 0]
    else:
        dha1 = dpred[:, None] * params["head.fc2.weight"][:, 0]
        grads["head.fc2.weight"] = (head["ha1"] * dpred[:, None]).sum(axis=0)[:, None]
        grads["head.fc2.bias"] = np.array([dpred.sum()])
        dhu1 = dha1 * _gelu_grad(head["hu1"])
        grads["head.fc1.weight"] = head["cls_vec"].T @ dhu1
        grads["head.fc1.bias"] = dhu1.sum(axis=0)
        dcls = dhu1 @ params["head.fc1.weight"].T

    dhn = np.zeros_like(cache["x_final"])
    dhn[:, 0, :] = dcls
    dx, grads["norm.weight"], grads["norm.bias"] = _layer_norm_backward(
        dhn, cache["xhatn"], cache["invn"], params["norm.weight"]
    )

    scale = cache["scale"]
    for i in reversed(range(config.depth)):
        p = f"blocks.{i}"
        c = cache["blocks"][i]

        # MLP branch: x_out = x_mid + fc2(gelu(fc1(ln2(x_mid))))
        du2 = dx
        grads[f"{p}.mlp.fc2.weight"] = (
            c["a1"].reshape(-1, c["a1"].shape[-1]).T @ du2.reshape(-1, du2.shape[-1])
        )
        grads[f"{p}.mlp.fc2.bias"] = du2.sum(axis=(0, 1))
        da1 = du2 @ params[f"{p}.mlp.fc2.weight"].T
        du1 = da1 * _gelu_grad(c["u1"])
        grads[f"{p}.mlp.fc1.weight"] = (
            c["h2"].reshape(-1, c["h2"].shape[-1]).T @ du1.reshape(-1, du1.shape[-1])
        )
        grads[f"{p}.mlp.fc1.bias"] = du1.sum(axis=(0, 1))
        dh2 = du1 @ params[f"{p}.mlp.fc1.weight"].T
        dx_mid_ln, grads[f"{p}.ln2.weight"], grads[f"{p}.ln2.bias"] = _layer_norm_backward(
            dh2, c["xhat2"], c["inv2"], params[f"{p}.ln2.weight"]
        )
        dx_mid = dx + dx_mid_ln

        # Attention branch: x_mid = x + out(attn(ln1(x)))
        dattn_out = dx_mid
        grads[f"{p}.attn.out.weight"] = (
            c["ctx"].reshape(-1, c["ctx"].shape[-1]).T
            @ dattn_out.reshape(-1, dattn_out.shape[-1])
        )
        grads[f"{p}.attn.out.bias"] = dattn_out.sum(axis=(0, 1))
        dctx = _split_heads(dattn_out @ params[f"{p}.attn.out.weight"].T, config.heads)

        dattn = dctx @ c["v"].transpose(0, 1, 3, 2)
        dv = c["attn"].transpose(0, 1, 3, 2) @ dctx
        dscores = c["attn"] * (dattn - (dattn * c["attn"]).sum(axis=-1, keepdims=True))
        dq = (dscores @ c["k"]) * scale
        dk = (dscores.transpose(0, 1, 3, 2) @ c["q"]) * scale

        dq = _merge_heads(dq)
        dk = _merge_heads(dk)
        dv = _merge_heads(dv)
        h_flat = c["h"].reshape(-1, c["h"].shape[-1])
        grads[f"{p}.attn.q.weight"] = h_flat.T @ dq.reshape(-1, dq.shape[-1])
        grads[f"{p}.attn.q.bias"] = dq.sum(axis=(0, 1))
        grads[f"{p}.attn.k.weight"] = h_flat.T @ dk.reshape(-1, dk.shape[-1])
        grads[f"{p}.attn.k.bias"] = dk.sum(axis=(0, 1))
        grads[f"{p}.attn.v.weight"] = h_flat.T @ dv.reshape(-1, dv.shape[-1])
        grads[f"{p}.attn.v.bias"] = dv.sum(axis=(0, 1))
        dh = (
            dq @ params[f"{p}.attn.q.weight"].T
            + dk @ params[f"{p}.attn.k.weight"].T
            + dv @ params[f"{p}.attn.v.weight"].T
        )
        dx_ln, grads[f"{p}.ln1.weight"], grads[f"{p}.ln1.bias"] = _layer_norm_backward(
            dh, c["xhat1"], c["inv1"], params[f"{p}.ln1.weight"]
        )
        dx = dx_mid + dx_ln

    # Embedding stage: x0 = concat(cls, patches @ W + b) + pos
    grads["pos_embed"] = dx.sum(axis=0)
    grads["cls_token"] = dx[:, 0, :].sum(axis=0)
    dtokens = dx[:, 1:, :]
    patches = cache["patches"]
    grads["patch_embed.weight"] = (
        patches.reshape(-1, patches.shape[-1]).T @ dtokens.reshape(-1, dtokens.shape[-1])
    )
    grads["patch_embed.bias"] = dtokens.sum(axis=(0, 1))
    return loss, grads


def attention_rollout(attention_maps) -> np.ndarray:
    """Cumulative class-token attention over the patch grid.

    Per layer the heads are averaged, mixed with the residual path as
    0.5 A + 0.5 I, and row-normalized; the per-layer matrices multiply
    last-to-first and the class-token row over the patch columns reshapes
    to the grid.  The heatmap min-max normalizes to [0, 1]; a constant map
    collapses to all zeros.
    """
    if not attention_maps:
        raise ValueError("need at least one layer of attention maps")
    rollout = None
    t = None
    for layer in attention_maps:
        a = np.asarray(layer, dtype=np.float64)
        if a.ndim != 3 or a.shape[1] != a.shape[2]:
            raise ValueError(f"attention maps must be (H, T, T), got {a.shape}")
        if t is None:
            t = a.shape[1]
        elif a.shape[1] != t:
            raise ValueError("inconsistent token counts across layers")
        mixed = 0.5 * a.mean(axis=0) + 0.5 * np.eye(t)
        mixed = mixed / mixed.sum(axis=1, keepdims=True)
        rollout = mixed if rollout is None else mixed @ rollout
    n = t - 1
    grid = int(round(np.sqrt(n)))
    if grid * grid != n:
        raise ValueError(f"patch count {n} is not a square grid")
    heat = rollout[0, 1:].reshape(grid, grid)
    lo, hi = float(heat.min()), float(heat.max())
    if hi - lo <= 0.0:
        return np.zeros((grid, grid))
    return (heat - lo) / (hi - lo)


def predict(params: ModelParams, config: ModelConfig, image) -> Prediction:
    """Forward plus rollout for one image."""
    scalar, attns = forward(params, config, image)
    return Prediction(resets=scalar, heatmap=attention_rollout(attns))


# --- serialization ----------------------------------------------------------


def serialize(params: ModelParams, config: ModelConfig) -> bytes:
    """Versioned binary container; tensors stored as little-endian float32.

    Layout: magic "RRVT", u32 version, eight u32 config fields (head_hidden
    encoded as 0 when absent), u32 tensor count, then per tensor sorted by
    name: u16 name length + utf-8 name, u8 ndim, u32 dims, raw f32 data.
    """
    _check_params(params, config)
    buf = io.BytesIO()
    buf.write(_MAGIC)
    buf.write(struct.pack("<I", _FORMAT_VERSION))
    buf.write(
        struct.pack(
            "<8I",
            config.image_size,
            config.patch_size,
            config.in_channels,
            config.embed_dim,
            config.depth,
            config.heads,
            config.mlp_ratio,
            config.head_hidden or 0,
        )
    )
    names = sorted(params)
    buf.write(struct.pack("<I", len(names)))
    for name in names:
        tensor = np.ascontiguousarray(params[name], dtype="<f4")
        encoded = name.encode("utf-8")
        buf.write(struct.pack("<H", len(encoded)))
        buf.write(encoded)
        buf.write(struct.pack("<B", tensor.ndim))
        buf.write(struct.pack(f"<{tensor.ndim}I", *tensor.shape))
        buf.write(tensor.tobytes())
    return buf.getvalue()


def _read_exactly(buf: io.BytesIO, n: int) -> bytes:
    data = buf.read(n)
    if len(data) != n:
        raise FormatError("truncated model file")
    return data


def deserialize(data: bytes) -> tuple[ModelParams, ModelConfig]:
    """Inverse of serialize; tensors come back float32."""
    buf = io.BytesIO(data)
    if _read_exactly(buf, 4) != _MAGIC:
        raise FormatError("bad magic; not a model file")
    (version,) = struct.unpack("<I", _read_exactly(buf, 4))
    if version != _FORMAT_VERSION:
        raise FormatError(f"unsupported format version {version}")
    fields = struct.unpack("<8I", _read_exactly(buf, 32))
    config = ModelConfig(
        image_size=fields[0],
        patch_size=fields[1],
        in_channels=fields[2],
        embed_dim=fields[3],
        depth=fields[4],
        heads=fields[5],
        mlp_ratio=fields[6],
        head_hidden=fields[7] or None,
    )
    (count,) = struct.unpack("<I", _read_exactly(buf, 4))
    params: ModelParams = {}
    for _ in range(count):
        (name_len,) = struct.unpack("<H", _read_exactly(buf, 2))
        name = _read_exactly(buf, name_len).decode("utf-8")
        (ndim,) = struct.unpack("<B", _read_exactly(buf, 1))
        shape = struct.unpack(f"<{ndim}I", _read_exactly(buf, 4 * ndim))
        size = int(np.prod(shape)) if ndim else 1
        tensor = np.frombuffer(_read_exactly(buf, 4 * size), dtype="<f4").reshape(shape)
        params[name] = tensor.astype(np.float32)
    if buf.read(1):
        raise FormatError("trailing bytes after tensor data")
    _check_params(params, config)
    return params, config


def save_model(params: ModelParams, config: ModelConfig, path) -> None:
    with open(path, "wb") as f:
        f.write(serialize(params, config))


def load_model(path) -> tuple[ModelParams, ModelConfig]:
    with open(path, "rb") as f:
        return deserialize(f.read())


# --- pretrained import ------------------------------------------------------
#
# External weights arrive as a numpy .npz tensor dictionary using the
# conventional torch-style ViT naming; pretrained_name_map.txt (shipped next
# to this module) documents every mapping and transform.  The regression
# head is never imported; it is freshly initialized.


def _external_entries(config: ModelConfig) -> list[tuple[str, tuple[int, ...]]]:
    d = config.embed_dim
    entries = [
        ("cls_token", (1, 1, d)),
        ("pos_embed", (1, config.tokens, d)),
        ("patch_embed.proj.weight", (d, config.in_channels, config.patch_size, config.patch_size)),
        ("patch_embed.proj.bias", (d,)),
        ("norm.weight", (d,)),
        ("norm.bias", (d,)),
    ]
    for i in range(config.depth):
        b = f"blocks.{i}"
        entries += [
            (f"{b}.norm1.weight", (d,)),
            (f"{b}.norm1.bias", (d,)),
            (f"{b}.attn.qkv.weight", (3 * d, d)),
            (f"{b}.attn.qkv.bias", (3 * d,)),
            (f"{b}.attn.proj.weight", (d, d)),
            (f"{b}.attn.proj.bias", (d,)),
            (f"{b}.norm2.weight", (d,)),
            (f"{b}.norm2.bias", (d,)),
            (f"{b}.mlp.fc1.weight", (d * config.mlp_ratio, d)),
            (f"{b}.mlp.fc1.bias", (d * config.mlp_ratio,)),
            (f"{b}.mlp.fc2.weight", (d, d * config.mlp_ratio)),
            (f"{b}.mlp.fc2.bias", (d,)),
        ]
    return entries


def import_pretrained(
    path, config: ModelConfig = VIT_B16, head_seed: int = 0, label_mean: float = 0.0
) -> ModelParams:
    """Load backbone weights from an external .npz tensor dictionary.

    Linear weights transpose from (out, in) to (in, out); the patch
    convolution kernel reshapes to the flattened-patch projection; the
    fused qkv tensor splits three ways.  Missing tensors raise with the
    full list of names; mismatched shapes raise with expected vs found.
    The regression head is freshly initialized, never imported.
    """
    archive = np.load(path)
    expected = _external_entries(config)
    missing = sorted(name for name, _ in expected if name not in archive)
    if missing:
        raise PretrainedImportError(f"weight file is missing tensors: {missing}")
    for name, shape in expected:
        found = tuple(archive[name].shape)
        if found != shape:
            raise PretrainedImportError(
                f"{name}: expected shape {shape}, found {found}"
            )

    params = init_params(config, seed=head_seed, label_mean=label_mean)
    params["cls_token"] = archive["cls_token"].reshape(-1).astype(np.float64)
    params["pos_embed"] = archive["pos_embed"][0].astype(np.float64)
    conv = archive["patch_embed.proj.weight"].astype(np.float64)
    # (D, C, p, p) -> rows ordered (row, col, channel) to match _patchify.
    params["patch_embed.weight"] = conv.transpose(2, 3, 1, 0).reshape(
        config.patch_dim, config.embed_dim
    )
    params["patch_embed.bias"] = archive["patch_embed.proj.bias"].astype(np.float64)
    params["norm.weight"] = archive["norm.weight"].astype(np.float64)
    params["norm.bias"] = archive["norm.bias"].astype(np.float64)
    d = config.embed_dim
    for i in range(config.depth):
        b = f"blocks.{i}"
        params[f"{b}.ln1.weight"] = archive[f"{b}.norm1.weight"].astype(np.float64)
        params[f"{b}.ln1.bias"] = archive[f"{b}.norm1.bias"].astype(np.float64)
        qkv_w = archive[f"{b}.attn.qkv.weight"].astype(np.float64)
        qkv_b = archive[f"{b}.attn.qkv.bias"].astype(np.float64)
        for j, proj in enumerate(("q", "k", "v")):
            params[f"{b}.attn.{proj}.weight"] = qkv_w[j * d : (j + 1) * d].T
            params[f"{b}.attn.{proj}.bias"] = qkv_b[j * d : (j + 1) * d]
        params[f"{b}.attn.out.weight"] = archive[f"{b}.attn.proj.weight"].astype(np.float64).T
        params[f"{b}.attn.out.bias"] = archive[f"{b}.attn.proj.bias"].astype(np.float64)
        params[f"{b}.ln2.weight"] = archive[f"{b}.norm2.weight"].astype(np.float64)
        params[f"{b}.ln2.bias"] = archive[f"{b}.norm2.bias"].astype(np.float64)
        params[f"{b}.mlp.fc1.weight"] = archive[f"{b}.mlp.fc1.weight"].astype(np.float64).T
        params[f"{b}.mlp.fc1.bias"] = archive[f"{b}.mlp.fc1.bias"].astype(np.float64)
        params[f"{b}.mlp.fc2.weight"] = archive[f"{b}.mlp.fc2.weight"].astype(np.float64).T
        params[f"{b}.mlp.fc2.bias"] = archive[f"{b}.mlp.fc2.bias"].astype(np.float64)
    return params
