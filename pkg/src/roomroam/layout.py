"""Furniture catalog, random room layouts, and the layout JSON schema.

A layout is an origin-centered rectangular room plus up to five placed
furniture pieces drawn from a fixed catalog (a TV stand, a sofa, two
identical shelves, and a mini-fridge).  Sampling reproduces the data
collection distribution: uniform center, uniform quarter-turn rotation,
rejection on overlap.  Pieces may touch each other or the walls.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    ConvexPoly,
    GeometryError,
    Rect,
    VALID_ROTATIONS,
    polys_overlap,
    rasterize,
    rotate_exact,
    transform,
    vec2,
)
from .rng import mix

KINDS = ("tv_stand", "sofa", "shelf_a", "shelf_b", "mini_fridge")

# Full footprints (w x d, meters): tv stand 1.6 x 0.4, sofa 2.0 x 0.9,
# shelves 0.8 x 0.3 each, mini-fridge 0.5 x 0.5.
_DEFAULT_HALF_EXTENTS = {
    "tv_stand": (0.8, 0.2),
    "sofa": (1.0, 0.45),
    "shelf_a": (0.4, 0.15),
    "shelf_b": (0.4, 0.15),
    "mini_fridge": (0.25, 0.25),
}

MAX_REJECTIONS = 10_000


class LayoutError(ValueError):
    """A layout violates its invariants (overlap, escape, duplicates)."""


class SchemaError(ValueError):
    """Layout JSON does not match the documented schema."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class InvalidCountError(ValueError):
    """Requested object count outside {3, 4, 5}."""


class InfeasibleLayoutError(RuntimeError):
    """Rejection sampling exceeded its budget; no valid placement found."""


@dataclass(frozen=True)
class FurnitureSpec:
    kind: str
    half_extents: tuple[float, float]

    def __post_init__(self):
        hx, hy = self.half_extents
        if not (hx > 0 and hy > 0):
            raise LayoutError(f"{self.kind}: half extents must be positive")

    def local_footprint(self) -> ConvexPoly:
        """Axis-aligned rectangle about the origin, counter-clockwise."""
        hx, hy = self.half_extents
        return ConvexPoly(
            np.array([[-hx, -hy], [hx, -hy], [hx, hy], [-hx, hy]], dtype=np.float64)
        )


def catalog() -> list[FurnitureSpec]:
    """The five-piece default catalog (four kinds, two identical shelves)."""
    return [FurnitureSpec(k, _DEFAULT_HALF_EXTENTS[k]) for k in KINDS]


def load_catalog(path) -> list[FurnitureSpec]:
    """Read a custom catalog: JSON list of {kind, half_extents_m: [hx, hy]}."""
    with open(path, "r", encoding="utf-8") as f:
        entries = json.load(f)
    specs = [FurnitureSpec(e["kind"], tuple(float(v) for v in e["half_extents_m"])) for e in entries]
    kinds = [s.kind for s in specs]
    if len(set(kinds)) != len(kinds):
        raise LayoutError("catalog kinds must be unique")
    return specs


@dataclass(frozen=True)
class PlacedObject:
    kind: str
    center: tuple[float, float]
    rotation_deg: int
    footprint: ConvexPoly = field(compare=False)

    def rotated_half_extents(self, spec: FurnitureSpec) -> tuple[float, float]:
        hx, hy = spec.half_extents
        return (hy, hx) if self.rotation_deg in (90, 270) else (hx, hy)


def place(spec: FurnitureSpec, center, rotation_deg: int) -> PlacedObject:
    """Instantiate a catalog piece at a pose; footprint is derived."""
    c = (float(center[0]), float(center[1]))
    footprint = transform(spec.local_footprint(), vec2(*c), rotation_deg)
    return PlacedObject(spec.kind, c, int(rotation_deg), footprint)


@dataclass(frozen=True)
class Layout:
    room: Rect
    objects: tuple[PlacedObject, ...]

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))


def default_room(width: float = 5.0, height: float = 5.0) -> Rect:
    return Rect.centered(width, height)


def validate_layout(layout: Layout) -> None:
    """Raise LayoutError unless the layout satisfies all its invariants."""
    kinds = [o.kind for o in layout.objects]
    if len(set(kinds)) != len(kinds):
        raise LayoutError("at most one of each catalog entry is allowed")
    room = layout.room
    for o in layout.objects:
        v = o.footprint.vertices
        if (
            v[:, 0].min() < room.min[0]
            or v[:, 0].max() > room.max[0]
            or v[:, 1].min() < room.min[1]
            or v[:, 1].max() > room.max[1]
        ):
            raise LayoutError(f"object '{o.kind}' escapes the room")
    for i in range(len(layout.objects)):
        for j in range(i + 1, len(layout.objects)):
            if polys_overlap(layout.objects[i].footprint, layout.objects[j].footprint):
                raise LayoutError(
                    f"objects '{layout.objects[i].kind}' and "
                    f"'{layout.objects[j].kind}' overlap"
                )


def sample_layout(
    seed: int,
    n_objects: int,
    room: Rect | None = None,
    specs: list[FurnitureSpec] | None = None,
) -> Layout:
    """Deterministically sample a random non-overlapping layout.

    With n_objects == 5 every catalog piece is used; for 3 or 4 a uniform
    subset is chosen first.  Each piece gets a uniform quarter-turn rotation
    and a center uniform over the inset room that keeps its rotated footprint
    inside (so containment never needs rejection); pieces overlapping an
    earlier placement are resampled.  Only rng.random() is consumed, keeping
    the stream stable across platforms and Python versions.
    """
    if n_objects not in (3, 4, 5):
        raise InvalidCountError(f"n_objects must be in {{3, 4, 5}}, got {n_objects}")
    room = room if room is not None else default_room()
    specs = list(specs) if specs is not None else catalog()
    rng = random.Random(mix(seed))

    if n_objects < len(specs):
        chosen: list[int] = []
        pool = list(range(len(specs)))
        for _ in range(n_objects):
            k = int(rng.random() * len(pool))
            k = min(k, len(pool) - 1)
            chosen.append(pool.pop(k))
        chosen.sort()  # keep catalog order for determinism-by-construction
        specs = [specs[i] for i in chosen]

    placed: list[PlacedObject] = []
    rejections = 0
    for spec in specs:
        while True:
            rot = VALID_ROTATIONS[min(int(rng.random() * 4), 3)]
            hx, hy = spec.half_extents
            if rot in (90, 270):
                hx, hy = hy, hx
            lo_x, hi_x = room.min[0] + hx, room.max[0] - hx
            lo_y, hi_y = room.min[1] + hy, room.max[1] - hy
            if lo_x > hi_x or lo_y > hi_y:
                raise InfeasibleLayoutError(
                    f"'{spec.kind}' cannot fit inside the room at rotation {rot}"
                )
            cx = lo_x + rng.random() * (hi_x - lo_x)
            cy = lo_y + rng.random() * (hi_y - lo_y)
            candidate = place(spec, (cx, cy), rot)
            if any(polys_overlap(candidate.footprint, q.footprint) for q in placed):
                rejections += 1
                if rejections > MAX_REJECTIONS:
                    raise InfeasibleLayoutError(
                        f"exceeded {MAX_REJECTIONS} overlap rejections"
                    )
                continue
            placed.append(candidate)
            break
    return Layout(room, tuple(placed))


def layout_to_image(layout: Layout, resolution: int = 224):
    """Binary top-down raster of the layout (model-input view)."""
    return rasterize(layout.room, [o.footprint for o in layout.objects], resolution)


def rotate_layout_90(layout: Layout, specs: list[FurnitureSpec] | None = None) -> Layout:
    """Rotate a square-room layout a quarter turn counter-clockwise.

    Centers map (x, y) -> (-y, x) exactly; rotations advance by 90 degrees.
    The rotated footprints are bit-exact images of the originals, which the
    symmetry guarantees of the rasterizer and simulator build on.
    """
    if abs(layout.room.width - layout.room.height) > 1e-12:
        raise LayoutError("only square rooms can be rotated by 90 degrees")
    spec_by_kind = {s.kind: s for s in (specs if specs is not None else catalog())}
    rotated = []
    for o in layout.objects:
        cx, cy = rotate_exact(o.center[0], o.center[1], 90)
        rotated.append(place(spec_by_kind[o.kind], (cx, cy), (o.rotation_deg + 90) % 360))
    return Layout(layout.room, tuple(rotated))


# --- JSON schema ----------------------------------------------------------
#
# {"room": {"width_m": 5.0, "height_m": 5.0},
#  "objects": [{"kind": "sofa", "center_m": [x, y], "rotation_deg": 90}]}
#
# Coordinates are room-centered: a 5 x 5 room spans [-2.5, 2.5] on each axis.
# Half extents are resolved from the catalog, never stored.


def layout_to_json(layout: Layout) -> dict:
    return {
        "room": {"width_m": layout.room.width, "height_m": layout.room.height},
        "objects": [
            {
                "kind": o.kind,
                "center_m": [o.center[0], o.center[1]],
                "rotation_deg": o.rotation_deg,
            }
            for o in layout.objects
        ],
    }


def layout_from_json(data, specs: list[FurnitureSpec] | None = None) -> Layout:
    """Parse a layout dict; raises SchemaError naming the offending field.

    Schema violations only; invariant violations (overlap, escape) are left
    to validate_layout so callers can distinguish the two failure classes.
    """
    spec_by_kind = {s.kind: s for s in (specs if specs is not None else catalog())}
    if not isinstance(data, dict):
        raise SchemaError("$", "layout must be a JSON object")
    room_obj = data.get("room")
    if not isinstance(room_obj, dict):
        raise SchemaError("$.room", "missing or not an object")
    try:
        width = float(room_obj["width_m"])
        height = float(room_obj["height_m"])
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError("$.room", f"width_m/height_m must be numbers ({e})") from e
    if not (width > 0 and height > 0):
        raise SchemaError("$.room", "room sides must be positive")
    room = Rect.centered(width, height)

    objects_obj = data.get("objects", [])
    if not isinstance(objects_obj, list):
        raise SchemaError("$.objects", "must be an array")
    placed = []
    for i, entry in enumerate(objects_obj):
        path = f"$.objects[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError(path, "must be an object")
        kind = entry.get("kind")
        if kind not in spec_by_kind:
            raise SchemaError(f"{path}.kind", f"unknown furniture kind {kind!r}")
        center = entry.get("center_m")
        if (
            not isinstance(center, (list, tuple))
            or len(center) != 2
            or not all(isinstance(c, (int, float)) for c in center)
        ):
            raise SchemaError(f"{path}.center_m", "must be [x, y] numbers")
        rotation = entry.get("rotation_deg", 0)
        if rotation not in VALID_ROTATIONS:
            raise SchemaError(
                f"{path}.rotation_deg", f"must be one of {list(VALID_ROTATIONS)}"
            )
        try:
            placed.append(place(spec_by_kind[kind], center, rotation))
        except GeometryError as e:
            raise SchemaError(path, str(e)) from e
    return Layout(room, tuple(placed))


def parse_layout(text: str, specs: list[FurnitureSpec] | None = None) -> Layout:
    """Parse layout JSON text (schema check only; see validate_layout)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError("$", f"invalid JSON: {e}") from e
    return layout_from_json(data, specs)
