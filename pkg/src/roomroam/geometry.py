"""2D primitives for rectangular rooms and convex obstacles.

Conventions used across the package:

* Rooms are axis-aligned rectangles centered on the origin, so a 5 x 5 m
  room spans [-2.5, 2.5] on both axes.  Centering makes the four quarter-turn
  rotations exact in floating point (swap/negate only), which the simulator
  and the rasterizer rely on for their exact symmetry guarantees.
* Polygons are strictly convex with counter-clockwise winding.
* Boundary points count as inside a polygon (closed polygons), and two
  polygons that merely touch do not overlap, so furniture may sit flush
  against a wall or a neighbor.
* Rasterization samples pixel centers; no anti-aliasing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

VALID_ROTATIONS = (0, 90, 180, 270)


class GeometryError(ValueError):
    """Invalid geometric input (degenerate polygon, malformed rect)."""


class InvalidRotationError(GeometryError):
    """Rotation angle outside the supported {0, 90, 180, 270} set."""


class OutOfBoundsError(GeometryError):
    """An object escapes the room it must lie inside."""


def vec2(x: float, y: float) -> np.ndarray:
    """A 2-vector as a float64 array; the package's point/vector currency."""
    v = np.array([float(x), float(y)], dtype=np.float64)
    if not np.all(np.isfinite(v)):
        raise GeometryError(f"vector components must be finite, got ({x}, {y})")
    return v


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle with strictly ordered corners."""

    min: np.ndarray
    max: np.ndarray

    def __post_init__(self):
        mn = np.asarray(self.min, dtype=np.float64)
        mx = np.asarray(self.max, dtype=np.float64)
        if mn.shape != (2,) or mx.shape != (2,):
            raise GeometryError("rect corners must be 2-vectors")
        if not (np.all(np.isfinite(mn)) and np.all(np.isfinite(mx))):
            raise GeometryError("rect corners must be finite")
        if not (mn[0] < mx[0] and mn[1] < mx[1]):
            raise GeometryError("rect must have min < max on both axes")
        object.__setattr__(self, "min", mn)
        object.__setattr__(self, "max", mx)

    @staticmethod
    def centered(width: float, height: float) -> "Rect":
        """Origin-centered rectangle of the given side lengths."""
        hw, hh = width / 2.0, height / 2.0
        return Rect(vec2(-hw, -hh), vec2(hw, hh))

    @property
    def width(self) -> float:
        return float(self.max[0] - self.min[0])

    @property
    def height(self) -> float:
        return float(self.max[1] - self.min[1])

    @property
    def center(self) -> np.ndarray:
        return (self.min + self.max) / 2.0


@dataclass(frozen=True)
class ConvexPoly:
    """Strictly convex polygon, counter-clockwise, non-degenerate."""

    vertices: np.ndarray  # (n, 2) float64

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=np.float64)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise GeometryError("polygon needs an (n>=3, 2) vertex array")
        if not np.all(np.isfinite(v)):
            raise GeometryError("polygon vertices must be finite")
        n = v.shape[0]
        # Strict convexity + CCW: every consecutive edge pair turns left.
        for i in range(n):
            a, b, c = v[i], v[(i + 1) % n], v[(i + 2) % n]
            cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
            if cross <= 0.0:
                raise GeometryError(
                    "polygon must be strictly convex with counter-clockwise winding"
                )
        if polygon_area(v) <= 1e-9:
            raise GeometryError("polygon area below 1e-9 m^2")
        object.__setattr__(self, "vertices", v)


def polygon_area(vertices: np.ndarray) -> float:
    """Shoelace area; positive for counter-clockwise vertex order."""
    v = np.asarray(vertices, dtype=np.float64)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def contains(poly: ConvexPoly, p) -> bool:
    """True iff ``p`` lies inside ``poly`` or on its boundary."""
    px, py = float(p[0]), float(p[1])
    v = poly.vertices
    n = len(v)
    for i in range(n):
        ax, ay = v[i]
        bx, by = v[(i + 1) % n]
        if (bx - ax) * (py - ay) - (by - ay) * (px - ax) < 0.0:
            return False
    return True


def closest_point(poly: ConvexPoly, p) -> np.ndarray:
    """Closest point of the (closed) polygon to ``p``.

    Interior points are their own closest point; exterior points map to the
    nearest boundary point (edge foot or vertex).
    """
    p = vec2(p[0], p[1])
    if contains(poly, p):
        return p
    v = poly.vertices
    n = len(v)
    best = None
    best_d2 = np.inf
    for i in range(n):
        a = v[i]
        b = v[(i + 1) % n]
        ab = b - a
        t = float(np.dot(p - a, ab) / np.dot(ab, ab))
        t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
        c = a + t * ab
        d2 = float(np.dot(p - c, p - c))
        if d2 < best_d2:
            best_d2 = d2
            best = c
    return best


def distance_to_poly(poly: ConvexPoly, p) -> float:
    """Euclidean distance from ``p`` to the polygon (0 inside)."""
    c = closest_point(poly, p)
    return float(np.hypot(p[0] - c[0], p[1] - c[1]))


def _projection(vertices: np.ndarray, axis_x: float, axis_y: float):
    dots = vertices[:, 0] * axis_x + vertices[:, 1] * axis_y
    return float(dots.min()), float(dots.max())


def polys_overlap(a: ConvexPoly, b: ConvexPoly) -> bool:
    """True iff the polygon interiors intersect (separating-axis test).

    Shared boundary alone is not overlap: a projection gap of exactly zero
    counts as separated, which lets furniture touch.
    """
    for poly in (a, b):
        v = poly.vertices
        n = len(v)
        for i in range(n):
            ex = v[(i + 1) % n][0] - v[i][0]
            ey = v[(i + 1) % n][1] - v[i][1]
            # Outward-ish normal; orientation does not matter for intervals.
            nx, ny = -ey, ex
            amin, amax = _projection(a.vertices, nx, ny)
            bmin, bmax = _projection(b.vertices, nx, ny)
            if amax <= bmin or bmax <= amin:
                return False
    return True


def rotate_exact(x: float, y: float, rotation_deg: int) -> tuple[float, float]:
    """Rotate a point about the origin by a quarter-turn multiple.

    Only swaps and negations, hence exact in floating point.
    """
    if rotation_deg == 0:
        return x, y
    if rotation_deg == 90:
        return -y, x
    if rotation_deg == 180:
        return -x, -y
    if rotation_deg == 270:
        return y, -x
    raise InvalidRotationError(f"rotation must be one of {VALID_ROTATIONS}, got {rotation_deg}")


def transform(poly: ConvexPoly, center, rotation_deg: int) -> ConvexPoly:
    """Rotate a centroid-local polygon by a quarter turn, then translate.

    Winding is preserved; the four supported angles are applied exactly
    (coordinate swap/negate), so four 90-degree turns compose to the
    identity bit-for-bit.
    """
    if rotation_deg not in VALID_ROTATIONS:
        raise InvalidRotationError(
            f"rotation must be one of {VALID_ROTATIONS}, got {rotation_deg}"
        )
    cx, cy = float(center[0]), float(center[1])
    out = np.empty_like(poly.vertices)
    for i, (x, y) in enumerate(poly.vertices):
        rx, ry = rotate_exact(float(x), float(y), rotation_deg)
        out[i, 0] = rx + cx
        out[i, 1] = ry + cy
    return ConvexPoly(out)


@dataclass(frozen=True)
class BinaryImage:
    """Square bit image; 1 = object, 0 = empty.  Row 0 is the top row."""

    pixels: np.ndarray  # (h, w) uint8 in {0, 1}

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=np.uint8)
        if px.ndim != 2:
            raise GeometryError("image must be 2-D")
        if px.size and px.max() > 1:
            raise GeometryError("image values must be 0 or 1")
        object.__setattr__(self, "pixels", px)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def to_pgm(self) -> bytes:
        """Binary PGM with objects white (255) on black; see pgm_bytes."""
        return pgm_bytes(self.pixels * np.uint8(255))


def pgm_bytes(gray: np.ndarray) -> bytes:
    """Encode a (h, w) uint8 array as a binary PGM (P5).

    Exact byte layout: ASCII header ``P5\\n<width> <height>\\n255\\n``
    followed by h*w raw bytes, row-major from the top row down.
    """
    g = np.ascontiguousarray(gray, dtype=np.uint8)
    h, w = g.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + g.tobytes()


def pixel_centers(room: Rect, resolution: int) -> tuple[np.ndarray, np.ndarray]:
    """Pixel-center coordinates (xs ascending, ys for rows top to bottom).

    Centers are computed as (2k + 1 - res) * (side / (2 res)) relative to the
    room center, an odd-symmetric form: mirrored pixel indices get exactly
    negated coordinates, which keeps quarter-turn rotations of the raster
    exact for origin-centered square rooms.
    """
    cx, cy = room.center
    hx = room.width / (2.0 * resolution)
    hy = room.height / (2.0 * resolution)
    k = 2 * np.arange(resolution, dtype=np.float64) + 1.0 - resolution
    xs = cx + k * hx
    ys = cy + (k * hy)[::-1]  # row 0 at max y
    return xs, ys


def rasterize(room: Rect, objects, resolution: int) -> BinaryImage:
    """Binary top-down raster of the room interior at the given resolution.

    A pixel is set iff its center lies in any object (boundary inclusive).
    Walls are not drawn; the image spans exactly the room interior.  Objects
    must lie fully inside the room.
    """
    if resolution < 16:
        raise GeometryError(f"resolution must be >= 16, got {resolution}")
    for idx, poly in enumerate(objects):
        v = poly.vertices
        if (
            v[:, 0].min() < room.min[0]
            or v[:, 0].max() > room.max[0]
            or v[:, 1].min() < room.min[1]
            or v[:, 1].max() > room.max[1]
        ):
            raise OutOfBoundsError(f"object {idx} escapes the room bounds")

    xs, ys = pixel_centers(room, resolution)
    img = np.zeros((resolution, resolution), dtype=np.uint8)
    for poly in objects:
        v = poly.vertices
        # Bounding-box window to limit the per-pixel edge tests.
        jmask = (xs >= v[:, 0].min()) & (xs <= v[:, 0].max())
        imask = (ys >= v[:, 1].min()) & (ys <= v[:, 1].max())
        if not jmask.any() or not imask.any():
            continue
        jidx = np.nonzero(jmask)[0]
        iidx = np.nonzero(imask)[0]
        X = xs[jidx][None, :]
        Y = ys[iidx][:, None]
        inside = np.ones((len(iidx), len(jidx)), dtype=bool)
        n = len(v)
        for i in range(n):
            ax, ay = v[i]
            bx, by = v[(i + 1) % n]
            inside &= (bx - ax) * (Y - ay) - (by - ay) * (X - ax) >= 0.0
        img[np.ix_(iidx, jidx)] |= inside.astype(np.uint8)
    return BinaryImage(img)
