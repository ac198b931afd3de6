"""Discrete-time redirected-walking simulator with potential-field steering.

The simulated user walks straight lines between randomly spawned virtual
targets in an unbounded empty virtual world while gains remap that motion
into the physical room: translation gains stretch step length, rotation
gains stretch in-place turns, and a curvature term bends straight virtual
walks along a fixed-radius physical arc, always steering the physical
heading toward the artificial-potential-field force.  Walls and obstacles
repel with a w * (p - c) / |p - c|^(1+e) kernel summed over elements; when
the user comes within the reset buffer of any element, a reset increments
the counter and instantly re-aims the physical heading along the summed
force (the reorientation turn is modeled as instantaneous).

Episodes are deterministic in their seed and embarrassingly parallel: each
path derives a private stream via rng.mix(seed, path_index), so any worker
schedule reproduces the sequential result bit for bit.

Internally positions are kept relative to the room center and the physical
heading is a unit vector rather than an angle.  Quarter-turn rotations of
that representation are exact in floating point, which makes a simulated
episode on a 90-degree-rotated layout (with equally rotated start pose)
reproduce the original episode's reset count exactly, not just closely.
"""

from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass
from multiprocessing import get_context

import numpy as np

from .geometry import contains, vec2
from .layout import InfeasibleLayoutError, Layout
from .rng import mix

# The user turns in place until the virtual heading error is below this
# before translating, so virtual paths between targets are straight lines.
TURN_ALIGN_TOL = math.radians(1.0)

_TWO_PI = 2.0 * math.pi
_START_ATTEMPTS = 10_000


class InvalidPositionError(ValueError):
    """Queried position is outside the room or inside an obstacle."""


class SimConfigError(ValueError):
    """Simulator configuration violates its invariants."""


@dataclass(frozen=True)
class SimConfig:
    """All simulator constants.  Defaults reproduce the study protocol.

    curvature_radius may be math.inf to disable curvature injection; gain
    ranges of (1, 1) disable the corresponding gain.
    """

    dt: float = 1.0 / 90.0
    walk_speed: float = 1.4          # m/s, virtual
    turn_speed: float = 90.0         # deg/s, virtual
    trans_gain_range: tuple[float, float] = (0.86, 1.26)
    rot_gain_range: tuple[float, float] = (0.67, 1.24)
    curvature_radius: float = 7.5    # meters
    reset_buffer: float = 0.2        # meters
    target_radius_range: tuple[float, float] = (2.0, 6.0)
    target_collect_dist: float = 0.1
    episode_distance: float = 500.0
    force_falloff_exponent: float = 2.0
    wall_segment_weight: float = 1.0
    obstacle_weight: float = 1.0

    def __post_init__(self):
        positives = {
            "dt": self.dt,
            "walk_speed": self.walk_speed,
            "turn_speed": self.turn_speed,
            "curvature_radius": self.curvature_radius,
            "reset_buffer": self.reset_buffer,
            "target_collect_dist": self.target_collect_dist,
            "force_falloff_exponent": self.force_falloff_exponent,
            "wall_segment_weight": self.wall_segment_weight,
            "obstacle_weight": self.obstacle_weight,
        }
        for name, value in positives.items():
            if not value > 0:
                raise SimConfigError(f"{name} must be positive, got {value}")
        if self.episode_distance < 0:
            raise SimConfigError("episode_distance must be >= 0")
        for name, (lo, hi) in (
            ("trans_gain_range", self.trans_gain_range),
            ("rot_gain_range", self.rot_gain_range),
        ):
            if not (0 < lo <= 1.0 <= hi):
                raise SimConfigError(f"{name} must contain 1.0, got ({lo}, {hi})")
        lo, hi = self.target_radius_range
        if not (0 < lo <= hi):
            raise SimConfigError(f"target_radius_range must be ordered positive")


@dataclass
class UserState:
    """Pose of the simulated user; headings are radians in (-pi, pi]."""

    phys_pos: np.ndarray
    phys_heading: float
    virt_pos: np.ndarray
    virt_heading: float
    virt_distance_walked: float = 0.0
    resets: int = 0


@dataclass(frozen=True)
class GainSet:
    translation: float
    rotation: float
    curvature_sign: float


@dataclass(frozen=True)
class EpisodeResult:
    resets: int
    distance: float
    phys_trace: list | None
    seed: int


@dataclass(frozen=True)
class ResetEstimate:
    per_path: list[int]
    mean: float
    std: float  # population standard deviation over per_path


def _wrap(a: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    if -math.pi < a <= math.pi:
        return a
    a = math.fmod(a + math.pi, _TWO_PI)
    if a <= 0.0:
        a += _TWO_PI
    return a - math.pi


def _rotq(x: float, y: float, quarter: int) -> tuple[float, float]:
    """Rotate by quarter * 90 degrees about the origin, exactly."""
    q = quarter & 3
    if q == 0:
        return x, y
    if q == 1:
        return -y, x
    if q == 2:
        return -x, -y
    return y, -x


class _SimLayout:
    """Per-layout precomputation: room half-extents and obstacle data in
    room-centered coordinates, with a fast path for axis-aligned rectangles
    (every catalog footprint after quarter-turn rotation)."""

    __slots__ = ("hw", "hh", "cx", "cy", "rects", "polys")

    def __init__(self, layout: Layout, cfg: SimConfig):
        room = layout.room
        self.hw = room.width / 2.0
        self.hh = room.height / 2.0
        self.cx = float(room.center[0])
        self.cy = float(room.center[1])
        if not cfg.reset_buffer < min(self.hw, self.hh):
            raise SimConfigError(
                "reset_buffer must be smaller than half the room's shorter side"
            )
        self.rects: list[tuple[float, float, float, float]] = []
        self.polys: list[list[tuple[float, float]]] = []
        for obj in layout.objects:
            v = obj.footprint.vertices
            pts = [(float(x) - self.cx, float(y) - self.cy) for x, y in v]
            if len(pts) == 4 and all(
                pts[i][0] == pts[(i + 1) % 4][0] or pts[i][1] == pts[(i + 1) % 4][1]
                for i in range(4)
            ):
                xs = [p[0] for p in pts]
                ys = [p[1] for p in pts]
                self.rects.append((min(xs), max(xs), min(ys), max(ys)))
            else:
                self.polys.append(pts)

    def force_clearance(
        self, u: float, v: float, e: float, w_wall: float, w_obs: float
    ) -> tuple[float, float, float]:
        """Summed repulsive force and minimum element distance at (u, v).

        (u, v) are room-centered coordinates strictly inside the room and
        outside every obstacle.  Returns (fx, fy, clearance).
        """
        hw, hh = self.hw, self.hh
        dl = hw + u
        dr = hw - u
        db = hh + v
        dt = hh - v
        clear = dl if dl < dr else dr
        if db < clear:
            clear = db
        if dt < clear:
            clear = dt
        if e == 2.0:
            fx = w_wall / (dl * dl) - w_wall / (dr * dr)
            fy = w_wall / (db * db) - w_wall / (dt * dt)
        else:
            fx = w_wall * dl ** (-e) - w_wall * dr ** (-e)
            fy = w_wall * db ** (-e) - w_wall * dt ** (-e)
        ep1 = e + 1.0
        for lox, hix, loy, hiy in self.rects:
            qx = lox if u < lox else (hix if u > hix else u)
            qy = loy if v < loy else (hiy if v > hiy else v)
            dx = u - qx
            dy = v - qy
            d2 = dx * dx + dy * dy
            d = math.sqrt(d2)
            if d < clear:
                clear = d
            if d > 0.0:
                if e == 2.0:
                    s = w_obs / (d2 * d)
                else:
                    s = w_obs * d ** (-ep1)
                fx += dx * s
                fy += dy * s
        for pts in self.polys:
            n = len(pts)
            best_d2 = math.inf
            bx = by = 0.0
            for i in range(n):
                ax, ay = pts[i]
                ex, ey = pts[(i + 1) % n]
                abx = ex - ax
                aby = ey - ay
                t = ((u - ax) * abx + (v - ay) * aby) / (abx * abx + aby * aby)
                t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
                qx = ax + t * abx
                qy = ay + t * aby
                dx = u - qx
                dy = v - qy
                d2 = dx * dx + dy * dy
                if d2 < best_d2:
                    best_d2 = d2
                    bx, by = dx, dy
            d = math.sqrt(best_d2)
            if d < clear:
                clear = d
            if d > 0.0:
                if e == 2.0:
                    s = w_obs / (best_d2 * d)
                else:
                    s = w_obs * d ** (-ep1)
                fx += bx * s
                fy += by * s
        return fx, fy, clear

    def position_valid(self, u: float, v: float) -> bool:
        """Strictly inside the room and strictly outside every obstacle."""
        if not (-self.hw < u < self.hw and -self.hh < v < self.hh):
            return False
        for lox, hix, loy, hiy in self.rects:
            if lox <= u <= hix and loy <= v <= hiy:
                return False
        for pts in self.polys:
            n = len(pts)
            inside = True
            for i in range(n):
                ax, ay = pts[i]
                bx, by = pts[(i + 1) % n]
                if (bx - ax) * (v - ay) - (by - ay) * (u - ax) < 0.0:
                    inside = False
                    break
            if inside:
                return False
        return True


def apf_force(layout: Layout, cfg: SimConfig, p) -> np.ndarray:
    """Summed virtual push force from the four walls and every obstacle.

    Each element contributes w * (p - c) / |p - c|^(1 + e) where c is its
    closest point to p.  p must be strictly inside the room and outside all
    footprints.
    """
    sim = _SimLayout(layout, cfg)
    u = float(p[0]) - sim.cx
    v = float(p[1]) - sim.cy
    if not (-sim.hw < u < sim.hw and -sim.hh < v < sim.hh):
        raise InvalidPositionError("position is not strictly inside the room")
    for obj in layout.objects:
        if contains(obj.footprint, p):
            raise InvalidPositionError(f"position is inside obstacle '{obj.kind}'")
    fx, fy, _ = sim.force_clearance(
        u, v, cfg.force_falloff_exponent, cfg.wall_segment_weight, cfg.obstacle_weight
    )
    return vec2(fx, fy)


def _walk_gains(
    hx: float, hy: float, fx: float, fy: float, cfg: SimConfig
) -> tuple[float, float]:
    """(translation gain, curvature sign) for a walking frame."""
    if fx == 0.0 and fy == 0.0:
        return 1.0, 0.0
    dot = hx * fx + hy * fy
    cross = hx * fy - hy * fx
    gain = cfg.trans_gain_range[1] if dot >= 0.0 else cfg.trans_gain_range[0]
    sign = 1.0 if cross > 0.0 else (-1.0 if cross < 0.0 else 1.0)
    return gain, sign


def _turn_gain(
    hx: float, hy: float, fx: float, fy: float, turn_sign: float, cfg: SimConfig
) -> float:
    """Rotation gain while virtually turning in direction turn_sign."""
    if fx == 0.0 and fy == 0.0:
        return 1.0
    cross = hx * fy - hy * fx  # sin of heading->force angle
    dot = hx * fx + hy * fy
    if cross == 0.0:
        toward = dot < 0.0  # directly opposed: either turn direction helps
    else:
        toward = (cross > 0.0) == (turn_sign > 0.0)
    return cfg.rot_gain_range[1] if toward else cfg.rot_gain_range[0]


def select_gains(
    state: UserState, F, cfg: SimConfig, walking: bool, turn_direction: float = 0.0
) -> GainSet:
    """Gain policy: steer the physical heading toward the force direction.

    Walking frames pick the curvature sign that bends the heading toward F
    (ties break positive) and the max translation gain when moving with the
    force, min against it.  Turning frames pick the max rotation gain when
    the induced physical turn rotates the heading toward F, min otherwise;
    turn_direction is the sign of the virtual rotation being executed.
    A zero force yields neutral gains with curvature off.
    """
    fx, fy = float(F[0]), float(F[1])
    if fx == 0.0 and fy == 0.0:
        return GainSet(1.0, 1.0, 0.0)
    hx = math.cos(state.phys_heading)
    hy = math.sin(state.phys_heading)
    if walking:
        gain, sign = _walk_gains(hx, hy, fx, fy, cfg)
        return GainSet(gain, 1.0, sign)
    rotation = _turn_gain(hx, hy, fx, fy, turn_direction, cfg)
    return GainSet(1.0, rotation, 0.0)


def step(state: UserState, target, layout: Layout, cfg: SimConfig) -> UserState:
    """Advance one frame toward a virtual target.

    The user first rotates the virtual heading toward the target at up to
    turn_speed * dt, then, once aligned within the turn tolerance, advances
    the virtual position by walk_speed * dt.  Physical motion is the virtual
    motion divided by the applicable gains; while translating, the heading
    additionally bends by curvature_sign * step_length / curvature_radius
    (applied half before, half after the translation, which keeps the
    discrete path on the exact circle).  A physical step that would leave
    the room or enter a footprint is skipped while the virtual walk
    continues, so the safety invariant holds on any layout.
    """
    sim = _SimLayout(layout, cfg)
    u = float(state.phys_pos[0]) - sim.cx
    v = float(state.phys_pos[1]) - sim.cy
    hx = math.cos(state.phys_heading)
    hy = math.sin(state.phys_heading)
    fx, fy, _ = sim.force_clearance(
        u, v, cfg.force_falloff_exponent, cfg.wall_segment_weight, cfg.obstacle_weight
    )

    tvx = float(target[0]) - float(state.virt_pos[0])
    tvy = float(target[1]) - float(state.virt_pos[1])
    delta = _wrap(math.atan2(tvy, tvx) - state.virt_heading)
    max_turn = math.radians(cfg.turn_speed) * cfg.dt
    if delta != 0.0:
        dv = max(-max_turn, min(max_turn, delta))
        g_rot = _turn_gain(hx, hy, fx, fy, 1.0 if dv > 0 else -1.0, cfg)
        state.virt_heading = _wrap(state.virt_heading + dv)
        ang = dv / g_rot
        c, s = math.cos(ang), math.sin(ang)
        hx, hy = hx * c - hy * s, hx * s + hy * c
        delta -= dv

    if abs(delta) < TURN_ALIGN_TOL:
        g_t, sign = _walk_gains(hx, hy, fx, fy, cfg)
        ds_v = cfg.walk_speed * cfg.dt
        state.virt_pos = vec2(
            state.virt_pos[0] + ds_v * math.cos(state.virt_heading),
            state.virt_pos[1] + ds_v * math.sin(state.virt_heading),
        )
        state.virt_distance_walked += ds_v
        ds_p = ds_v / g_t
        if sign != 0.0 and math.isfinite(cfg.curvature_radius):
            half = sign * ds_p / (2.0 * cfg.curvature_radius)
            c, s = math.cos(half), math.sin(half)
            hx, hy = hx * c - hy * s, hx * s + hy * c
            nu, nv = u + ds_p * hx, v + ds_p * hy
            hx, hy = hx * c - hy * s, hx * s + hy * c
        else:
            nu, nv = u + ds_p * hx, v + ds_p * hy
        if sim.position_valid(nu, nv):
            u, v = nu, nv

    state.phys_pos = vec2(u + sim.cx, v + sim.cy)
    state.phys_heading = _wrap(math.atan2(hy, hx))
    return state


def check_and_reset(state: UserState, layout: Layout, cfg: SimConfig) -> UserState:
    """Fire a reset if the user is within reset_buffer of a wall or obstacle.

    A reset increments the counter and instantly re-aims the physical
    heading along the summed push force; virtual state is untouched.  (The
    real-world reorientation turn contributes no walking time, so it is
    modeled as instantaneous.)
    """
    sim = _SimLayout(layout, cfg)
    u = float(state.phys_pos[0]) - sim.cx
    v = float(state.phys_pos[1]) - sim.cy
    fx, fy, clear = sim.force_clearance(
        u, v, cfg.force_falloff_exponent, cfg.wall_segment_weight, cfg.obstacle_weight
    )
    if clear < cfg.reset_buffer:
        state.resets += 1
        norm = math.sqrt(fx * fx + fy * fy)
        if norm > 0.0 and math.isfinite(norm):
            state.phys_heading = _wrap(math.atan2(fy, fx))
    return state


def _run_episode(
    sim: _SimLayout,
    cfg: SimConfig,
    seed: int,
    quarter: int,
    want_trace: bool,
    audit: list | None,
    rows: list | None = None,
):
    rng = random.Random(seed)
    rnd = rng.random
    hw, hh = sim.hw, sim.hh
    e = cfg.force_falloff_exponent
    w_wall = cfg.wall_segment_weight
    w_obs = cfg.obstacle_weight
    buffer = cfg.reset_buffer
    force_clearance = sim.force_clearance
    position_valid = sim.position_valid

    # Start pose: uniform over free space with clearance strictly above the
    # buffer; headings uniform.  Draws happen in canonical coordinates and
    # are then rotated by `quarter`, so a rotated layout consumes the stream
    # identically and accepts on the same attempt.
    for _ in range(_START_ATTEMPTS):
        u = (2.0 * rnd() - 1.0) * hw
        v = (2.0 * rnd() - 1.0) * hh
        if quarter:
            u, v = _rotq(u, v, quarter)
        _, _, clear = force_clearance(u, v, e, w_wall, w_obs)
        if clear > buffer:
            break
    else:
        raise InfeasibleLayoutError(
            "no start position with clearance above reset_buffer "
            f"after {_START_ATTEMPTS} attempts"
        )
    ang = (2.0 * rnd() - 1.0) * math.pi
    hx, hy = math.cos(ang), math.sin(ang)
    if quarter:
        hx, hy = _rotq(hx, hy, quarter)
    theta_v = (2.0 * rnd() - 1.0) * math.pi

    vx = vy = 0.0
    walked = 0.0
    resets = 0
    frame = 0
    trace = [(u + sim.cx, v + sim.cy)] if want_trace else None
    if rows is not None:
        rows.append((0, u + sim.cx, v + sim.cy, 0.0, 0.0, 0))
    if cfg.episode_distance <= 0.0:
        return EpisodeResult(0, 0.0, trace, seed)

    t_lo, t_hi = cfg.target_radius_range
    r = t_lo + rnd() * (t_hi - t_lo)
    a = (2.0 * rnd() - 1.0) * math.pi
    tx, ty = vx + r * math.cos(a), vy + r * math.sin(a)

    max_turn = math.radians(cfg.turn_speed) * cfg.dt
    ds_v = cfg.walk_speed * cfg.dt
    collect2 = cfg.target_collect_dist * cfg.target_collect_dist
    episode_distance = cfg.episode_distance
    g_lo, g_hi = cfg.trans_gain_range
    r_lo, r_hi = cfg.rot_gain_range
    curving = math.isfinite(cfg.curvature_radius)
    if curving:
        # Per-frame arc parameters for each translation gain, precomputed.
        half_lo = ds_v / g_lo / (2.0 * cfg.curvature_radius)
        half_hi = ds_v / g_hi / (2.0 * cfg.curvature_radius)
        arc = {
            g_lo: (ds_v / g_lo, math.cos(half_lo), math.sin(half_lo)),
            g_hi: (ds_v / g_hi, math.cos(half_hi), math.sin(half_hi)),
        }
        kappa = 1.0 / cfg.curvature_radius
    pending_check = False

    while True:
        fx, fy, clear = force_clearance(u, v, e, w_wall, w_obs)
        if pending_check:
            pending_check = False
            if clear < buffer:
                resets += 1
                norm = math.sqrt(fx * fx + fy * fy)
                if norm > 0.0 and math.isfinite(norm):
                    hx, hy = fx / norm, fy / norm

        force_zero = fx == 0.0 and fy == 0.0

        delta = _wrap(math.atan2(ty - vy, tx - vx) - theta_v)
        if delta != 0.0:
            dv = -max_turn if delta < -max_turn else (max_turn if delta > max_turn else delta)
            if force_zero:
                g_rot = 1.0
            else:
                cross = hx * fy - hy * fx
                dot = hx * fx + hy * fy
                if cross == 0.0:
                    toward = dot < 0.0
                else:
                    toward = (cross > 0.0) == (dv > 0.0)
                g_rot = r_hi if toward else r_lo
            if audit is not None:
                audit.append(("rotation", g_rot))
            theta_v = _wrap(theta_v + dv)
            angle = dv / g_rot
            c, s = math.cos(angle), math.sin(angle)
            hx, hy = hx * c - hy * s, hx * s + hy * c
            delta -= dv

        if delta < TURN_ALIGN_TOL and delta > -TURN_ALIGN_TOL:
            if force_zero:
                g_t, sign = 1.0, 0.0
            else:
                dot = hx * fx + hy * fy
                cross = hx * fy - hy * fx
                g_t = g_hi if dot >= 0.0 else g_lo
                sign = 1.0 if cross > 0.0 else (-1.0 if cross < 0.0 else 1.0)
            vx += ds_v * math.cos(theta_v)
            vy += ds_v * math.sin(theta_v)
            walked += ds_v
            if sign != 0.0 and curving:
                ds_p, c, s = arc[g_t]
                if sign < 0.0:
                    s = -s
                hx, hy = hx * c - hy * s, hx * s + hy * c
                nu, nv = u + ds_p * hx, v + ds_p * hy
                hx, hy = hx * c - hy * s, hx * s + hy * c
            else:
                ds_p = ds_v / g_t
                nu, nv = u + ds_p * hx, v + ds_p * hy
            if position_valid(nu, nv):
                u, v = nu, nv
            pending_check = True
            if audit is not None:
                audit.append(("translation", g_t))
                audit.append(("curvature", sign * kappa if curving else 0.0))

        frame += 1
        if want_trace:
            trace.append((u + sim.cx, v + sim.cy))
        if rows is not None:
            rows.append((frame, u + sim.cx, v + sim.cy, vx, vy, resets))
        if walked >= episode_distance:
            break
        dx = tx - vx
        dy = ty - vy
        if dx * dx + dy * dy < collect2:
            r = t_lo + rnd() * (t_hi - t_lo)
            a = (2.0 * rnd() - 1.0) * math.pi
            tx, ty = vx + r * math.cos(a), vy + r * math.sin(a)

    return EpisodeResult(resets, walked, trace, seed)


def run_episode(
    layout: Layout,
    cfg: SimConfig,
    seed: int,
    record_trace: bool = False,
    pose_quarter_turns: int = 0,
    audit: list | None = None,
) -> EpisodeResult:
    """Simulate one episode: walk random virtual targets until the virtual
    distance reaches cfg.episode_distance, counting resets.

    pose_quarter_turns rotates the randomly drawn physical start pose by
    that many exact quarter turns; running a 90-degree-rotated layout with
    pose_quarter_turns=1 and the same seed reproduces the original episode's
    reset count exactly (the physical trace rotates along).  `audit`, if
    given, collects ("rotation"|"translation"|"curvature", value) pairs for
    every applied gain.
    """
    sim = _SimLayout(layout, cfg)
    return _run_episode(sim, cfg, seed, pose_quarter_turns & 3, record_trace, audit)


def _episode_worker(args) -> int:
    layout, cfg, seed, quarter = args
    return run_episode(layout, cfg, seed, pose_quarter_turns=quarter).resets


def estimate_resets(
    layout: Layout,
    cfg: SimConfig,
    paths: int,
    seed: int,
    workers: int | None = None,
    pose_quarter_turns: int = 0,
) -> ResetEstimate:
    """Monte Carlo reset estimate over `paths` independent random paths.

    Per-path seeds derive as mix(seed, path_index); per_path is ordered by
    index and the mean/std reduce sequentially in that order, so the result
    does not depend on how episodes are scheduled across workers.
    """
    if paths < 1:
        raise ValueError(f"paths must be >= 1, got {paths}")
    seeds = [mix(seed, i) for i in range(paths)]
    if workers and workers > 1 and paths > 1:
        with get_context("fork").Pool(processes=min(workers, paths)) as pool:
            per_path = pool.map(
                _episode_worker,
                [(layout, cfg, s, pose_quarter_turns) for s in seeds],
            )
    else:
        per_path = [
            run_episode(layout, cfg, s, pose_quarter_turns=pose_quarter_turns).resets
            for s in seeds
        ]
    mean = math.fsum(per_path) / paths
    std = math.sqrt(math.fsum((x - mean) ** 2 for x in per_path) / paths)
    return ResetEstimate(list(per_path), mean, std)


def write_trace_csv(layout: Layout, cfg: SimConfig, seed: int, path) -> None:
    """Run an episode and dump (step, phys_x, phys_y, virt_x, virt_y,
    resets) per frame to a CSV file; debugging aid."""
    sim = _SimLayout(layout, cfg)
    rows: list[tuple] = []
    _run_episode(sim, cfg, seed, 0, False, None, rows=rows)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["step", "phys_x", "phys_y", "virt_x", "virt_y", "resets"])
        writer.writerows(rows)
