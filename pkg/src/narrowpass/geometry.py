"""Workspace obstacles, collision predicates, and collision-call counting.

Scenes hold convex CCW polygons (2D) or axis-aligned boxes (3D) inside a
bounded arena.  Translations outside the arena bounds are treated as
colliding, so the workspace walls behave like implicit obstacles.  Boundary
contact always counts as a collision: the predicates are conservative.

Collision cost is the benchmark's core metric, so ``is_colliding`` increments
an explicit, caller-owned counter exactly once per call regardless of the
outcome.  One call covers the whole robot (all links / body boxes), which
keeps per-sampler cost comparisons internally consistent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cspace import Configuration, PlanarLinkRobot, PointRobot, RigidBodyRobot3D, forward_kinematics

_EPS = 1e-9


class CollisionCounter:
    """Counts collision-predicate calls for one trial; reset between trials."""

    __slots__ = ("calls",)

    def __init__(self):
        self.calls = 0

    def increment(self):
        self.calls += 1

    def reset(self):
        self.calls = 0

    def __repr__(self):
        return f"CollisionCounter(calls={self.calls})"


def validate_polygon(vertices) -> np.ndarray:
    """Check a CCW convex polygon with non-degenerate area; return as array."""
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2:
        raise ValueError("polygon vertices must be an (n, 2) sequence")
    n = len(v)
    if n < 3:
        raise ValueError("polygon requires >= 3 vertices")
    area2 = 0.0
    for i in range(n):
        x1, y1 = v[i]
        x2, y2 = v[(i + 1) % n]
        area2 += x1 * y2 - x2 * y1
    if area2 <= 1e-12:
        raise ValueError("polygon must be CCW with positive area")
    for i in range(n):
        ax, ay = v[(i + 1) % n] - v[i]
        bx, by = v[(i + 2) % n] - v[(i + 1) % n]
        if ax * by - ay * bx < -1e-12:
            raise ValueError("polygon must be convex")
    return v


def validate_box(mn, mx, dims: int):
    mn = np.asarray(mn, dtype=float)
    mx = np.asarray(mx, dtype=float)
    if mn.shape != (dims,) or mx.shape != (dims,):
        raise ValueError(f"box corners must be {dims}D")
    if np.any(mx <= mn):
        raise ValueError("box must have positive extents")
    return mn, mx


@dataclass(eq=False)
class Scene:
    """Workspace obstacles plus an optional declared passage region.

    The passage region is metadata for quality metrics only; samplers never
    see it.  ``projection`` names the two axes used when drawing a 3D scene.
    """

    name: str
    dims: int
    lo: np.ndarray
    hi: np.ndarray
    polygons: list = field(default_factory=list)
    boxes: list = field(default_factory=list)
    passage: tuple | None = None
    projection: tuple | None = None

    def __post_init__(self):
        if self.dims not in (2, 3):
            raise ValueError("scene dims must be 2 or 3")
        self.lo = np.asarray(self.lo, dtype=float)
        self.hi = np.asarray(self.hi, dtype=float)
        if self.lo.shape != (self.dims,) or self.hi.shape != (self.dims,):
            raise ValueError("scene bounds must match dims")
        if np.any(self.lo >= self.hi):
            raise ValueError("scene bounds require lo < hi on every axis")
        if self.dims == 2:
            if self.boxes:
                raise ValueError("2D scenes take polygon obstacles only")
            self.polygons = [validate_polygon(p) for p in self.polygons]
        else:
            if self.polygons:
                raise ValueError("3D scenes take box obstacles only")
            self.boxes = [validate_box(mn, mx, 3) for mn, mx in self.boxes]
        if self.passage is not None:
            pmn, pmx = validate_box(self.passage[0], self.passage[1], self.dims)
            if np.any(pmn < self.lo - 1e-12) or np.any(pmx > self.hi + 1e-12):
                raise ValueError("passage region must lie within scene bounds")
            self.passage = (pmn, pmx)
        if self.projection is not None:
            a, b = self.projection
            if self.dims == 2:
                raise ValueError("projection applies to 3D scenes only")
            if not (0 <= a < 3 and 0 <= b < 3 and a != b):
                raise ValueError("projection must name two distinct axes")
            self.projection = (int(a), int(b))
        self._rebuild_cache()

    def _rebuild_cache(self):
        # flat float tuples keep the hot predicates free of numpy overhead
        self._lo = tuple(float(x) for x in self.lo)
        self._hi = tuple(float(x) for x in self.hi)
        self._poly_edges = []
        for poly in self.polygons:
            edges = []
            n = len(poly)
            for i in range(n):
                ex, ey = poly[(i + 1) % n] - poly[i]
                norm = math.hypot(ex, ey)
                nx, ny = ey / norm, -ex / norm  # outward normal of a CCW edge
                edges.append((nx, ny, nx * poly[i][0] + ny * poly[i][1]))
            self._poly_edges.append(edges)
        self._box_bounds = [
            (float(mn[0]), float(mn[1]), float(mn[2]), float(mx[0]), float(mx[1]), float(mx[2]))
            for mn, mx in self.boxes
        ]

    @property
    def diagonal(self) -> float:
        return float(np.linalg.norm(self.hi - self.lo))

    @property
    def obstacles(self):
        return self.polygons if self.dims == 2 else self.boxes

    def __eq__(self, other):
        if not isinstance(other, Scene):
            return NotImplemented
        if (
            self.name != other.name
            or self.dims != other.dims
            or not np.array_equal(self.lo, other.lo)
            or not np.array_equal(self.hi, other.hi)
            or self.projection != other.projection
        ):
            return False
        if len(self.polygons) != len(other.polygons) or len(self.boxes) != len(other.boxes):
            return False
        for a, b in zip(self.polygons, other.polygons):
            if not np.array_equal(a, b):
                return False
        for (amn, amx), (bmn, bmx) in zip(self.boxes, other.boxes):
            if not (np.array_equal(amn, bmn) and np.array_equal(amx, bmx)):
                return False
        if (self.passage is None) != (other.passage is None):
            return False
        if self.passage is not None:
            if not (
                np.array_equal(self.passage[0], other.passage[0])
                and np.array_equal(self.passage[1], other.passage[1])
            ):
                return False
        return True


def point_in_obstacle(scene: Scene, p) -> bool:
    """True iff p lies in/on any obstacle or outside the scene bounds."""
    if len(p) != scene.dims:
        raise ValueError("point dimension does not match scene")
    if scene.dims == 2:
        return _point_colliding_2d(scene, float(p[0]), float(p[1]))
    return _point_colliding_3d(scene, float(p[0]), float(p[1]), float(p[2]))


def _point_colliding_2d(scene, x, y):
    lo, hi = scene._lo, scene._hi
    if x < lo[0] or x > hi[0] or y < lo[1] or y > hi[1]:
        return True
    for edges in scene._poly_edges:
        inside = True
        for nx, ny, c in edges:
            if nx * x + ny * y > c + _EPS:
                inside = False
                break
        if inside:
            return True
    return False


def _point_colliding_3d(scene, x, y, z):
    lo, hi = scene._lo, scene._hi
    if x < lo[0] or x > hi[0] or y < lo[1] or y > hi[1] or z < lo[2] or z > hi[2]:
        return True
    for x0, y0, z0, x1, y1, z1 in scene._box_bounds:
        if x0 <= x <= x1 and y0 <= y <= y1 and z0 <= z <= z1:
            return True
    return False


def _segment_hits_polygon(ax, ay, bx, by, edges):
    # Cyrus-Beck clipping against the polygon half-planes; a non-empty
    # parameter interval (even a single graze point) counts as a hit.
    t0, t1 = 0.0, 1.0
    dx, dy = bx - ax, by - ay
    for nx, ny, c in edges:
        num = c - (nx * ax + ny * ay)
        den = nx * dx + ny * dy
        if abs(den) < 1e-15:
            if num < -_EPS:
                return False
            continue
        t = num / den
        if den > 0.0:
            if t < t1:
                t1 = t
        else:
            if t > t0:
                t0 = t
        if t0 > t1 + 1e-12:
            return False
    return True


def _segment_hits_box(a, b, box):
    x0, y0, z0, x1, y1, z1 = box
    t0, t1 = 0.0, 1.0
    for lo_a, hi_a, pa, pb in (
        (x0, x1, a[0], b[0]),
        (y0, y1, a[1], b[1]),
        (z0, z1, a[2], b[2]),
    ):
        d = pb - pa
        if abs(d) < 1e-15:
            if pa < lo_a - _EPS or pa > hi_a + _EPS:
                return False
            continue
        tn = (lo_a - pa) / d
        tf = (hi_a - pa) / d
        if tn > tf:
            tn, tf = tf, tn
        if tn > t0:
            t0 = tn
        if tf < t1:
            t1 = tf
        if t0 > t1 + 1e-12:
            return False
    return True


def segment_hits_scene(scene: Scene, a, b) -> bool:
    """True iff segment ab touches any obstacle or leaves the scene bounds."""
    if len(a) != scene.dims or len(b) != scene.dims:
        raise ValueError("segment dimension does not match scene")
    lo, hi = scene._lo, scene._hi
    for i in range(scene.dims):
        if a[i] < lo[i] or a[i] > hi[i] or b[i] < lo[i] or b[i] > hi[i]:
            return True
    if scene.dims == 2:
        ax, ay = float(a[0]), float(a[1])
        bx, by = float(b[0]), float(b[1])
        for edges in scene._poly_edges:
            if _segment_hits_polygon(ax, ay, bx, by, edges):
                return True
        return False
    for box in scene._box_bounds:
        if _segment_hits_box(a, b, box):
            return True
    return False


def rotation_zyx(yaw: float, pitch: float, roll: float) -> np.ndarray:
    """World-from-body rotation, applied as Rz(yaw) @ Ry(pitch) @ Rx(roll)."""
    cy, sy = math.cos(yaw), math.sin(yaw)
    cp, sp = math.cos(pitch), math.sin(pitch)
    cr, sr = math.cos(roll), math.sin(roll)
    return np.array(
        [
            [cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr],
            [sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr],
            [-sp, cp * sr, cp * cr],
        ]
    )

_CORNER_SIGNS = np.array(
    [[sx, sy, sz] for sx in (-1.0, 1.0) for sy in (-1.0, 1.0) for sz in (-1.0, 1.0)]
)


def _obb_hits_aabb(center, R, half, box):
    # Separating-axis test between an oriented box and an axis-aligned box;
    # touching projections are not separated, so boundary contact collides.
    x0, y0, z0, x1, y1, z1 = box
    ca = ((x0 + x1) * 0.5, (y0 + y1) * 0.5, (z0 + z1) * 0.5)
    ha = ((x1 - x0) * 0.5, (y1 - y0) * 0.5, (z1 - z0) * 0.5)
    T = np.array([center[0] - ca[0], center[1] - ca[1], center[2] - ca[2]])
    absR = np.abs(R) + 1e-12
    # world axes
    for i in range(3):
        if abs(T[i]) > ha[i] + absR[i] @ half:
            return False
    # body axes
    for j in range(3):
        if abs(R[:, j] @ T) > half[j] + absR[:, j] @ ha:
            return False
    # cross products of world axis i with body axis j
    for i in range(3):
        i1, i2 = (i + 1) % 3, (i + 2) % 3
        for j in range(3):
            j1, j2 = (j + 1) % 3, (j + 2) % 3
            ra = ha[i1] * absR[i2, j] + ha[i2] * absR[i1, j]
            rb = half[j1] * absR[i, j2] + half[j2] * absR[i, j1]
            t = abs(T[i2] * R[i1, j] - T[i1] * R[i2, j])
            if t > ra + rb:
                return False
    return True


def _rigid_body_colliding(scene, robot, q):
    R = rotation_zyx(float(q.angles[0]), float(q.angles[1]), float(q.angles[2]))
    lo, hi = scene.lo, scene.hi
    for center_b, half in zip(robot.box_centers, robot.box_half):
        center = q.trans + R @ center_b
        corners = center + (_CORNER_SIGNS * half) @ R.T
        if np.any(corners < lo) or np.any(corners > hi):
            return True
        for box in scene._box_bounds:
            if _obb_hits_aabb(center, R, half, box):
                return True
    return False


def is_colliding(scene: Scene, robot, q: Configuration, counter: CollisionCounter) -> bool:
    """Robot-vs-scene collision predicate; always counts exactly one call."""
    if isinstance(robot, PointRobot):
        if q.trans.size != scene.dims:
            raise ValueError("configuration dimension does not match scene")
        counter.increment()
        if scene.dims == 2:
            return _point_colliding_2d(scene, float(q.trans[0]), float(q.trans[1]))
        return _point_colliding_3d(scene, float(q.trans[0]), float(q.trans[1]), float(q.trans[2]))
    if isinstance(robot, PlanarLinkRobot):
        if scene.dims != 2:
            raise ValueError("planar link robot requires a 2D scene")
        segments = forward_kinematics(robot, q)  # validates dimensions
        counter.increment()
        if _point_colliding_2d(scene, float(q.trans[0]), float(q.trans[1])):
            return True
        for a, b in segments:
            if segment_hits_scene(scene, a, b):
                return True
        return False
    if isinstance(robot, RigidBodyRobot3D):
        if scene.dims != 3 or q.trans.size != 3 or q.angles.size != 3:
            raise ValueError("rigid 3D robot requires a 3D scene and (yaw, pitch, roll) angles")
        counter.increment()
        return _rigid_body_colliding(scene, robot, q)
    raise TypeError(f"unsupported robot type {type(robot).__name__}")


def reference_point(robot, q: Configuration) -> np.ndarray:
    """Point used for passage-quality scoring: trans, or body centroid in 3D."""
    if isinstance(robot, RigidBodyRobot3D):
        R = rotation_zyx(float(q.angles[0]), float(q.angles[1]), float(q.angles[2]))
        return q.trans + R @ robot.centroid
    return q.trans


def in_passage(scene: Scene, robot, q: Configuration) -> bool:
    """True iff the robot's reference point lies in the declared passage.

    Never touches the collision counter; this is a metrics-only predicate.
    """
    if scene.passage is None:
        raise ValueError(f"scene '{scene.name}' declares no passage region")
    ref = reference_point(robot, q)
    pmn, pmx = scene.passage
    return bool(np.all(ref >= pmn) and np.all(ref <= pmx))
