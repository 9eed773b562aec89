"""Configuration spaces for the benchmark robots.

A configuration couples a translation block (workspace units) with a block of
angles.  Angles are stored wrapped into [0, 2*pi) at construction time, and
planar link robots use absolute link angles measured from the world x axis,
so forward kinematics is a running sum of unit headings rather than a joint
chain.  Everything here is an immutable value; operations are pure functions
over caller-owned RNG state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi


def wrap_angle(angle):
    """Wrap an angle (or array of angles) into [0, 2*pi)."""
    return np.mod(angle, TWO_PI)


def wrapped_delta(a_from, a_to):
    """Shortest signed arc from ``a_from`` to ``a_to``, in [-pi, pi)."""
    return np.mod(np.asarray(a_to, dtype=float) - a_from + math.pi, TWO_PI) - math.pi


@dataclass(frozen=True, eq=False)
class Configuration:
    """A point in configuration space.

    ``trans`` holds the translation coordinates, ``angles`` the angular ones.
    Angles are wrapped into [0, 2*pi) eagerly so wrap invariants hold for any
    arithmetic done downstream.
    """

    trans: np.ndarray
    angles: np.ndarray

    def __post_init__(self):
        # hot path: samplers build configurations from float64 vectors
        trans = self.trans
        if not (type(trans) is np.ndarray and trans.ndim == 1 and trans.dtype == np.float64):
            trans = np.atleast_1d(np.asarray(trans, dtype=float))
        angles = self.angles
        if not (type(angles) is np.ndarray and angles.ndim == 1 and angles.dtype == np.float64):
            angles = np.atleast_1d(np.asarray(angles, dtype=float))
        if angles.size:
            angles = wrap_angle(angles)
        object.__setattr__(self, "trans", trans)
        object.__setattr__(self, "angles", angles)

    @property
    def dim(self) -> int:
        return self.trans.size + self.angles.size

    def as_array(self) -> np.ndarray:
        """Concatenated (trans, angles) vector."""
        return np.concatenate([self.trans, self.angles])

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return np.array_equal(self.trans, other.trans) and np.array_equal(
            self.angles, other.angles
        )

    def __repr__(self):
        return f"Configuration(trans={self.trans.tolist()}, angles={self.angles.tolist()})"


def config(trans, angles=()) -> Configuration:
    """Shorthand constructor used throughout the tests and CLI."""
    return Configuration(np.asarray(trans, dtype=float), np.asarray(angles, dtype=float))


@dataclass(frozen=True, eq=False)
class SpaceSpec:
    """Shape of a configuration space: translation bounds plus angle count.

    ``angle_weight`` converts radians into workspace units inside the metric
    (default 1.0 unit/radian for every benchmark robot).
    """

    trans_bounds: np.ndarray  # shape (trans_dims, 2), rows [lo, hi]
    angle_dims: int = 0
    angle_weight: float = 1.0

    def __post_init__(self):
        bounds = np.asarray(self.trans_bounds, dtype=float).reshape(-1, 2)
        if np.any(bounds[:, 0] >= bounds[:, 1]):
            raise ValueError("translation bounds require lo < hi on every axis")
        if self.angle_dims < 0:
            raise ValueError("angle_dims must be >= 0")
        if self.angle_dims > 0 and self.angle_weight <= 0.0:
            raise ValueError("angle_weight must be > 0 when the space has angles")
        object.__setattr__(self, "trans_bounds", bounds)
        object.__setattr__(self, "_lo", bounds[:, 0].copy())
        object.__setattr__(self, "_span", (bounds[:, 1] - bounds[:, 0]).copy())

    @property
    def trans_dims(self) -> int:
        return self.trans_bounds.shape[0]

    @property
    def dim(self) -> int:
        return self.trans_dims + self.angle_dims

    def check(self, q: Configuration) -> None:
        if q.trans.size != self.trans_dims or q.angles.size != self.angle_dims:
            raise ValueError(
                f"configuration has shape ({q.trans.size}+{q.angles.size}), "
                f"space expects ({self.trans_dims}+{self.angle_dims})"
            )

    def __eq__(self, other):
        if not isinstance(other, SpaceSpec):
            return NotImplemented
        return (
            np.array_equal(self.trans_bounds, other.trans_bounds)
            and self.angle_dims == other.angle_dims
            and self.angle_weight == other.angle_weight
        )


@dataclass(frozen=True)
class PointRobot:
    """A robot with no geometry beyond its translation point."""


@dataclass(frozen=True, eq=False)
class PlanarLinkRobot:
    """Planar chain of links anchored at ``trans``, one absolute angle each."""

    link_lengths: np.ndarray

    def __post_init__(self):
        lengths = np.atleast_1d(np.asarray(self.link_lengths, dtype=float))
        if lengths.size == 0 or np.any(lengths <= 0.0):
            raise ValueError("link lengths must be positive and non-empty")
        object.__setattr__(self, "link_lengths", lengths)

    @property
    def n_links(self) -> int:
        return self.link_lengths.size

    def __eq__(self, other):
        if not isinstance(other, PlanarLinkRobot):
            return NotImplemented
        return np.array_equal(self.link_lengths, other.link_lengths)


@dataclass(frozen=True, eq=False)
class RigidBodyRobot3D:
    """Rigid 3D body, a union of body-frame boxes; angles are (yaw, pitch, roll)."""

    shape: tuple  # tuple of (min_corner, max_corner) arrays in the body frame

    # derived, filled in __post_init__
    box_centers: np.ndarray = field(init=False, repr=False)
    box_half: np.ndarray = field(init=False, repr=False)
    centroid: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if not self.shape:
            raise ValueError("rigid body needs at least one box")
        mins, maxs = [], []
        for mn, mx in self.shape:
            mn = np.asarray(mn, dtype=float)
            mx = np.asarray(mx, dtype=float)
            if mn.shape != (3,) or mx.shape != (3,):
                raise ValueError("body boxes must be 3D (min, max) corner pairs")
            if np.any(mx <= mn):
                raise ValueError("body boxes must have positive extents")
            mins.append(mn)
            maxs.append(mx)
        mins = np.array(mins)
        maxs = np.array(maxs)
        centers = 0.5 * (mins + maxs)
        half = 0.5 * (maxs - mins)
        volumes = np.prod(maxs - mins, axis=1)
        centroid = (centers * volumes[:, None]).sum(axis=0) / volumes.sum()
        object.__setattr__(self, "shape", tuple((mn.copy(), mx.copy()) for mn, mx in zip(mins, maxs)))
        object.__setattr__(self, "box_centers", centers)
        object.__setattr__(self, "box_half", half)
        object.__setattr__(self, "centroid", centroid)

    def __eq__(self, other):
        if not isinstance(other, RigidBodyRobot3D):
            return NotImplemented
        if len(self.shape) != len(other.shape):
            return False
        return all(
            np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
            for a, b in zip(self.shape, other.shape)
        )


def lshape_robot() -> RigidBodyRobot3D:
    """The benchmark L-shaped rigid body: a 3x1x1 arm and a 1x2x1 arm."""
    return RigidBodyRobot3D(
        shape=(
            (np.array([-0.5, -0.5, -0.5]), np.array([2.5, 0.5, 0.5])),
            (np.array([-0.5, 0.5, -0.5]), np.array([0.5, 2.5, 0.5])),
        )
    )


def planar_link_robot(n_links: int, link_length: float = 4.0) -> PlanarLinkRobot:
    """Equal-length planar chain (benchmark default: 4-unit links)."""
    if n_links < 1:
        raise ValueError("n_links must be >= 1")
    return PlanarLinkRobot(np.full(n_links, float(link_length)))


def forward_kinematics(robot: PlanarLinkRobot, q: Configuration):
    """Workspace segments of a planar chain at configuration ``q``.

    Link i heads along the absolute angle q.angles[i]; segment i starts where
    segment i-1 ends, with segment 0 anchored at q.trans.
    """
    if q.angles.size != robot.n_links or q.trans.size != 2:
        raise ValueError("configuration does not match planar link robot")
    segments = []
    x, y = float(q.trans[0]), float(q.trans[1])
    for length, angle in zip(robot.link_lengths, q.angles):
        nx = x + length * math.cos(angle)
        ny = y + length * math.sin(angle)
        segments.append(((x, y), (nx, ny)))
        x, y = nx, ny
    return segments


def distance(spec: SpaceSpec, q1: Configuration, q2: Configuration) -> float:
    """Weighted Euclidean metric with shortest-arc angle differences."""
    spec.check(q1)
    spec.check(q2)
    dt = q1.trans - q2.trans
    total = float(dt @ dt)
    if spec.angle_dims:
        da = np.abs(q1.angles - q2.angles)
        da = np.minimum(da, TWO_PI - da) * spec.angle_weight
        total += float(da @ da)
    return math.sqrt(total)


def interpolate(spec: SpaceSpec, q1: Configuration, q2: Configuration, t: float) -> Configuration:
    """Straight-line interpolation; angles follow the shortest arc."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"interpolation parameter t={t} outside [0, 1]")
    spec.check(q1)
    spec.check(q2)
    trans = q1.trans + t * (q2.trans - q1.trans)
    if spec.angle_dims:
        angles = q1.angles + t * wrapped_delta(q1.angles, q2.angles)
    else:
        angles = q1.angles
    return Configuration(trans, angles)


def sample_uniform(spec: SpaceSpec, rng: np.random.Generator) -> Configuration:
    """Uniform sample: translations within bounds, angles over [0, 2*pi)."""
    trans = spec._lo + rng.random(spec.trans_dims) * spec._span
    angles = TWO_PI * rng.random(spec.angle_dims)
    return Configuration(trans, angles)


def step(spec: SpaceSpec, q: Configuration, direction: np.ndarray, length: float) -> Configuration:
    """Advance ``q`` by ``length`` along a unit direction in the full space.

    Angular components move by length * component / angle_weight and wrap.
    Translations are not clamped; out-of-bounds configurations are classified
    as colliding by the geometry module.
    """
    spec.check(q)
    direction = np.asarray(direction, dtype=float)
    if direction.size != spec.dim:
        raise ValueError("direction dimension does not match space")
    norm = float(np.sqrt(direction @ direction))
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"direction must be a unit vector (|d| = {norm})")
    if length < 0.0:
        raise ValueError("step length must be >= 0")
    nt = spec.trans_dims
    trans = q.trans + length * direction[:nt]
    if spec.angle_dims:
        angles = q.angles + length * direction[nt:] / spec.angle_weight
    else:
        angles = q.angles
    return Configuration(trans, angles)
