"""The six narrow-passage sampling strategies.

Walk-based samplers (lfs, lfbs, rwbs, rws) start from a uniformly drawn
colliding configuration and walk until they first step into free space.
Bridge variants (lfbs, rwbs, rbbs) additionally demand a colliding witness on
the far side of the candidate, certifying that it sits between obstacles.
The workspace walls terminate walks: a step whose translation leaves the
arena aborts the walk (no sample), which keeps walkers inside the bounded
workspace instead of letting them wander the unbounded colliding exterior.

Every accepted sample is collision-free at production time and is returned
together with its witness tuple: the colliding configurations that justified
acceptance (walk predecessor, bridge endpoints, or Gaussian partner).  Fixed
RNG seed and config reproduce a batch exactly, including the collision-call
count on the supplied counter.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .cspace import Configuration, SpaceSpec, interpolate, sample_uniform, step, wrapped_delta
from .geometry import CollisionCounter, Scene, is_colliding
from .heavytail import (
    HeavyTailParams,
    levy_orientation_offset,
    levy_step_length,
    sample_unit_direction,
)


@dataclass(frozen=True)
class SamplerConfig:
    """Shared sampler knobs.

    ``step_a`` is the base step size of the walks and the bridge length scale
    of rbbs/gaussian.  It overrides ``heavy.base_step_a`` inside the Levy
    samplers so one knob drives the whole step-size sweep.  ``max_attempts``
    bounds the outer loop in uniform draws (default 200 * k_target); hitting
    it yields a partial batch flagged incomplete rather than an error.
    """

    step_a: float
    heavy: HeavyTailParams = HeavyTailParams()
    max_walk_steps: int = 1000
    k_target: int = 30
    max_attempts: int | None = None
    resume_walk_on_bridge_failure: bool = False

    def __post_init__(self):
        if self.step_a <= 0.0:
            raise ValueError("step_a must be > 0")
        if self.max_walk_steps < 1:
            raise ValueError("max_walk_steps must be >= 1")
        if self.k_target < 1:
            raise ValueError("k_target must be >= 1")
        if self.max_attempts is not None and self.max_attempts < 1:
            raise ValueError("max_attempts must be >= 1")

    @property
    def attempt_budget(self) -> int:
        return self.max_attempts if self.max_attempts is not None else 200 * self.k_target


@dataclass
class SampleBatch:
    """Result of one sampler invocation.

    ``witnesses[i]`` holds the colliding configurations backing sample i;
    ``attempts`` counts outer-loop uniform draws; ``complete`` is False when
    the attempt budget ran out before k_target samples were found.
    """

    sampler: str
    samples: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    attempts: int = 0
    complete: bool = False


def extend(spec: SpaceSpec, q: Configuration, q2: Configuration) -> Configuration:
    """Reflect q through q2: translations mirror, angles double the shortest arc.

    q2 is the interpolation midpoint of (q, result) whenever the angular
    separation per axis stays within pi/2; beyond that the doubled arc leaves
    the shortest-path half-circle and the midpoint identity cannot hold.
    """
    spec.check(q)
    spec.check(q2)
    trans = 2.0 * q2.trans - q.trans
    if spec.angle_dims:
        angles = q2.angles + wrapped_delta(q.angles, q2.angles)
    else:
        angles = q.angles
    return Configuration(trans, angles)


def _levy_params(cfg: SamplerConfig) -> HeavyTailParams:
    return replace(cfg.heavy, base_step_a=cfg.step_a)


def _levy_step(
    spec: SpaceSpec,
    q: Configuration,
    heavy: HeavyTailParams,
    cap: float,
    rng: np.random.Generator,
) -> Configuration:
    # Draw order is fixed (direction, length, angular offset) so batches are
    # reproducible.  Lengths are capped at the scene diagonal: the tail shape
    # is preserved at benchmark scale but single steps stay bounded.
    direction = sample_unit_direction(spec.dim, rng)
    length = min(levy_step_length(heavy, rng), cap)
    nt = spec.trans_dims
    trans = q.trans + length * direction[:nt]
    if spec.angle_dims:
        offset = levy_orientation_offset(heavy, rng)
        angles = q.angles + offset * direction[nt:]
    else:
        angles = q.angles
    return Configuration(trans, angles)


def _uniform_step(
    spec: SpaceSpec, q: Configuration, length: float, rng: np.random.Generator
) -> Configuration:
    return step(spec, q, sample_unit_direction(spec.dim, rng), length)


def _out_of_bounds(scene: Scene, q: Configuration) -> bool:
    # Walks terminate at the workspace walls: a walker whose translation
    # leaves the arena would otherwise wander an unbounded colliding region.
    # This is plain bounds arithmetic, not a collision call.
    t = q.trans
    lo, hi = scene._lo, scene._hi
    for i in range(len(lo)):
        if t[i] < lo[i] or t[i] > hi[i]:
            return True
    return False


def lfs_sample(scene, robot, spec, cfg, rng, counter) -> SampleBatch:
    """Levy Flight Sampler: walk out of an obstacle, keep the first free stop."""
    heavy = _levy_params(cfg)
    cap = scene.diagonal
    batch = SampleBatch("lfs")
    while len(batch.samples) < cfg.k_target and batch.attempts < cfg.attempt_budget:
        batch.attempts += 1
        q = sample_uniform(spec, rng)
        if not is_colliding(scene, robot, q, counter):
            continue
        for _ in range(cfg.max_walk_steps):
            q_new = _levy_step(spec, q, heavy, cap, rng)
            if _out_of_bounds(scene, q_new):
                break
            if is_colliding(scene, robot, q_new, counter):
                q = q_new
                continue
            batch.samples.append(q_new)
            batch.witnesses.append((q,))
            break
    batch.complete = len(batch.samples) >= cfg.k_target
    return batch


def _bridge_walk_sample(scene, robot, spec, cfg, rng, counter, name, step_fn) -> SampleBatch:
    # Shared control flow of lfbs/rwbs.  The bridge anchor is the last
    # colliding configuration of the walk; on a failed bridge test the walk
    # restarts from a fresh uniform colliding draw unless
    # resume_walk_on_bridge_failure lets it keep wandering until it re-enters
    # an obstacle.
    batch = SampleBatch(name)
    while len(batch.samples) < cfg.k_target and batch.attempts < cfg.attempt_budget:
        batch.attempts += 1
        q = sample_uniform(spec, rng)
        if not is_colliding(scene, robot, q, counter):
            continue
        anchor = q
        in_obstacle = True
        for _ in range(cfg.max_walk_steps):
            q_new = step_fn(q, rng)
            if _out_of_bounds(scene, q_new):
                break
            if is_colliding(scene, robot, q_new, counter):
                q = q_new
                anchor = q_new
                in_obstacle = True
                continue
            if in_obstacle:
                mirrored = extend(spec, anchor, q_new)
                if is_colliding(scene, robot, mirrored, counter):
                    batch.samples.append(q_new)
                    batch.witnesses.append((anchor, mirrored))
                    break
                if not cfg.resume_walk_on_bridge_failure:
                    break
                in_obstacle = False
            q = q_new
    batch.complete = len(batch.samples) >= cfg.k_target
    return batch


def lfbs_sample(scene, robot, spec, cfg, rng, counter) -> SampleBatch:
    """Levy Flight Bridge Sampler: lfs walk plus a reflected bridge test."""
    heavy = _levy_params(cfg)
    cap = scene.diagonal

    def step_fn(q, rng):
        return _levy_step(spec, q, heavy, cap, rng)

    return _bridge_walk_sample(scene, robot, spec, cfg, rng, counter, "lfbs", step_fn)


def rwbs_sample(scene, robot, spec, cfg, rng, counter) -> SampleBatch:
    """Random Walk Bridge Sampler: lfbs control flow with fixed-length steps."""

    def step_fn(q, rng):
        return _uniform_step(spec, q, cfg.step_a, rng)

    return _bridge_walk_sample(scene, robot, spec, cfg, rng, counter, "rwbs", step_fn)


def rbbs_sample(scene, robot, spec, cfg, rng, counter) -> SampleBatch:
    """Randomized bridge builder: two colliding endpoints, free midpoint.

    The second endpoint sits a folded-normal length (scale step_a) away in a
    uniform random direction, matching the classic bridge test with step_a as
    the bridge length.
    """
    batch = SampleBatch("rbbs")
    while len(batch.samples) < cfg.k_target and batch.attempts < cfg.attempt_budget:
        batch.attempts += 1
        q1 = sample_uniform(spec, rng)
        if not is_colliding(scene, robot, q1, counter):
            continue
        length = abs(float(rng.normal(0.0, cfg.step_a)))
        q2 = _uniform_step(spec, q1, length, rng)
        if not is_colliding(scene, robot, q2, counter):
            continue
        mid = interpolate(spec, q1, q2, 0.5)
        if not is_colliding(scene, robot, mid, counter):
            batch.samples.append(mid)
            batch.witnesses.append((q1, q2))
    batch.complete = len(batch.samples) >= cfg.k_target
    return batch


def gaussian_sample(scene, robot, spec, cfg, rng, counter) -> SampleBatch:
    """Gaussian pair test: keep the free one of a pair straddling a boundary."""
    batch = SampleBatch("gauss")
    nt = spec.trans_dims
    while len(batch.samples) < cfg.k_target and batch.attempts < cfg.attempt_budget:
        batch.attempts += 1
        q1 = sample_uniform(spec, rng)
        trans2 = q1.trans + rng.normal(0.0, cfg.step_a, nt)
        angles2 = rng.uniform(0.0, 2.0 * np.pi, spec.angle_dims)
        q2 = Configuration(trans2, angles2)
        c1 = is_colliding(scene, robot, q1, counter)
        c2 = is_colliding(scene, robot, q2, counter)
        if c1 == c2:
            continue
        free, hit = (q2, q1) if c1 else (q1, q2)
        batch.samples.append(free)
        batch.witnesses.append((hit,))
    batch.complete = len(batch.samples) >= cfg.k_target
    return batch


def rws_sample(scene, robot, spec, cfg, rng, counter) -> SampleBatch:
    """Random walk to surface: fixed-step walk, accept the first free stop."""
    batch = SampleBatch("rws")
    while len(batch.samples) < cfg.k_target and batch.attempts < cfg.attempt_budget:
        batch.attempts += 1
        q = sample_uniform(spec, rng)
        if not is_colliding(scene, robot, q, counter):
            continue
        for _ in range(cfg.max_walk_steps):
            q_new = _uniform_step(spec, q, cfg.step_a, rng)
            if _out_of_bounds(scene, q_new):
                break
            if is_colliding(scene, robot, q_new, counter):
                q = q_new
                continue
            batch.samples.append(q_new)
            batch.witnesses.append((q,))
            break
    batch.complete = len(batch.samples) >= cfg.k_target
    return batch


SAMPLERS = {
    "lfs": lfs_sample,
    "lfbs": lfbs_sample,
    "rwbs": rwbs_sample,
    "rbbs": rbbs_sample,
    "gauss": gaussian_sample,
    "rws": rws_sample,
}

BRIDGE_SAMPLERS = ("lfbs", "rwbs", "rbbs")
