"""Heavy-tailed step generators for Levy-flight walks.

Step lengths follow a Pareto power law with density proportional to
x**(-alpha) on [x_min, inf), sampled by inverse transform:

    x = x_min * (1 - u) ** (-1 / (alpha - 1)),   u uniform in [0, 1)

For 1 < alpha < 3 the steps have infinite variance, which is what gives the
walk its occasional long jumps.  Angular offsets squash a heavy-tailed draw s
through 2*pi * (1 - exp(-s)), landing in (0, 2*pi) with mass piled toward
2*pi for the default exponent 1.1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class HeavyTailParams:
    """Tail exponents and scale for the walk generators.

    ``base_step_a`` is the additive base step; the full step length is
    base_step_a plus a Pareto draw of scale ``x_min``.
    """

    alpha: float = 1.9
    x_min: float = 1.0
    base_step_a: float = 0.0
    alpha_theta: float = 1.1

    def __post_init__(self):
        if self.alpha <= 1.0:
            raise ValueError("alpha must be > 1 for a normalizable power law")
        if self.alpha_theta <= 1.0:
            raise ValueError("alpha_theta must be > 1")
        if self.x_min <= 0.0:
            raise ValueError("x_min must be > 0")
        if self.base_step_a < 0.0:
            raise ValueError("base_step_a must be >= 0")


def sample_power_law(alpha: float, x_min: float, rng: np.random.Generator, size=None):
    """Draw from the Pareto density ~ x**(-alpha) on [x_min, inf).

    Returns a scalar for size=None, else an ndarray.
    """
    if alpha <= 1.0:
        raise ValueError("alpha must be > 1 for a normalizable power law")
    if x_min <= 0.0:
        raise ValueError("x_min must be > 0")
    u = rng.random(size)
    return x_min * (1.0 - u) ** (-1.0 / (alpha - 1.0))


def levy_step_length(params: HeavyTailParams, rng: np.random.Generator) -> float:
    """Base step plus a heavy-tailed increment; always >= base_step_a + x_min."""
    return params.base_step_a + float(sample_power_law(params.alpha, params.x_min, rng))


def levy_orientation_offset(params: HeavyTailParams, rng: np.random.Generator) -> float:
    """Heavy-tailed angular offset in (0, 2*pi), used additively and wrapped."""
    s = float(sample_power_law(params.alpha_theta, 1.0, rng))
    return TWO_PI * (1.0 - math.exp(-s))


def sample_unit_direction(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform direction on the unit sphere via Gaussian normalization."""
    if dim < 1:
        raise ValueError("direction dimension must be >= 1")
    while True:
        v = rng.standard_normal(dim)
        norm = float(np.sqrt(v @ v))
        if norm > 1e-12:
            return v / norm
