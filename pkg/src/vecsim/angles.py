"""Directional intervals and angle normalization helpers.

All directions in the system live on the circle, but every image is
required to come with a directional interval of diameter below pi, so
angle arithmetic (differences, means) can be done on plain floats once
values are mapped to their interval representative.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class DirectionalInterval:
    """Closed angle interval [theta_min, theta_max], diameter in (0, pi).

    An angle belongs to the interval when one of its 2*pi translates
    falls inside the closed bounds.
    """

    theta_min: float
    theta_max: float

    def __post_init__(self):
        if not (math.isfinite(self.theta_min) and math.isfinite(self.theta_max)):
            raise ValidationError("di bounds must be finite")
        diam = self.theta_max - self.theta_min
        if not 0.0 < diam < math.pi:
            raise ValidationError(
                f"di diameter must be in (0, pi), got {diam!r} "
                f"from [{self.theta_min!r}, {self.theta_max!r}]"
            )

    @property
    def diameter(self) -> float:
        return self.theta_max - self.theta_min

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.theta_min + self.theta_max)

    def contains(self, theta: float, tol: float = 0.0) -> bool:
        x = (theta - self.theta_min) % TWO_PI
        if x >= TWO_PI:
            # float % can round up to the divisor when theta sits an ulp
            # below a 2*pi translate of theta_min; that point is theta_min
            x = 0.0
        return x <= self.diameter + tol or x >= TWO_PI - tol

    def representative(self, theta: float) -> float:
        """2*pi translate of theta in [theta_min, theta_min + 2*pi].

        For angles inside the interval the result lies in
        [theta_min, theta_max]; float overshoot at the bounds is clamped.
        """
        x = (theta - self.theta_min) % TWO_PI
        if x >= TWO_PI:
            x = 0.0
        if x <= self.diameter:
            return min(max(self.theta_min + x, self.theta_min), self.theta_max)
        return self.theta_min + x


def wrap_principal(theta: float) -> float:
    """Wrap an angle to [-pi, pi]."""
    if -math.pi <= theta <= math.pi:
        return theta
    x = (theta + math.pi) % TWO_PI - math.pi
    return min(max(x, -math.pi), math.pi)


def representative_array(values: np.ndarray, di: DirectionalInterval) -> np.ndarray:
    """Vectorized DirectionalInterval.representative; NaN passes through.

    Values inside the interval land in [theta_min, theta_max]; everything
    else lands in the rest of [theta_min, theta_min + 2*pi).
    """
    x = np.mod(values - di.theta_min, TWO_PI)
    x = np.where(x >= TWO_PI, 0.0, x)
    rep = di.theta_min + x
    inside = x <= di.diameter
    return np.where(inside, np.clip(rep, di.theta_min, di.theta_max), rep)


def principal_array(values: np.ndarray) -> np.ndarray:
    """Vectorized wrap to [-pi, pi]; NaN passes through."""
    out = np.mod(values + math.pi, TWO_PI) - math.pi
    out = np.clip(out, -math.pi, math.pi)
    return np.where(np.abs(values) <= math.pi, values, out)
