"""
Planar vector and angle helpers shared by every geometry module.

Angles are plain floats in radians; the canonical range is [0, 2π) and all
arc arithmetic is counterclockwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

TWO_PI = 2.0 * math.pi


class Vec2(NamedTuple):
    """A point or vector of the Euclidean plane."""

    x: float
    y: float

    def __add__(self, other):
        return Vec2(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Vec2(self.x - other[0], self.y - other[1])

    def __mul__(self, scale):
        return Vec2(self.x * scale, self.y * scale)

    __rmul__ = __mul__

    def __neg__(self):
        return Vec2(-self.x, -self.y)

    def dot(self, other) -> float:
        return self.x * other[0] + self.y * other[1]

    def cross(self, other) -> float:
        return self.x * other[1] - self.y * other[0]

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def angle(self) -> float:
        """Polar angle in [0, 2π)."""
        return normalize_angle(math.atan2(self.y, self.x))

    def perp(self) -> "Vec2":
        """Counterclockwise quarter turn."""
        return Vec2(-self.y, self.x)

    def distance(self, other) -> float:
        return math.hypot(self.x - other[0], self.y - other[1])

    def is_finite(self) -> bool:
        return math.isfinite(self.x) and math.isfinite(self.y)

    def to_list(self):
        return [self.x, self.y]

    @classmethod
    def of(cls, value) -> "Vec2":
        x, y = value
        return cls(float(x), float(y))


def unit(theta: float) -> Vec2:
    """u(θ) = (cos θ, sin θ)."""
    return Vec2(math.cos(theta), math.sin(theta))


def normalize_angle(theta: float) -> float:
    """Reduce an angle to [0, 2π)."""
    r = math.fmod(theta, TWO_PI)
    if r < 0.0:
        r += TWO_PI
    if r >= TWO_PI:
        r -= TWO_PI
    return r + 0.0  # drops -0.0


def ccw_delta(start: float, end: float) -> float:
    """Counterclockwise angle from start to end, in [0, 2π)."""
    return normalize_angle(end - start)


def angular_distance(a: float, b: float) -> float:
    """Unsigned angle between two directions, in [0, π]."""
    d = ccw_delta(a, b)
    return min(d, TWO_PI - d)


def wrapped_difference(a: float, b: float) -> float:
    """Signed difference a - b reduced to (-π, π]."""
    d = normalize_angle(a - b)
    return d - TWO_PI if d > math.pi else d


@dataclass(frozen=True)
class GaussArc:
    """A closed counterclockwise arc [start, start + measure] of the unit circle."""

    start: float
    measure: float

    @classmethod
    def between(cls, start: float, end: float) -> "GaussArc":
        return cls(normalize_angle(start), ccw_delta(start, end))

    @property
    def end(self) -> float:
        return normalize_angle(self.start + self.measure)

    @property
    def midpoint(self) -> float:
        return normalize_angle(self.start + 0.5 * self.measure)

    def contains(self, theta: float, tol: float = 0.0) -> bool:
        return ccw_delta(self.start, theta) <= self.measure + tol or ccw_delta(theta, self.start) <= tol

    def sample(self, count: int):
        """count interior angles, evenly spaced."""
        return [normalize_angle(self.start + self.measure * (k + 1) / (count + 1)) for k in range(count)]

    def to_dict(self):
        return {"start": self.start, "end": self.end, "measure": self.measure}
