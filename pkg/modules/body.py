"""
Smooth strictly convex planar bodies.

A body is stored as a truncated Fourier support function

    h(θ) = a0 + Σ_k a_k cos kθ + b_k sin kθ

plus a translation and a rotation. The boundary is parameterized by the
outward normal angle θ (counterclockwise Gauss parameterization):

    x(θ) = center + h(θ̃) u(θ) + h'(θ̃) u⊥(θ),   θ̃ = θ - rotation

so the radius of curvature is ρ = h + h''. A certified ρ > 0 is what makes a
body smooth and strictly convex, and the Gauss map a bijection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from functools import cached_property
from typing import Tuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from config import Config
from modules.errors import (
    GeometryError,
    InvalidInput,
    NotOnBoundary,
    NotStrictlyConvexOrNotSmooth,
    OriginNotInterior,
)
from utils.geometry import TWO_PI, Vec2, normalize_angle, unit, wrapped_difference


def angle_grid(count: int) -> np.ndarray:
    """count equally spaced angles covering [0, 2π)."""
    return np.linspace(0.0, TWO_PI, count, endpoint=False)


class Location(Enum):
    """Where a point lies relative to a closed convex set."""

    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    EXTERIOR = "Exterior"


@dataclass(frozen=True)
class Containment:
    """Classification of a point plus its signed support gap (positive outside)."""

    location: Location
    gap: float

    @property
    def inside(self) -> bool:
        """Interior or Boundary."""
        return self.location is not Location.EXTERIOR

    @classmethod
    def classify(cls, gap: float, tol: float) -> "Containment":
        if gap < -tol:
            return cls(Location.INTERIOR, gap)
        if gap > tol:
            return cls(Location.EXTERIOR, gap)
        return cls(Location.BOUNDARY, gap)


@dataclass(frozen=True)
class SupportFunction:
    """Truncated Fourier series h(θ); harmonics[k-1] holds (a_k, b_k)."""

    a0: float
    harmonics: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self):
        try:
            a0 = float(self.a0)
            harmonics = tuple((float(a), float(b)) for a, b in self.harmonics)
        except (TypeError, ValueError) as e:
            raise InvalidInput(f"Malformed support function coefficients: {e}") from e

        if not math.isfinite(a0) or not all(math.isfinite(c) for pair in harmonics for c in pair):
            raise InvalidInput("Support function coefficients must be finite")

        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "harmonics", harmonics)

    @classmethod
    def disk(cls, radius: float = 1.0) -> "SupportFunction":
        """Support function of a disk centred at the origin.

        Args:
            radius: Disk radius, the constant value of h
        """
        return cls(radius)

    @property
    def order(self) -> int:
        return len(self.harmonics)

    @cached_property
    def _coefficients(self):
        k = np.arange(1, self.order + 1, dtype=float)
        a = np.array([pair[0] for pair in self.harmonics], dtype=float)
        b = np.array([pair[1] for pair in self.harmonics], dtype=float)
        return k, a, b

    def evaluate(self, theta: float) -> Tuple[float, float, float]:
        """Exact values of h, h' and h'' at theta."""
        h = self.a0
        dh = 0.0
        d2h = 0.0
        c1, s1 = math.cos(theta), math.sin(theta)
        ck, sk = 1.0, 0.0
        for k, (a, b) in enumerate(self.harmonics, start=1):
            # cos kθ, sin kθ by the angle-addition recurrence
            ck, sk = ck * c1 - sk * s1, sk * c1 + ck * s1
            term = a * ck + b * sk
            h += term
            dh += k * (b * ck - a * sk)
            d2h -= k * k * term
        return h, dh, d2h

    def evaluate_many(self, thetas) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Vectorized evaluate over an array of angles."""
        thetas = np.asarray(thetas, dtype=float)
        if not self.harmonics:
            return np.full(thetas.shape, self.a0), np.zeros(thetas.shape), np.zeros(thetas.shape)

        k, a, b = self._coefficients
        kt = np.multiply.outer(thetas, k)
        cos_kt, sin_kt = np.cos(kt), np.sin(kt)
        term = cos_kt * a + sin_kt * b
        h = self.a0 + term.sum(axis=-1)
        dh = ((cos_kt * b - sin_kt * a) * k).sum(axis=-1)
        d2h = -(term * k ** 2).sum(axis=-1)
        return h, dh, d2h

    def radius_of_curvature(self, theta: float) -> float:
        h, _, d2h = self.evaluate(theta)
        return h + d2h

    @property
    def curvature_lipschitz(self) -> float:
        """Upper bound on |ρ'|: Σ k(1+k²)(|a_k|+|b_k|)."""
        return sum(k * (1 + k * k) * (abs(a) + abs(b)) for k, (a, b) in enumerate(self.harmonics, start=1))

    @property
    def support_lipschitz(self) -> float:
        """Upper bound on |h'|."""
        return sum(k * (abs(a) + abs(b)) for k, (a, b) in enumerate(self.harmonics, start=1))

    def certified_bounds(self, samples: int = None) -> Tuple[float, float]:
        """Certified lower bounds (ρ_min, h_min) from sampling plus Lipschitz slack."""
        samples = samples or Config.SEARCH["CURVATURE_SAMPLES"]
        h, _, d2h = self.evaluate_many(angle_grid(samples))
        slack = math.pi / samples
        rho_min = float((h + d2h).min()) - self.curvature_lipschitz * slack
        h_min = float(h.min()) - self.support_lipschitz * slack
        return rho_min, h_min

    def validate(self, samples: int = None) -> float:
        """Return the certified ρ_min, raising if the body is not admissible."""
        rho_min, h_min = self.certified_bounds(samples)
        if rho_min <= 0.0:
            raise NotStrictlyConvexOrNotSmooth(
                f"Certified radius of curvature {rho_min:.6g} is not positive"
            )
        if h_min <= 0.0:
            raise OriginNotInterior(f"Support function minimum {h_min:.6g} is not positive")
        return rho_min

    @cached_property
    def _widths(self) -> np.ndarray:
        samples = Config.SEARCH["CURVATURE_SAMPLES"]
        h, _, _ = self.evaluate_many(angle_grid(2 * (samples // 2)))
        return h + np.roll(h, -(len(h) // 2))

    @property
    def diameter(self) -> float:
        """Maximum width, which equals the diameter of a convex body."""
        return float(self._widths.max())

    @property
    def min_width(self) -> float:
        return float(self._widths.min())

    def scaled_harmonics(self, factor: float) -> "SupportFunction":
        return SupportFunction(self.a0, tuple((a * factor, b * factor) for a, b in self.harmonics))

    def to_dict(self):
        return {"a0": self.a0, "harmonics": [list(pair) for pair in self.harmonics]}

    @classmethod
    def from_dict(cls, data) -> "SupportFunction":
        try:
            return cls(data["a0"], tuple(tuple(pair) for pair in data.get("harmonics", [])))
        except (KeyError, TypeError, AttributeError) as e:
            raise InvalidInput(f"Malformed support function: {e}") from e


@dataclass(frozen=True)
class SupportBody:
    """A shape moved by a rotation about the origin followed by a translation."""

    shape: SupportFunction
    center: Vec2 = Vec2(0.0, 0.0)
    rotation: float = 0.0

    def __post_init__(self):
        center = Vec2.of(self.center)
        if not center.is_finite() or not math.isfinite(self.rotation):
            raise InvalidInput("Body center and rotation must be finite")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "rotation", normalize_angle(float(self.rotation)))

    def validate(self) -> float:
        return self.shape.validate()

    def is_translate_of(self, other: "SupportBody") -> bool:
        return self.shape == other.shape and self.rotation == other.rotation

    def translated(self, offset) -> "SupportBody":
        return replace(self, center=self.center + offset)

    def rotated(self, angle: float) -> "SupportBody":
        """Rotate the whole body about the origin."""
        c, s = math.cos(angle), math.sin(angle)
        x, y = self.center
        return replace(self, center=Vec2(c * x - s * y, s * x + c * y), rotation=self.rotation + angle)

    @property
    def diameter(self) -> float:
        return self.shape.diameter

    @property
    def boundary_tol(self) -> float:
        """Absolute width of the Boundary band."""
        return Config.TOLERANCES["BOUNDARY"] * self.diameter

    @property
    def interior_point(self) -> Vec2:
        """Steiner point: determined by the first harmonic, always interior."""
        a1, b1 = self.shape.harmonics[0] if self.shape.harmonics else (0.0, 0.0)
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        return self.center + Vec2(c * a1 - s * b1, s * a1 + c * b1)

    def support(self, theta: float) -> float:
        """Support function of the moved body."""
        h, _, _ = self.shape.evaluate(theta - self.rotation)
        return h + self.center.x * math.cos(theta) + self.center.y * math.sin(theta)

    def boundary_point(self, theta: float) -> Vec2:
        """Inverse Gauss map: the boundary point with outward normal u(θ)."""
        h, dh, _ = self.shape.evaluate(theta - self.rotation)
        c, s = math.cos(theta), math.sin(theta)
        return Vec2(self.center.x + h * c - dh * s, self.center.y + h * s + dh * c)

    def boundary_points(self, thetas) -> np.ndarray:
        """Vectorized boundary_point, shape (m, 2)."""
        thetas = np.asarray(thetas, dtype=float)
        h, dh, _ = self.shape.evaluate_many(thetas - self.rotation)
        c, s = np.cos(thetas), np.sin(thetas)
        return np.column_stack((self.center.x + h * c - dh * s, self.center.y + h * s + dh * c))

    def sample_boundary(self, count: int) -> np.ndarray:
        return self.boundary_points(angle_grid(count))

    def radius_of_curvature(self, theta: float) -> float:
        return self.shape.radius_of_curvature(theta - self.rotation)

    def support_line(self, theta: float) -> Tuple[Vec2, Vec2]:
        """Support line with outward normal u(θ): (point of contact, tangent direction)."""
        return self.boundary_point(theta), unit(theta).perp()

    @cached_property
    def _scan(self):
        grid = angle_grid(Config.SEARCH["COARSE_SCAN"])
        h, _, _ = self.shape.evaluate_many(grid - self.rotation)
        return grid, np.cos(grid), np.sin(grid), h

    @cached_property
    def _boundary_scan(self):
        grid = angle_grid(Config.SEARCH["COARSE_SCAN"])
        return grid, self.boundary_points(grid)

    def _support_gap(self, q: Vec2, psi: float) -> float:
        h, _, _ = self.shape.evaluate(psi - self.rotation)
        return q.x * math.cos(psi) + q.y * math.sin(psi) - h

    def _gap_slope(self, q: Vec2, psi: float) -> float:
        _, dh, _ = self.shape.evaluate(psi - self.rotation)
        return -q.x * math.sin(psi) + q.y * math.cos(psi) - dh

    def _max_support_gap(self, p) -> Tuple[float, float]:
        """Maximize ⟨p - center, u(ψ)⟩ - h(ψ - rotation) over ψ.

        Coarse scan, then the bracket around the best sample is refined by a
        root solve on the derivative (falling back to bounded Brent when the
        derivative does not change sign across the bracket).
        """
        q = Vec2.of(p) - self.center
        grid, cos_g, sin_g, h = self._scan
        values = q.x * cos_g + q.y * sin_g - h
        k = int(np.argmax(values))
        step = grid[1]
        lo, hi = grid[k] - step, grid[k] + step

        if self._gap_slope(q, lo) > 0.0 > self._gap_slope(q, hi):
            psi = brentq(lambda x: self._gap_slope(q, x), lo, hi, xtol=Config.SEARCH["ROOT_XTOL"])
        else:
            result = minimize_scalar(
                lambda x: -self._support_gap(q, x),
                bounds=(lo, hi),
                method="bounded",
                options={"xatol": Config.SEARCH["REFINE_XTOL"]},
            )
            psi = float(result.x)

        gap = self._support_gap(q, psi)
        if values[k] > gap:
            psi, gap = float(grid[k]), float(values[k])
        return normalize_angle(psi), gap

    def contains(self, p, tol: float = None) -> Containment:
        """Half-plane membership: classify p by its largest support gap."""
        _, gap = self._max_support_gap(p)
        return Containment.classify(gap, self.boundary_tol if tol is None else tol)

    def support_parameter(self, p) -> float:
        """Normal angle of the support line nearest to p (no boundary check)."""
        psi, _ = self._max_support_gap(p)
        return psi

    def gauss_map(self, p, tol: float = None) -> float:
        """Outward normal angle at a boundary point p."""
        psi, gap = self._max_support_gap(p)
        tol = self.boundary_tol if tol is None else tol
        if abs(gap) > tol:
            raise NotOnBoundary(f"Point {tuple(p)} is {gap:.3g} away from the boundary (tolerance {tol:.3g})")
        return psi

    def radial_boundary(self, origin, alpha: float) -> Vec2:
        """Boundary point on the ray from an interior origin in direction alpha.

        The polar angle of x(θ) - origin is a strictly increasing circle map,
        so the bracket is found on the coarse grid and then solved exactly.
        """
        origin = Vec2.of(origin)
        grid, points = self._boundary_scan
        polar = np.arctan2(points[:, 1] - origin.y, points[:, 0] - origin.x)
        offsets = np.mod(polar - alpha + math.pi, TWO_PI) - math.pi
        after = np.roll(offsets, -1)
        brackets = np.flatnonzero((offsets <= 0.0) & (after > 0.0))
        if len(brackets) == 0:
            raise GeometryError(f"Ray origin {tuple(origin)} is not interior to the body")

        k = int(brackets[0])
        if offsets[k] == 0.0:
            return Vec2(float(points[k, 0]), float(points[k, 1]))

        def offset(theta):
            d = self.boundary_point(theta) - origin
            return wrapped_difference(math.atan2(d.y, d.x), alpha)

        theta = brentq(offset, grid[k], grid[k] + grid[1], xtol=Config.SEARCH["ROOT_XTOL"])
        return self.boundary_point(theta)

    def to_dict(self):
        data = self.shape.to_dict()
        data.update({"center": self.center.to_list(), "rotation": self.rotation})
        return data

    @classmethod
    def from_dict(cls, data) -> "SupportBody":
        shape = SupportFunction.from_dict(data)
        try:
            return cls(shape, Vec2.of(data.get("center", (0.0, 0.0))), float(data.get("rotation", 0.0)))
        except (TypeError, ValueError) as e:
            raise InvalidInput(f"Malformed body: {e}") from e
