"""
Chord theory for a single smooth strictly convex body.

Lines perpendicular to u(w) are parameterized by t ∈ [0, 1] along the segment
from the support point h_w (t = 0) to h_{-w} (t = 1). Each such line meets
the boundary on the two branches θ ∈ (w, w+π) and θ ∈ (w+π, w+2π), on each of
which the offset ⟨x(θ), u(w)⟩ is strictly monotone, so both endpoints are a
plain bracketed root solve. Chord length along t vanishes at both ends and is
strictly unimodal in between.
"""

import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from config import Config
from modules.body import SupportBody
from modules.errors import LengthOutOfRange
from utils.geometry import Vec2, normalize_angle, unit


@dataclass(frozen=True)
class Chord:
    """Segment body ∩ line, from p (branch (w, w+π)) to q (branch (w+π, w+2π)).

    q - p points along u(w - π/2).
    """

    p: Vec2
    q: Vec2
    w: float
    s: float
    t: float
    length: float

    @classmethod
    def between(cls, p: Vec2, q: Vec2, w: float, s: float, t: float) -> "Chord":
        return cls(p, q, w, s, t, p.distance(q))

    def to_dict(self):
        return {
            "p": self.p.to_list(),
            "q": self.q.to_list(),
            "w": self.w,
            "s": self.s,
            "t": self.t,
            "length": self.length,
        }


@dataclass(frozen=True)
class ChordProfile:
    """Longest chord of a body perpendicular to u(w), plus the data to walk all others.

    top and bottom are the support points h_w and h_{-w} at offsets s_top and
    s_bottom; the longest chord, of length eta, sits at parameter t_max.
    """

    body: SupportBody
    w: float
    top: Vec2
    bottom: Vec2
    s_top: float
    s_bottom: float
    t_max: float
    eta: float

    @property
    def direction(self) -> Vec2:
        """Unit direction of every chord, from p to q."""
        return unit(self.w - 0.5 * math.pi)

    def offset_at(self, t: float) -> float:
        return (1.0 - t) * self.s_top + t * self.s_bottom

    def point_at(self, t: float) -> Vec2:
        """Point of the h_w to h_{-w} segment at parameter t."""
        return self.top * (1.0 - t) + self.bottom * t

    def to_dict(self):
        return {
            "w": self.w,
            "h_w": self.top.to_list(),
            "h_minus_w": self.bottom.to_list(),
            "t_max": self.t_max,
            "eta": self.eta,
        }


def _chord_endpoints(body: SupportBody, w: float, s: float) -> Tuple[Vec2, Vec2]:
    """Endpoints of the chord on the line ⟨x, u(w)⟩ = s, strictly inside the width."""
    normal = unit(w)
    xtol = Config.SEARCH["ROOT_XTOL"]

    def offset(theta):
        return body.boundary_point(theta).dot(normal) - s

    # offset falls from s_top to s_bottom on the first branch and rises on the second
    theta_p = brentq(offset, w, w + math.pi, xtol=xtol)
    theta_q = brentq(offset, w + math.pi, w + 2.0 * math.pi, xtol=xtol)
    return body.boundary_point(theta_p), body.boundary_point(theta_q)


def _length_at(body: SupportBody, w: float, s_top: float, s_bottom: float, t: float) -> float:
    if t <= 0.0 or t >= 1.0:
        return 0.0
    p, q = _chord_endpoints(body, w, (1.0 - t) * s_top + t * s_bottom)
    return p.distance(q)


def chord_at(profile: ChordProfile, t: float) -> Chord:
    """The chord on the line through (1-t)h_w + t h_{-w} perpendicular to u(w)."""
    t = min(max(float(t), 0.0), 1.0)
    s = profile.offset_at(t)
    if t == 0.0:
        return Chord.between(profile.top, profile.top, profile.w, s, t)
    if t == 1.0:
        return Chord.between(profile.bottom, profile.bottom, profile.w, s, t)

    p, q = _chord_endpoints(profile.body, profile.w, s)
    return Chord.between(p, q, profile.w, s, t)


def max_chord(body: SupportBody, w: float) -> ChordProfile:
    """Locate the longest chord perpendicular to u(w).

    Bounded Brent on the negated length; the chord function is strictly
    unimodal on [0, 1] so the bracket never loses the maximum.
    """
    w = normalize_angle(w)
    s_top = body.support(w)
    s_bottom = -body.support(w + math.pi)

    result = minimize_scalar(
        lambda t: -_length_at(body, w, s_top, s_bottom, t),
        bounds=(0.0, 1.0),
        method="bounded",
        options={"xatol": Config.SEARCH["REFINE_XTOL"], "maxiter": 500},
    )
    t_max = float(result.x)
    eta = _length_at(body, w, s_top, s_bottom, t_max)

    return ChordProfile(
        body=body,
        w=w,
        top=body.boundary_point(w),
        bottom=body.boundary_point(w + math.pi),
        s_top=s_top,
        s_bottom=s_bottom,
        t_max=t_max,
        eta=eta,
    )


def chords_of_length(profile: ChordProfile, r: float) -> Tuple[Chord, Chord]:
    """The two chords of length r, one on each monotone branch, ordered by t."""
    if not 0.0 < r < profile.eta:
        raise LengthOutOfRange(f"Chord length {r!r} is outside (0, {profile.eta!r})")

    def excess(t):
        return _length_at(profile.body, profile.w, profile.s_top, profile.s_bottom, t) - r

    xtol = Config.SEARCH["ROOT_XTOL"]
    t_rising = brentq(excess, 0.0, profile.t_max, xtol=xtol)
    t_falling = brentq(excess, profile.t_max, 1.0, xtol=xtol)
    return chord_at(profile, t_rising), chord_at(profile, t_falling)


def chord_profile_samples(profile: ChordProfile, m: int) -> List[Tuple[float, float]]:
    """m uniformly spaced samples of t ↦ chord length."""
    if m < 2:
        raise ValueError(f"Need at least 2 samples, got {m}")

    return [(float(t), chord_at(profile, t).length) for t in np.linspace(0.0, 1.0, m)]
