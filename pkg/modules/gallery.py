"""
Counterexample gallery.

Each scenario is a small configuration that breaks exactly one hypothesis of
the singularity count (translates, strict convexity, smoothness, non-empty
interior, non-redundancy) or none at all, together with the count it is
known to produce. Bodies that must be non-smooth or non-strictly convex are
ArcBody outlines built from circular arcs and segments, so every boundary
crossing has a closed form.
"""

import hashlib
import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import brentq

from config import Config
from modules.body import Containment, Location, SupportBody, SupportFunction, angle_grid
from modules.errors import EmptyIntersection, GeometryError, InvalidInput, UnknownScenario
from modules.intersection import Arrangement, ShapeStatus, intersect
from modules.oracle import oracle_intersection, oracle_singularities
from utils.cache import Cache
from utils.geometry import TWO_PI, Vec2, angular_distance, ccw_delta, normalize_angle, unit, wrapped_difference
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class Arc:
    """Counterclockwise circular arc from angle start to angle end (end > start)."""

    center: Vec2
    radius: float
    start: float
    end: float

    def __post_init__(self):
        object.__setattr__(self, "center", Vec2.of(self.center))
        if self.radius <= 0.0:
            raise InvalidInput(f"Arc radius must be positive, got {self.radius}")
        if not 0.0 < self.end - self.start <= TWO_PI + 1e-12:
            raise InvalidInput(f"Arc span {self.end - self.start} is outside (0, 2π]")

    @property
    def span(self) -> float:
        return self.end - self.start

    @property
    def is_full_circle(self) -> bool:
        return self.span >= TWO_PI - 1e-12

    def point_at(self, angle: float) -> Vec2:
        return self.center + unit(angle) * self.radius

    @property
    def start_point(self) -> Vec2:
        return self.point_at(self.start)

    @property
    def end_point(self) -> Vec2:
        return self.point_at(self.end)

    @property
    def start_normal(self) -> float:
        return normalize_angle(self.start)

    @property
    def end_normal(self) -> float:
        return normalize_angle(self.end)

    @property
    def length(self) -> float:
        return self.radius * self.span

    def covers(self, angle: float, tol: float = 0.0) -> bool:
        if self.is_full_circle:
            return True
        return ccw_delta(self.start, angle) <= self.span + tol or ccw_delta(angle, self.start) <= tol

    def distance_to(self, p: Vec2) -> float:
        offset = p - self.center
        if self.covers(offset.angle()):
            return abs(offset.norm() - self.radius)
        return min(p.distance(self.start_point), p.distance(self.end_point))

    def normal_at(self, p: Vec2) -> float:
        return (p - self.center).angle()

    def sample(self, count: int) -> np.ndarray:
        angles = self.start + self.span * np.arange(count) / count
        return np.column_stack((self.center.x + self.radius * np.cos(angles), self.center.y + self.radius * np.sin(angles)))

    def translated(self, offset) -> "Arc":
        return replace(self, center=self.center + offset)

    def to_dict(self):
        return {"arc": {"center": self.center.to_list(), "radius": self.radius, "start": self.start, "end": self.end}}


@dataclass(frozen=True)
class Segment:
    """Directed segment; the outward side is on the right."""

    a: Vec2
    b: Vec2

    def __post_init__(self):
        object.__setattr__(self, "a", Vec2.of(self.a))
        object.__setattr__(self, "b", Vec2.of(self.b))
        if self.a.distance(self.b) == 0.0:
            raise InvalidInput("Segment endpoints coincide")

    @property
    def start_point(self) -> Vec2:
        return self.a

    @property
    def end_point(self) -> Vec2:
        return self.b

    @property
    def normal(self) -> float:
        d = self.b - self.a
        return Vec2(d.y, -d.x).angle()

    start_normal = normal
    end_normal = normal

    @property
    def length(self) -> float:
        return self.a.distance(self.b)

    def distance_to(self, p: Vec2) -> float:
        d = self.b - self.a
        t = min(max((p - self.a).dot(d) / d.dot(d), 0.0), 1.0)
        return p.distance(self.a + d * t)

    def normal_at(self, p: Vec2) -> float:
        return self.normal

    def sample(self, count: int) -> np.ndarray:
        t = np.arange(count)[:, None] / count
        return np.array(self.a)[None, :] * (1.0 - t) + np.array(self.b)[None, :] * t

    def translated(self, offset) -> "Segment":
        return Segment(self.a + offset, self.b + offset)

    def to_dict(self):
        return {"segment": {"a": self.a.to_list(), "b": self.b.to_list()}}


Piece = Union[Arc, Segment]

JOIN_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ArcBody:
    """Convex body bounded by a closed counterclockwise chain of arcs and segments."""

    pieces: Tuple[Piece, ...]

    def __post_init__(self):
        pieces = tuple(self.pieces)
        if not pieces:
            raise InvalidInput("An arc body needs at least one piece")
        object.__setattr__(self, "pieces", pieces)

        scale = max(1.0, max(max(abs(c) for c in p.start_point) for p in pieces))
        turning = 0.0
        for piece, following in zip(pieces, pieces[1:] + pieces[:1]):
            if piece.end_point.distance(following.start_point) > JOIN_TOLERANCE * scale:
                raise InvalidInput(f"Pieces do not chain at {tuple(piece.end_point)}")
            jump = wrapped_difference(following.start_normal, piece.end_normal)
            if jump < -1e-9:
                raise InvalidInput(f"Outline turns clockwise at {tuple(piece.end_point)}")
            turning += max(jump, 0.0) + (piece.span if isinstance(piece, Arc) else 0.0)

        if abs(turning - TWO_PI) > 1e-9:
            raise InvalidInput(f"Outline turns by {turning:.12f} instead of 2π")

    @classmethod
    def circle(cls, center, radius: float = 1.0) -> "ArcBody":
        return cls((Arc(center, radius, 0.0, TWO_PI),))

    @classmethod
    def rounded_square(cls, side: float, corner_radius: float, center=(0.0, 0.0)) -> "ArcBody":
        """Axis-aligned square with quarter-circle corners.

        Args:
            side: Side length of the square before rounding
            corner_radius: Radius of the four corner arcs, at most side / 2
            center: Center of the square
        """
        h = 0.5 * side
        k = h - corner_radius
        r = corner_radius
        half_pi = 0.5 * math.pi
        pieces = (
            Segment((-k, -h), (k, -h)),
            Arc((k, -k), r, -half_pi, 0.0),
            Segment((h, -k), (h, k)),
            Arc((k, k), r, 0.0, half_pi),
            Segment((k, h), (-k, h)),
            Arc((-k, k), r, half_pi, math.pi),
            Segment((-h, k), (-h, -k)),
            Arc((-k, -k), r, math.pi, 3.0 * half_pi),
        )
        return cls(tuple(p.translated(Vec2.of(center)) for p in pieces))

    @classmethod
    def bulged_polygon(cls, vertices: Sequence, sagitta_ratio: float = 0.05) -> "ArcBody":
        """Convex polygon whose edges bow outward into circular arcs.

        Each edge of length c becomes an arc of sagitta s = sagitta_ratio * c,
        radius R = (c²/4 + s²) / 2s.
        """
        corners = [Vec2.of(v) for v in vertices]
        pieces = []
        for a, b in zip(corners, corners[1:] + corners[:1]):
            chord = a.distance(b)
            sagitta = sagitta_ratio * chord
            radius = (0.25 * chord * chord + sagitta * sagitta) / (2.0 * sagitta)
            d = b - a
            normal = Vec2(d.y, -d.x).angle()
            center = (a + b) * 0.5 - unit(normal) * (radius - sagitta)
            half = math.asin(0.5 * chord / radius)
            pieces.append(Arc(center, radius, normal - half, normal + half))
        return cls(tuple(pieces))

    def translated(self, offset) -> "ArcBody":
        return ArcBody(tuple(p.translated(Vec2.of(offset)) for p in self.pieces))

    @property
    def perimeter(self) -> float:
        return sum(p.length for p in self.pieces)

    @cached_property
    def interior_point(self) -> Vec2:
        if len(self.pieces) == 1 and isinstance(self.pieces[0], Arc):
            return self.pieces[0].center
        points = np.vstack([p.sample(2) for p in self.pieces])
        return Vec2(float(points[:, 0].mean()), float(points[:, 1].mean()))

    def corners(self, tol: float = None) -> List[Tuple[Vec2, float]]:
        """Junctions whose normal jumps by more than tol, with the jump."""
        tol = Config.TOLERANCES["CORNER"] if tol is None else tol
        found = []
        for piece, following in zip(self.pieces, self.pieces[1:] + self.pieces[:1]):
            jump = wrapped_difference(following.start_normal, piece.end_normal)
            if jump > tol:
                found.append((following.start_point, jump))
        return found

    def _ray_exit(self, origin: Vec2, direction: Vec2) -> float:
        """Distance from an interior origin to the boundary along direction."""
        best = 0.0
        for piece in self.pieces:
            if isinstance(piece, Segment):
                edge = piece.b - piece.a
                denominator = direction.cross(edge)
                if abs(denominator) < 1e-15:
                    continue
                w = piece.a - origin
                t = w.cross(edge) / denominator
                s = w.cross(direction) / denominator
                if -1e-12 <= s <= 1.0 + 1e-12 and t > best:
                    best = t
            else:
                f = origin - piece.center
                b = direction.dot(f)
                discriminant = b * b - (f.dot(f) - piece.radius ** 2)
                if discriminant < 0.0:
                    continue
                root = math.sqrt(discriminant)
                for t in (-b + root, -b - root):
                    if t > best and piece.covers((origin + direction * t - piece.center).angle(), 1e-12):
                        best = t
        return best

    def contains(self, p, tol: float = None) -> Containment:
        """Radial classification about the interior point; gap is the radial excess."""
        tol = Config.TOLERANCES["ARC_POINT"] if tol is None else tol
        p = Vec2.of(p)
        offset = p - self.interior_point
        distance = offset.norm()
        if distance <= tol:
            return Containment(Location.INTERIOR, -self._ray_exit(self.interior_point, Vec2(1.0, 0.0)))
        direction = offset * (1.0 / distance)
        return Containment.classify(distance - self._ray_exit(self.interior_point, direction), tol)

    def normals_at(self, p, tol: float = None) -> List[float]:
        """Outward normals of every piece passing within tol of p."""
        tol = Config.TOLERANCES["ARC_POINT"] if tol is None else tol
        p = Vec2.of(p)
        return [piece.normal_at(p) for piece in self.pieces if piece.distance_to(p) <= tol]

    def sample_boundary(self, m: int) -> np.ndarray:
        """About m counterclockwise boundary points, every junction included."""
        perimeter = self.perimeter
        return np.vstack([p.sample(max(2, int(round(m * p.length / perimeter)))) for p in self.pieces])

    def to_dict(self):
        return {"pieces": [p.to_dict() for p in self.pieces]}


@dataclass(frozen=True)
class CrossingSet:
    """Where two arc bodies meet: transversal crossings, tangential touches and shared pieces."""

    points: Tuple[Vec2, ...] = ()
    tangential: Tuple[Vec2, ...] = ()
    overlaps: Tuple[Tuple[Vec2, Vec2], ...] = ()


def _segment_segment(s1: Segment, s2: Segment, tol: float):
    d1, d2 = s1.b - s1.a, s2.b - s2.a
    l1, l2 = d1.norm(), d2.norm()
    w = s2.a - s1.a
    denominator = d1.cross(d2)

    if abs(denominator) <= 1e-12 * l1 * l2:
        if abs(w.cross(d1)) / l1 > tol:
            return [], []
        t0, t1 = w.dot(d1) / (l1 * l1), (s2.b - s1.a).dot(d1) / (l1 * l1)
        lo, hi = max(0.0, min(t0, t1)), min(1.0, max(t0, t1))
        if (hi - lo) * l1 > tol:
            return [], [(s1.a + d1 * lo, s1.a + d1 * hi)]
        if (hi - lo) * l1 >= -tol:
            return [(s1.a + d1 * lo, True)], []
        return [], []

    t = w.cross(d2) / denominator
    u = w.cross(d1) / denominator
    if -tol / l1 <= t <= 1.0 + tol / l1 and -tol / l2 <= u <= 1.0 + tol / l2:
        return [(s1.a + d1 * t, False)], []
    return [], []


def _segment_arc(segment: Segment, arc: Arc, tol: float):
    d = segment.b - segment.a
    length = d.norm()
    e = d * (1.0 / length)
    f = arc.center - segment.a
    along = f.dot(e)
    distance = abs(e.cross(f))

    if distance > arc.radius + tol:
        return [], []
    if abs(distance - arc.radius) <= tol:
        candidates = [(along, True)]
    else:
        half = math.sqrt(arc.radius ** 2 - distance ** 2)
        candidates = [(along - half, False), (along + half, False)]

    found = []
    for t, tangential in candidates:
        if not -tol <= t <= length + tol:
            continue
        p = segment.a + e * t
        if arc.covers((p - arc.center).angle(), tol / arc.radius):
            found.append((p, tangential))
    return found, []


def _arc_arc(a1: Arc, a2: Arc, tol: float):
    offset = a2.center - a1.center
    distance = offset.norm()

    if distance <= tol and abs(a1.radius - a2.radius) <= tol:
        angular_tol = tol / a1.radius
        points, overlaps = [], []
        for k in (-1, 0, 1):
            lo = max(a1.start, a2.start + k * TWO_PI)
            hi = min(a1.end, a2.end + k * TWO_PI)
            if hi - lo > angular_tol:
                overlaps.append((a1.point_at(lo), a1.point_at(hi)))
            elif hi - lo >= -angular_tol:
                points.append((a1.point_at(lo), True))
        return points, overlaps

    r1, r2 = a1.radius, a2.radius
    if distance <= tol or distance > r1 + r2 + tol or distance < abs(r1 - r2) - tol:
        return [], []

    along = (r1 * r1 - r2 * r2 + distance * distance) / (2.0 * distance)
    base = a1.center + offset * (along / distance)
    tangential = abs(distance - (r1 + r2)) <= tol or abs(distance - abs(r1 - r2)) <= tol
    if tangential:
        candidates = [base]
    else:
        half = math.sqrt(max(r1 * r1 - along * along, 0.0))
        side = offset.perp() * (half / distance)
        candidates = [base + side, base - side]

    found = []
    for p in candidates:
        if a1.covers((p - a1.center).angle(), tol / r1) and a2.covers((p - a2.center).angle(), tol / r2):
            found.append((p, tangential))
    return found, []


def _piece_crossings(p: Piece, q: Piece, tol: float):
    if isinstance(p, Segment) and isinstance(q, Segment):
        return _segment_segment(p, q, tol)
    if isinstance(p, Segment):
        return _segment_arc(p, q, tol)
    if isinstance(q, Segment):
        return _segment_arc(q, p, tol)
    return _arc_arc(p, q, tol)


def _dedupe(points: Sequence[Vec2], tol: float) -> List[Vec2]:
    unique: List[Vec2] = []
    for p in points:
        if all(p.distance(u) > tol for u in unique):
            unique.append(p)
    return unique


def arc_boundary_crossings(b1: ArcBody, b2: ArcBody, tol: float = None) -> CrossingSet:
    """All points of bd(b1) ∩ bd(b2); congruent overlapping stretches come back as intervals."""
    tol = Config.TOLERANCES["ARC_POINT"] if tol is None else tol
    found, overlaps = [], []
    for p in b1.pieces:
        for q in b2.pieces:
            points, stretches = _piece_crossings(p, q, tol)
            found.extend(points)
            overlaps.extend(stretches)

    points = _dedupe([p for p, _ in found], tol)
    transversal = [p for p, tangential in found if not tangential]
    tangential = [p for p in points if all(p.distance(t) > tol for t in transversal)]
    return CrossingSet(tuple(points), tuple(tangential), tuple(overlaps))


Body = Union[ArcBody, SupportBody]


def interior_witness(bodies: Sequence[Body]) -> Optional[Vec2]:
    """A point interior to every body, if one of the simple candidates is inside."""
    anchors = [b.interior_point for b in bodies]
    centroid = Vec2(sum(a.x for a in anchors) / len(anchors), sum(a.y for a in anchors) / len(anchors))
    candidates = [centroid] + anchors + [(a + b) * 0.5 for a, b in combinations(anchors, 2)]
    for point in candidates:
        if all(b.contains(point).location is Location.INTERIOR for b in bodies):
            return point
    return None


@dataclass(frozen=True)
class SingularityCount:
    count: int
    points: Tuple[Vec2, ...]
    flags: Tuple[str, ...] = ()


def _format_point(p: Vec2) -> str:
    return f"({p.x:.6f}, {p.y:.6f})"


def arc_intersect_singularities(bodies: Sequence[ArcBody]) -> SingularityCount:
    """Boundary points of ∩ bodies with more than one outward normal."""
    tol = Config.TOLERANCES["ARC_POINT"]
    corner_tol = Config.TOLERANCES["CORNER"]

    candidates: List[Vec2] = []
    tangential: List[Vec2] = []
    flags: List[str] = []
    for (i, b1), (j, b2) in combinations(enumerate(bodies), 2):
        crossings = arc_boundary_crossings(b1, b2, tol)
        candidates.extend(crossings.points)
        tangential.extend(crossings.tangential)
        for lo, hi in crossings.overlaps:
            candidates.extend((lo, hi))
            flags.append(f"OverlappingCongruentPieces {i}-{j}: {_format_point(lo)} to {_format_point(hi)}")
    for body in bodies:
        candidates.extend(point for point, _ in body.corners(corner_tol))

    survivors = _dedupe([p for p in candidates if all(b.contains(p, tol).inside for b in bodies)], 10.0 * tol)
    if not survivors and interior_witness(bodies) is None:
        raise EmptyIntersection("Gallery bodies have no common point")

    singular = []
    for p in survivors:
        normals = [n for b in bodies if b.contains(p, tol).location is Location.BOUNDARY for n in b.normals_at(p, tol)]
        spread = max((angular_distance(a, b) for a, b in combinations(normals, 2)), default=0.0)
        if spread > corner_tol:
            singular.append(p)

    for p in tangential:
        if any(p.distance(s) <= 10.0 * tol for s in survivors):
            flags.append(f"TangentialContact at {_format_point(p)}")

    return SingularityCount(len(singular), tuple(singular), tuple(flags))


def support_body_crossings(b1: SupportBody, b2: SupportBody, samples: int = None) -> List[Vec2]:
    """Crossings of two support bodies that need not be translates.

    Scans b1's Gauss parameter for sign changes of b2's support gap along
    bd(b1) and polishes each with a bracketed root solve.
    """
    samples = samples or Config.SEARCH["CROSSING_SCAN"]
    grid = angle_grid(samples)
    step = grid[1]

    def gap(theta):
        return b2.contains(b1.boundary_point(theta)).gap

    values = [gap(theta) for theta in grid]
    points = []
    for k in range(samples):
        g0, g1 = values[k], values[(k + 1) % samples]
        if g0 == 0.0:
            points.append(b1.boundary_point(grid[k]))
        elif (g0 < 0.0 < g1) or (g0 > 0.0 > g1):
            theta = brentq(gap, grid[k], grid[k] + step, xtol=Config.SEARCH["ROOT_XTOL"])
            points.append(b1.boundary_point(theta))
    return points


def support_intersect_singularities(bodies: Sequence[SupportBody]) -> SingularityCount:
    """Singular points of ∩ bodies for smooth bodies in arbitrary position."""
    angle_tol = Config.TOLERANCES["ANGLE"]
    candidates = []
    for b1, b2 in combinations(bodies, 2):
        candidates.extend(support_body_crossings(b1, b2))

    survivors = _dedupe([p for p in candidates if all(b.contains(p).inside for b in bodies)], bodies[0].boundary_tol)
    if not survivors and interior_witness(bodies) is None:
        raise EmptyIntersection("Bodies have no common point")

    singular = []
    for p in survivors:
        normals = [b.support_parameter(p) for b in bodies if b.contains(p).location is Location.BOUNDARY]
        if max((angular_distance(a, b) for a, b in combinations(normals, 2)), default=0.0) > angle_tol:
            singular.append(p)
    return SingularityCount(len(singular), tuple(singular))


def oracle_singularity_count(bodies: Sequence[Body], resolution: int) -> int:
    """Number of tag changes on the clipped polygon of the bodies."""
    return len(oracle_singularities(oracle_intersection(bodies, resolution)))


class Assumption(Enum):
    TRANSLATES = "translates"
    STRICTLY_CONVEX = "strictly-convex"
    SMOOTH = "smooth"
    NONEMPTY_INTERIOR = "nonempty-interior"
    NON_REDUNDANT = "non-redundant"


class Violation(Enum):
    NONE = "None"
    NOT_TRANSLATES = "NotTranslates"
    NOT_STRICTLY_CONVEX = "NotStrictlyConvex"
    NOT_SMOOTH = "NotSmooth"
    EMPTY_INTERIOR = "EmptyInterior"
    REDUNDANT = "Redundant"

    @property
    def assumption(self) -> Optional[Assumption]:
        return {
            Violation.NOT_TRANSLATES: Assumption.TRANSLATES,
            Violation.NOT_STRICTLY_CONVEX: Assumption.STRICTLY_CONVEX,
            Violation.NOT_SMOOTH: Assumption.SMOOTH,
            Violation.EMPTY_INTERIOR: Assumption.NONEMPTY_INTERIOR,
            Violation.REDUNDANT: Assumption.NON_REDUNDANT,
        }.get(self)


@dataclass(frozen=True)
class Scenario:
    """A named configuration and its known singularity count (None: derived from the oracle)."""

    name: str
    bodies: Tuple[Body, ...]
    violated: Violation
    expected: Optional[int]
    description: str = ""

    @property
    def disk_centers(self) -> Optional[Tuple[float, List[Vec2]]]:
        """(radius, centers) when every body is the same full circle, else None."""
        circles = [b.pieces[0] for b in self.bodies if isinstance(b, ArcBody) and len(b.pieces) == 1]
        if len(circles) != len(self.bodies) or len({c.radius for c in circles}) != 1:
            return None
        return circles[0].radius, [c.center for c in circles]

    def to_dict(self):
        return {
            "name": self.name,
            "bodies": [b.to_dict() for b in self.bodies],
            "violated": self.violated.value,
            "expected": self.expected,
        }

    def digest(self) -> str:
        return hashlib.md5(json.dumps(self.to_dict(), sort_keys=True).encode()).hexdigest()


def _equilateral_triangle(side: float) -> List[Vec2]:
    radius = side / math.sqrt(3.0)
    return [unit(math.pi / 2 + k * TWO_PI / 3) * radius for k in range(3)]


def _square(side: float) -> List[Vec2]:
    h = 0.5 * side
    return [Vec2(-h, -h), Vec2(h, -h), Vec2(h, h), Vec2(-h, h)]


def _ideal_three_disks() -> Scenario:
    centers = [(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3.0) / 2)]
    return Scenario(
        "ideal_three_disks",
        tuple(ArcBody.circle(c) for c in centers),
        Violation.NONE,
        3,
        "Three unit disks centred on an equilateral triangle of side 1 (Reuleaux triangle)",
    )


def _rotated_isometry() -> Scenario:
    shape = SupportFunction(1.5, ((0.0, 0.0), (0.3, 0.0)))
    return Scenario(
        "rotated_isometry",
        (SupportBody(shape), SupportBody(shape, Vec2(0.4, 0.0), 0.5 * math.pi)),
        Violation.NOT_TRANSLATES,
        None,
        "Oval and a copy rotated by a quarter turn, centres 0.4 apart",
    )


def _non_strict_shift() -> Scenario:
    square = ArcBody.rounded_square(2.0, 0.25)
    return Scenario(
        "non_strict_shift",
        (square, square.translated((0.5, 0.0))),
        Violation.NOT_STRICTLY_CONVEX,
        0,
        "Rounded square shifted along an edge; the flat edges glue smoothly",
    )


def _non_smooth_triangles() -> Scenario:
    triangle = ArcBody.bulged_polygon(_equilateral_triangle(2.0))
    return Scenario(
        "non_smooth_triangles",
        (triangle, triangle.translated((0.05, -0.3))),
        Violation.NOT_SMOOTH,
        3,
        "Triangle with bowed edges and a shifted copy; one corner lies inside the other",
    )


def _non_smooth_squares() -> Scenario:
    square = ArcBody.bulged_polygon(_square(2.0))
    return Scenario(
        "non_smooth_squares",
        (square, square.translated((0.3, 0.2))),
        Violation.NOT_SMOOTH,
        4,
        "Square with bowed edges and a diagonally shifted copy",
    )


def _tangent_disks() -> Scenario:
    return Scenario(
        "tangent_disks",
        (ArcBody.circle((0.0, 0.0)), ArcBody.circle((2.0, 0.0))),
        Violation.EMPTY_INTERIOR,
        1,
        "Unit disks touching at one point",
    )


def _redundant_disks() -> Scenario:
    centers = [(0.0, 0.0), (1.0, 0.0), (0.5, 0.0)]
    return Scenario(
        "redundant_disks",
        tuple(ArcBody.circle(c) for c in centers),
        Violation.REDUNDANT,
        2,
        "Two unit disks at distance 1 and a third halfway between",
    )


SCENARIOS = {
    "ideal_three_disks": _ideal_three_disks,
    "rotated_isometry": _rotated_isometry,
    "non_strict_shift": _non_strict_shift,
    "non_smooth_triangles": _non_smooth_triangles,
    "non_smooth_squares": _non_smooth_squares,
    "tangent_disks": _tangent_disks,
    "redundant_disks": _redundant_disks,
}


def scenario(name: str) -> Scenario:
    try:
        return SCENARIOS[name]()
    except KeyError:
        raise UnknownScenario(f"No scenario named {name!r}; known: {', '.join(SCENARIOS)}") from None


def _same_outline(first: ArcBody, other: ArcBody, tol: float) -> bool:
    if len(first.pieces) != len(other.pieces):
        return False
    offset = other.pieces[0].start_point - first.pieces[0].start_point
    for p, q in zip(first.pieces, other.pieces):
        if type(p) is not type(q):
            return False
        if p.start_point.distance(q.start_point - offset) > tol or p.end_point.distance(q.end_point - offset) > tol:
            return False
        if isinstance(p, Arc) and (abs(p.radius - q.radius) > tol or abs(p.start - q.start) > tol):
            return False
    return True


def _are_translates(bodies: Sequence[Body]) -> bool:
    first = bodies[0]
    if all(isinstance(b, SupportBody) for b in bodies):
        return all(b.is_translate_of(first) for b in bodies[1:])
    if all(isinstance(b, ArcBody) for b in bodies):
        return all(_same_outline(first, b, 1e-9) for b in bodies[1:])
    return False


def _support_body_admissible(body: SupportBody) -> bool:
    try:
        body.validate()
        return True
    except GeometryError:
        return False


def _strictly_convex(body: Body) -> bool:
    if isinstance(body, SupportBody):
        return _support_body_admissible(body)
    return not any(isinstance(p, Segment) for p in body.pieces)


def _smooth(body: Body) -> bool:
    if isinstance(body, SupportBody):
        return _support_body_admissible(body)
    return not body.corners()


def _redundant(bodies: Sequence[Body], index: int, samples: int = 256) -> bool:
    """True when no sampled boundary point of the others' intersection escapes body index."""
    others = [b for i, b in enumerate(bodies) if i != index]
    target = bodies[index]
    for body in others:
        for p in body.sample_boundary(samples):
            if all(o.contains(p).inside for o in others) and target.contains(p).location is Location.EXTERIOR:
                return False
    return True


def assumption_report(case: Scenario) -> Dict[Assumption, bool]:
    """Which hypotheses of the singularity count hold for a scenario."""
    bodies = case.bodies
    return {
        Assumption.TRANSLATES: _are_translates(bodies),
        Assumption.STRICTLY_CONVEX: all(_strictly_convex(b) for b in bodies),
        Assumption.SMOOTH: all(_smooth(b) for b in bodies),
        Assumption.NONEMPTY_INTERIOR: interior_witness(bodies) is not None,
        Assumption.NON_REDUNDANT: not any(_redundant(bodies, i) for i in range(len(bodies))),
    }


@dataclass(frozen=True)
class ScenarioResult:
    name: str
    violated: Violation
    expected: int
    actual: int
    points: Tuple[Vec2, ...]
    flags: Tuple[str, ...]
    assumptions: Dict[Assumption, bool] = field(default_factory=dict)
    analytic: Optional[int] = None
    oracle: Optional[int] = None

    @property
    def assumptions_ok(self) -> bool:
        """Exactly the declared hypothesis fails."""
        violated = self.violated.assumption
        return all(holds == (a is not violated) for a, holds in self.assumptions.items())

    @property
    def passed(self) -> bool:
        agree = all(c is None or c == self.actual for c in (self.analytic, self.oracle))
        return self.expected == self.actual and agree and self.assumptions_ok

    def to_dict(self):
        return {
            "scenario": self.name,
            "violated": self.violated.value,
            "expected": self.expected,
            "actual": self.actual,
            "analytic": self.analytic,
            "oracle": self.oracle,
            "points": [p.to_list() for p in self.points],
            "flags": list(self.flags),
            "assumptions": {a.value: holds for a, holds in self.assumptions.items()},
            "pass": self.passed,
        }


class Gallery:
    """Runs the counterexample scenarios and checks their counts."""

    def __init__(self, config=Config, cache: Cache = None):
        self.config = config
        self.resolution = config.ORACLE["RESOLUTION"]
        self.cache = cache or Cache(config.OUTPUT["CACHE_DIR"])

    def oracle_count(self, case: Scenario) -> int:
        """Polygonal-oracle singularity count, cached per geometry and resolution."""
        key = f"oracle_{case.name}_{self.resolution}_{case.digest()}"
        return int(self.cache.get_or_compute(key, lambda: oracle_singularity_count(case.bodies, self.resolution)))

    def _analytic_disk_count(self, case: Scenario) -> Optional[int]:
        disks = case.disk_centers
        if disks is None:
            return None
        radius, centers = disks
        shape = intersect(Arrangement(SupportFunction.disk(radius), tuple(centers)))
        return 0 if shape.status is ShapeStatus.EMPTY else shape.vertex_count

    def run(self, name: str) -> ScenarioResult:
        """Run one scenario.

        Args:
            name: Scenario name from the registry

        Returns:
            ScenarioResult: measured singular points against the expected count,
            with the disk and oracle counts where they apply

        Raises:
            UnknownScenario: no scenario has that name
        """
        case = scenario(name)
        logger.info(f"Running scenario {name}")

        oracle = None
        if all(isinstance(b, SupportBody) for b in case.bodies):
            result = support_intersect_singularities(case.bodies)
        else:
            result = arc_intersect_singularities(case.bodies)

        analytic = self._analytic_disk_count(case)
        if analytic is not None and case.violated is not Violation.EMPTY_INTERIOR:
            oracle = self.oracle_count(case)

        expected = case.expected if case.expected is not None else self.oracle_count(case)
        outcome = ScenarioResult(
            name=name,
            violated=case.violated,
            expected=expected,
            actual=result.count,
            points=result.points,
            flags=result.flags,
            assumptions=assumption_report(case),
            analytic=analytic,
            oracle=oracle,
        )

        if outcome.passed:
            logger.info(f"Scenario {name}: {outcome.actual} singular points (expected {expected})")
        else:
            logger.warning(f"Scenario {name} failed: {outcome.actual} singular points, expected {expected}")
        return outcome

    def run_all(self) -> List[ScenarioResult]:
        """Run every registered scenario in registry order."""
        return [self.run(name) for name in SCENARIOS]
