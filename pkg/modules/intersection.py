"""
Intersections of n translates of one smooth strictly convex body.

The boundary of the intersection alternates between singular vertices (points
where two translate boundaries cross) and edges (arcs of a single translate's
boundary). Under the usual hypotheses, namely non-empty interior and no
redundant translate, there are exactly n of each, and every translate owns
exactly one edge. This module computes that structure and checks it.
"""

import hashlib
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import Config
from modules.body import Location, SupportBody, SupportFunction
from modules.chords import chord_at, chords_of_length, max_chord
from modules.errors import (
    EmptyInterior,
    EmptyIntersection,
    HypothesisViolated,
    InvalidArrangement,
    InvalidInput,
    NoProperOverlap,
    NotOnBoundary,
    ParallelNormals,
    ShapeMismatch,
)
from utils.geometry import TWO_PI, GaussArc, Vec2, angular_distance, ccw_delta
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class Arrangement:
    """n ≥ 2 distinct translates of one shape sharing one rotation."""

    shape: SupportFunction
    translations: Tuple[Vec2, ...]
    rotation: float = 0.0

    def __post_init__(self):
        try:
            translations = tuple(Vec2.of(t) for t in self.translations)
        except (TypeError, ValueError) as e:
            raise InvalidInput(f"Malformed translations: {e}") from e

        if len(translations) < 2:
            raise InvalidArrangement(f"An arrangement needs at least 2 translates, got {len(translations)}")
        if len(set(translations)) != len(translations):
            raise InvalidArrangement("Translations must be pairwise distinct")
        if not all(t.is_finite() for t in translations):
            raise InvalidInput("Translations must be finite")

        self.shape.validate()
        object.__setattr__(self, "translations", translations)
        object.__setattr__(self, "rotation", float(self.rotation))

    @property
    def n(self) -> int:
        return len(self.translations)

    @cached_property
    def bodies(self) -> Tuple[SupportBody, ...]:
        return tuple(SupportBody(self.shape, t, self.rotation) for t in self.translations)

    @property
    def diameter(self) -> float:
        return self.shape.diameter

    @classmethod
    def from_bodies(cls, bodies: Sequence[SupportBody]) -> "Arrangement":
        first = bodies[0]
        for body in bodies[1:]:
            if not body.is_translate_of(first):
                raise ShapeMismatch("Bodies differ in shape or rotation")
        return cls(first.shape, tuple(b.center for b in bodies), first.rotation)

    def without(self, index: int) -> "Arrangement":
        """Arrangement with translate index removed, the others keeping their order.

        Args:
            index: Position of the translate to drop
        """
        return Arrangement(
            self.shape, self.translations[:index] + self.translations[index + 1:], self.rotation
        )

    def with_translation(self, translation) -> "Arrangement":
        return Arrangement(self.shape, self.translations + (Vec2.of(translation),), self.rotation)

    def prefix(self, count: int) -> "Arrangement":
        return Arrangement(self.shape, self.translations[:count], self.rotation)

    def to_dict(self):
        body = self.shape.to_dict()
        body["rotation"] = self.rotation
        return {"body": body, "translations": [t.to_list() for t in self.translations]}

    @classmethod
    def from_dict(cls, data) -> "Arrangement":
        try:
            body = data["body"]
            return cls(SupportFunction.from_dict(body), tuple(data["translations"]), float(body.get("rotation", 0.0)))
        except (KeyError, TypeError, AttributeError) as e:
            raise InvalidInput(f"Malformed arrangement: {e}") from e

    def digest(self) -> str:
        return hashlib.md5(json.dumps(self.to_dict(), sort_keys=True).encode()).hexdigest()


class ContactKind(Enum):
    TWO_POINTS = "TwoPoints"
    TANGENT = "Tangent"
    DISJOINT = "Disjoint"
    IDENTICAL = "Identical"


@dataclass(frozen=True)
class PairContact:
    """How two translates meet. TwoPoints lists the crossings ordered by chord parameter."""

    kind: ContactKind
    points: Tuple[Vec2, ...] = ()
    eta: float = 0.0
    distance: float = 0.0

    def to_dict(self):
        return {
            "kind": self.kind.value,
            "points": [p.to_list() for p in self.points],
            "eta": self.eta,
            "distance": self.distance,
        }


class ShapeStatus(Enum):
    PROPER_BODY = "ProperBody"
    SINGLE_POINT = "SinglePoint"
    EMPTY = "Empty"


@dataclass(frozen=True)
class SingularVertex:
    """Crossing of translates pair[0] (incoming edge) and pair[1] (outgoing edge)."""

    point: Vec2
    pair: Tuple[int, int]
    normal_cone: GaussArc
    concurrent: bool = False

    def to_dict(self):
        return {
            "point": self.point.to_list(),
            "pair": list(self.pair),
            "normal_cone": self.normal_cone.to_dict(),
            "concurrent": self.concurrent,
        }


@dataclass(frozen=True)
class Edge:
    """Boundary arc of the intersection between two consecutive vertices.

    owner is the translate whose boundary carries the arc and gauss_interval the
    outward normals along it; tied marks an owner that could not be told apart
    from another translate at the sample points.
    """

    owner: int
    gauss_interval: GaussArc
    start: Vec2
    end: Vec2
    tied: bool = False

    def to_dict(self):
        return {
            "owner": self.owner,
            "gauss_interval": self.gauss_interval.to_dict(),
            "start": self.start.to_list(),
            "end": self.end.to_list(),
        }


@dataclass(frozen=True)
class IntersectionShape:
    """Intersection of an arrangement: status, vertices, edges and per-translate redundancy."""

    status: ShapeStatus
    vertices: Tuple[SingularVertex, ...] = ()
    edges: Tuple[Edge, ...] = ()
    redundancy: Tuple[bool, ...] = ()
    reference: Optional[Vec2] = None
    flags: Tuple[str, ...] = ()
    contacts: Dict[Tuple[int, int], PairContact] = field(default_factory=dict, compare=False, repr=False)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def vertex_points(self) -> List[Vec2]:
        return [v.point for v in self.vertices]

    def owned_edge_counts(self, n: int) -> List[int]:
        """Number of edges owned by each of the n translates."""
        owned = Counter(e.owner for e in self.edges)
        return [owned[i] for i in range(n)]

    @property
    def gauss_partition_residual(self) -> float:
        """|2π - Σ edge measures - Σ vertex cone measures|."""
        total = sum(e.gauss_interval.measure for e in self.edges)
        total += sum(v.normal_cone.measure for v in self.vertices)
        return abs(TWO_PI - total)

    def boundary_polyline(self, bodies: Sequence[SupportBody], per_edge: int = 64) -> np.ndarray:
        """Dense counterclockwise boundary samples, vertices included."""
        if self.status is not ShapeStatus.PROPER_BODY:
            return np.array([p.to_list() for p in self.vertex_points]).reshape(-1, 2)

        pieces = []
        for vertex, edge in zip(self.vertices, self.edges):
            pieces.append(np.array([vertex.point.to_list()]))
            pieces.append(bodies[edge.owner].boundary_points(edge.gauss_interval.sample(per_edge)))
        return np.vstack(pieces)

    def to_dict(self):
        return {
            "status": self.status.value,
            "vertices": [v.to_dict() for v in self.vertices],
            "edges": [e.to_dict() for e in self.edges],
            "redundancy": list(self.redundancy),
            "reference": self.reference.to_list() if self.reference else None,
            "flags": list(self.flags),
        }


def pair_boundary_points(b1: SupportBody, b2: SupportBody) -> PairContact:
    """Boundary crossings of two translates via the chord of b1 equal to their offset.

    With t = c2 - c1, a chord of b1 parallel to t of length |t| has its far
    endpoint q on both boundaries, since q - t is the near endpoint.
    """
    if not b1.is_translate_of(b2):
        raise ShapeMismatch("Bodies are not translates of each other")

    offset = b2.center - b1.center
    r = offset.norm()
    if r == 0.0:
        return PairContact(ContactKind.IDENTICAL)

    profile = max_chord(b1, offset.angle() + 0.5 * math.pi)
    window = Config.TOLERANCES["TANGENCY"] * b1.diameter
    if abs(r - profile.eta) <= window:
        tangent = chord_at(profile, profile.t_max).q
        return PairContact(ContactKind.TANGENT, (tangent,), profile.eta, r)
    if r > profile.eta:
        return PairContact(ContactKind.DISJOINT, (), profile.eta, r)

    first, second = chords_of_length(profile, r)
    return PairContact(ContactKind.TWO_POINTS, (first.q, second.q), profile.eta, r)


def normal_margin(theta1: float, theta2: float) -> float:
    """Angular distance of the normal difference from {0, π}."""
    delta = angular_distance(theta1, theta2)
    return min(delta, math.pi - delta)


def verify_nonparallel_normals(b1: SupportBody, b2: SupportBody, p) -> Tuple[float, float]:
    """Normals of both bodies at a crossing, which must be neither equal nor opposite."""
    theta1 = b1.gauss_map(p)
    theta2 = b2.gauss_map(p)
    margin = normal_margin(theta1, theta2)
    if margin <= Config.TOLERANCES["ANGLE"]:
        raise ParallelNormals(f"Normals {theta1:.9f} and {theta2:.9f} at {tuple(p)} are parallel (margin {margin:.3g})")
    return theta1, theta2


@dataclass
class _Candidate:
    point: Vec2
    pair: Tuple[int, int]
    concurrent: bool = False


def _vertex_candidates(bodies, contacts, tol) -> List[_Candidate]:
    found: List[_Candidate] = []
    for pair, contact in contacts.items():
        if contact.kind is not ContactKind.TWO_POINTS:
            continue

        for point in contact.points:
            concurrent = False
            outside = False
            for i, body in enumerate(bodies):
                if i in pair:
                    continue
                location = body.contains(point).location
                if location is Location.EXTERIOR:
                    outside = True
                    break
                if location is Location.BOUNDARY:
                    concurrent = True
            if outside:
                continue

            duplicate = next((c for c in found if c.point.distance(point) <= tol), None)
            if duplicate is not None:
                duplicate.concurrent = True
                continue
            found.append(_Candidate(point, pair, concurrent))
    return found


def _reference_point(bodies, points, tol) -> Optional[Vec2]:
    """Deepest point among the centroid, the translates' interior points and the candidates."""
    centroid = Vec2(sum(p.x for p in points) / len(points), sum(p.y for p in points) / len(points))
    samples = [centroid] + [b.interior_point for b in bodies] + list(points)

    best, best_gap = None, math.inf
    for sample in samples:
        worst = max(b.contains(sample).gap for b in bodies)
        if worst < best_gap:
            best, best_gap = sample, worst

    if best_gap >= -tol:
        return None
    return best


def _owner_at(bodies, reference, alpha, tol) -> Tuple[int, bool]:
    """Owner of the boundary point of the intersection on the ray from reference at alpha."""
    hits = [b.radial_boundary(reference, alpha) for b in bodies]
    nearest = min(hits, key=lambda p: p.distance(reference))
    gaps = [b.contains(nearest).gap for b in bodies]
    ranked = sorted(range(len(bodies)), key=lambda i: gaps[i], reverse=True)
    tied = len(ranked) > 1 and gaps[ranked[1]] >= gaps[ranked[0]] - tol
    return ranked[0], tied


def _edge_owner(bodies, reference, alpha_start, span, tol) -> Tuple[int, bool]:
    owner, tied = _owner_at(bodies, reference, alpha_start + 0.5 * span, tol)
    if not tied:
        return owner, False

    for fraction in (0.25, 0.75):
        candidate, candidate_tied = _owner_at(bodies, reference, alpha_start + fraction * span, tol)
        if not candidate_tied:
            return candidate, False
    return owner, True


def _gauss_at(body: SupportBody, point: Vec2, flags: List[str]) -> float:
    try:
        return body.gauss_map(point)
    except NotOnBoundary as e:
        logger.warning(f"Edge owner does not pass through vertex: {e}")
        flags.append("owner-off-vertex")
        return body.support_parameter(point)


def _empty(n, contacts, flags=()) -> IntersectionShape:
    return IntersectionShape(ShapeStatus.EMPTY, redundancy=(False,) * n, flags=tuple(flags), contacts=contacts)


def _single_point(bodies, pair, point, contacts, flags=()) -> IntersectionShape:
    j, k = pair
    start = bodies[j].support_parameter(point)
    concurrent = "concurrent-boundaries" in flags
    vertex = SingularVertex(point, (j, k), GaussArc(start, TWO_PI), concurrent)
    return IntersectionShape(
        ShapeStatus.SINGLE_POINT,
        vertices=(vertex,),
        redundancy=(False,) * len(bodies),
        reference=point,
        flags=tuple(flags),
        contacts=contacts,
    )


def pairwise_contacts(arr: Arrangement) -> Dict[Tuple[int, int], PairContact]:
    """Classify every pair of translates.

    Args:
        arr: The arrangement

    Returns:
        Dict: (j, k) with j < k mapped to the contact of translates j and k
    """
    bodies = arr.bodies
    return {(j, k): pair_boundary_points(bodies[j], bodies[k]) for j, k in combinations(range(arr.n), 2)}


def intersect(arr: Arrangement, resolve_redundancy: bool = True) -> IntersectionShape:
    """Vertices, edges and redundancy of the intersection of all translates.

    Args:
        arr: The arrangement.
        resolve_redundancy: Confirm every edge-less translate with is_redundant.
            When False, owning no edge is taken as redundancy.

    Returns:
        IntersectionShape: vertices counterclockwise about an interior reference
        point, edge i running from vertex i to vertex i+1.
    """
    bodies = arr.bodies
    n = arr.n
    tol = bodies[0].boundary_tol
    contacts = pairwise_contacts(arr)

    if any(c.kind is ContactKind.DISJOINT for c in contacts.values()):
        return _empty(n, contacts)

    tangents = [(pair, c) for pair, c in contacts.items() if c.kind is ContactKind.TANGENT]
    if tangents:
        pair, contact = tangents[0]
        point = contact.points[0]
        if all(b.contains(point).inside for b in bodies):
            return _single_point(bodies, pair, point, contacts)
        return _empty(n, contacts)

    candidates = _vertex_candidates(bodies, contacts, tol)
    if not candidates:
        return _empty(n, contacts)

    flags: List[str] = []
    if any(c.concurrent for c in candidates):
        logger.warning("Three or more translate boundaries pass through one vertex")
        flags.append("concurrent-boundaries")

    reference = _reference_point(bodies, [c.point for c in candidates], tol)
    if reference is None:
        if len(candidates) == 1:
            return _single_point(bodies, candidates[0].pair, candidates[0].point, contacts, flags)
        return _empty(n, contacts, flags + ["empty-interior"])

    candidates.sort(key=lambda c: (c.point - reference).angle())
    angles = [(c.point - reference).angle() for c in candidates]
    m = len(candidates)

    edges: List[Edge] = []
    for i in range(m):
        start, end = candidates[i], candidates[(i + 1) % m]
        span = ccw_delta(angles[i], angles[(i + 1) % m]) if m > 1 else TWO_PI
        owner, tied = _edge_owner(bodies, reference, angles[i], span, tol)
        if tied:
            flags.append("edge-owner-tie")

        owner_body = bodies[owner]
        arc = GaussArc.between(_gauss_at(owner_body, start.point, flags), _gauss_at(owner_body, end.point, flags))
        edges.append(Edge(owner, arc, start.point, end.point, tied))

    vertices: List[SingularVertex] = []
    for i, candidate in enumerate(candidates):
        incoming, outgoing = edges[i - 1], edges[i]
        pair = (incoming.owner, outgoing.owner)
        if set(pair) != set(candidate.pair) and not candidate.concurrent:
            flags.append("vertex-pair-mismatch")
        cone = GaussArc.between(incoming.gauss_interval.end, outgoing.gauss_interval.start)
        vertices.append(SingularVertex(candidate.point, pair, cone, candidate.concurrent))

    owned = Counter(e.owner for e in edges)
    redundancy: List[bool] = []
    for i in range(n):
        if owned[i]:
            redundancy.append(False)
        elif not resolve_redundancy:
            redundancy.append(True)
        else:
            confirmed = is_redundant(arr, i)
            if not confirmed:
                logger.warning(f"Translate {i} owns no edge but is not redundant")
                flags.append("unowned-translate")
            redundancy.append(confirmed)

    return IntersectionShape(
        ShapeStatus.PROPER_BODY,
        vertices=tuple(vertices),
        edges=tuple(edges),
        redundancy=tuple(redundancy),
        reference=reference,
        flags=tuple(dict.fromkeys(flags)),
        contacts=contacts,
    )


def is_redundant(arr: Arrangement, j: int) -> bool:
    """True iff the intersection of all other translates lies inside translate j.

    Raises:
        EmptyIntersection: the other translates have no common point.
        EmptyInterior: the other translates meet in a single point.
    """
    target = arr.bodies[j]
    samples = Config.SEARCH["EDGE_SAMPLES"]

    if arr.n == 2:
        other = arr.bodies[1 - j]
        points = other.sample_boundary(samples)
        return all(target.contains(p).inside for p in points)

    reduced = arr.without(j)
    shape = intersect(reduced, resolve_redundancy=False)
    if shape.status is ShapeStatus.EMPTY:
        raise EmptyIntersection(f"Translates other than {j} have no common point")
    if shape.status is ShapeStatus.SINGLE_POINT:
        raise EmptyInterior(f"Translates other than {j} meet in a single point")

    if not all(target.contains(p).inside for p in shape.vertex_points):
        return False

    reduced_bodies = reduced.bodies
    for edge in shape.edges:
        points = reduced_bodies[edge.owner].boundary_points(edge.gauss_interval.sample(samples))
        if not all(target.contains(p).inside for p in points):
            return False
    return True


def outside_gauss_measure(b1: SupportBody, b2: SupportBody, contact: PairContact = None) -> float:
    """Gauss measure of the arc of bd(b1) lying outside b2."""
    contact = contact or pair_boundary_points(b1, b2)
    if contact.kind is not ContactKind.TWO_POINTS:
        raise NoProperOverlap(f"Translates meet as {contact.kind.value}, not in two points")

    first = GaussArc.between(b1.gauss_map(contact.points[0]), b1.gauss_map(contact.points[1]))
    sample = b1.boundary_point(first.midpoint)
    inside = first.measure if b2.contains(sample).inside else TWO_PI - first.measure
    return TWO_PI - inside


class PointLocation(Enum):
    INTERIOR = "Interior"
    REGULAR = "Regular"
    SINGULAR = "Singular"
    EXTERIOR = "Exterior"


@dataclass(frozen=True)
class PointClass:
    """A point's place in the intersection and its outward normals there."""

    location: PointLocation
    normals: Optional[GaussArc] = None
    binding: Tuple[int, ...] = ()


def _normal_hull(angles: List[float]) -> GaussArc:
    """Shortest counterclockwise arc containing every angle."""
    ordered = sorted(angles)
    gaps = [ccw_delta(ordered[i], ordered[(i + 1) % len(ordered)]) for i in range(len(ordered))]
    widest = int(np.argmax(gaps))
    start = ordered[(widest + 1) % len(ordered)]
    return GaussArc.between(start, ordered[widest])


def classify_point(arr: Arrangement, p) -> PointClass:
    """Interior, regular boundary, singular boundary or exterior point of the intersection."""
    p = Vec2.of(p)
    binding = []
    for i, body in enumerate(arr.bodies):
        location = body.contains(p).location
        if location is Location.EXTERIOR:
            return PointClass(PointLocation.EXTERIOR)
        if location is Location.BOUNDARY:
            binding.append(i)

    if not binding:
        return PointClass(PointLocation.INTERIOR)

    normals = [arr.bodies[i].gauss_map(p) for i in binding]
    if len(binding) == 1:
        return PointClass(PointLocation.REGULAR, GaussArc(normals[0], 0.0), tuple(binding))
    return PointClass(PointLocation.SINGULAR, _normal_hull(normals), tuple(binding))


@dataclass(frozen=True)
class InductionStep:
    """Effect of adding one translate to an arrangement."""

    before: IntersectionShape
    after: IntersectionShape
    new_index: int
    added: Tuple[Vec2, ...]
    removed: Tuple[Vec2, ...]
    new_edges: int
    newly_redundant: Tuple[int, ...]

    @property
    def growth(self) -> int:
        return self.after.vertex_count - self.before.vertex_count


def induction_step(arr: Arrangement, translation) -> InductionStep:
    """Intersect arr and arr plus one more translate and compare the boundaries."""
    extended = arr.with_translation(translation)
    before = intersect(arr)
    after = intersect(extended)
    tol = arr.bodies[0].boundary_tol

    def missing(points, others):
        return tuple(p for p in points if all(p.distance(o) > tol for o in others))

    newly_redundant = tuple(
        i for i in range(arr.n) if after.redundancy[i] and not before.redundancy[i]
    )
    return InductionStep(
        before=before,
        after=after,
        new_index=arr.n,
        added=missing(after.vertex_points, before.vertex_points),
        removed=missing(before.vertex_points, after.vertex_points),
        new_edges=after.owned_edge_counts(extended.n)[arr.n],
        newly_redundant=newly_redundant,
    )


@dataclass(frozen=True)
class VertexCheck:
    index: int
    pair: Tuple[int, int]
    normals: Tuple[float, float]
    margin: float
    passed: bool

    def to_dict(self):
        return {"index": self.index, "pair": list(self.pair), "normals": list(self.normals),
                "margin": self.margin, "pass": self.passed}


@dataclass(frozen=True)
class EdgeCheck:
    index: int
    owner: int
    measure: float
    margin: float
    passed: bool

    def to_dict(self):
        return {"index": self.index, "owner": self.owner, "measure": self.measure,
                "margin": self.margin, "pass": self.passed}


@dataclass(frozen=True)
class PairCheck:
    pair: Tuple[int, int]
    outside_measure: float
    margin: float
    passed: bool

    def to_dict(self):
        return {"pair": list(self.pair), "outside_measure": self.outside_measure,
                "margin": self.margin, "pass": self.passed}


def _min_or_none(values):
    values = list(values)
    return min(values) if values else None


@dataclass(frozen=True)
class VerificationReport:
    n: int
    status: str
    vertices: Tuple[Vec2, ...]
    vertex_checks: Tuple[VertexCheck, ...]
    edge_checks: Tuple[EdgeCheck, ...]
    pair_checks: Tuple[PairCheck, ...]
    owned_edges: Tuple[int, ...]
    partition_residual: float
    redundant: Tuple[int, ...]
    flags: Tuple[str, ...]

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def count_ok(self) -> bool:
        return self.vertex_count == self.n

    @property
    def ownership_ok(self) -> bool:
        return all(count == 1 for count in self.owned_edges)

    @property
    def partition_ok(self) -> bool:
        return self.partition_residual <= Config.TOLERANCES["PARTITION"]

    @property
    def passed(self) -> bool:
        return (
            self.count_ok
            and self.ownership_ok
            and self.partition_ok
            and all(c.passed for c in self.vertex_checks)
            and all(c.passed for c in self.edge_checks)
            and all(c.passed for c in self.pair_checks)
            and not self.flags
        )

    @property
    def min_normal_margin(self) -> Optional[float]:
        return _min_or_none(c.margin for c in self.vertex_checks)

    @property
    def min_edge_margin(self) -> Optional[float]:
        return _min_or_none(c.margin for c in self.edge_checks)

    @property
    def min_outside_margin(self) -> Optional[float]:
        return _min_or_none(c.margin for c in self.pair_checks)

    def to_dict(self):
        return {
            "schema": 1,
            "n": self.n,
            "status": self.status,
            "vertex_count": self.vertex_count,
            "count_ok": self.count_ok,
            "vertices": [v.to_list() for v in self.vertices],
            "vertex_checks": [c.to_dict() for c in self.vertex_checks],
            "edge_checks": [c.to_dict() for c in self.edge_checks],
            "pair_checks": [c.to_dict() for c in self.pair_checks],
            "owned_edges": list(self.owned_edges),
            "ownership_ok": self.ownership_ok,
            "partition_residual": self.partition_residual,
            "partition_ok": self.partition_ok,
            "redundant": list(self.redundant),
            "flags": list(self.flags),
            "pass": self.passed,
        }


def verify_theorem(arr: Arrangement, strict: bool = True) -> VerificationReport:
    """Check the singularity count and the supporting facts for one arrangement.

    Args:
        arr: The arrangement to check.
        strict: Refuse arrangements whose intersection has empty interior or
            that contain a redundant translate.

    Returns:
        VerificationReport: counts, per-vertex normal margins, per-edge Gauss
        measure margins, per-pair outside measure margins, ownership and the
        Gauss partition residual.
    """
    shape = intersect(arr)
    redundant = tuple(i for i, r in enumerate(shape.redundancy) if r)

    if strict:
        if shape.status is not ShapeStatus.PROPER_BODY:
            raise HypothesisViolated("empty-interior", f"intersection is {shape.status.value}")
        if redundant:
            raise HypothesisViolated("redundant", f"translate {redundant[0] + 1} is redundant")

    bodies = arr.bodies
    angle_tol = Config.TOLERANCES["ANGLE"]
    gauss_margin = Config.TOLERANCES["GAUSS_MARGIN"]
    flags = list(shape.flags)

    vertex_checks = []
    for index, vertex in enumerate(shape.vertices):
        j, k = vertex.pair
        try:
            normals = (bodies[j].gauss_map(vertex.point), bodies[k].gauss_map(vertex.point))
        except NotOnBoundary as e:
            logger.warning(f"Vertex {index} is off a boundary: {e}")
            flags.append("vertex-off-boundary")
            continue
        margin = normal_margin(*normals) if j != k else 0.0
        vertex_checks.append(VertexCheck(index, vertex.pair, normals, margin, margin > angle_tol))

    edge_checks = []
    for index, edge in enumerate(shape.edges):
        margin = math.pi - edge.gauss_interval.measure
        edge_checks.append(EdgeCheck(index, edge.owner, edge.gauss_interval.measure, margin, margin > gauss_margin))

    pair_checks = []
    for (j, k), contact in shape.contacts.items():
        if contact.kind is not ContactKind.TWO_POINTS:
            continue
        for first, second in ((j, k), (k, j)):
            measure = outside_gauss_measure(bodies[first], bodies[second], contact)
            margin = measure - math.pi
            pair_checks.append(PairCheck((first, second), measure, margin, margin > gauss_margin))

    report = VerificationReport(
        n=arr.n,
        status=shape.status.value,
        vertices=tuple(shape.vertex_points),
        vertex_checks=tuple(vertex_checks),
        edge_checks=tuple(edge_checks),
        pair_checks=tuple(pair_checks),
        owned_edges=tuple(shape.owned_edge_counts(arr.n)),
        partition_residual=shape.gauss_partition_residual,
        redundant=redundant,
        flags=tuple(dict.fromkeys(flags)),
    )
    logger.debug(f"Verified arrangement {arr.digest()}: {report.vertex_count} vertices for n={arr.n}")
    return report
