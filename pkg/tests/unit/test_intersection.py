"""
Unit tests for the intersection module.
"""

import json
import math

import pytest

from modules.body import SupportBody, SupportFunction
from modules.errors import (
    EmptyInterior,
    EmptyIntersection,
    HypothesisViolated,
    InvalidArrangement,
    InvalidInput,
    NoProperOverlap,
    NotStrictlyConvexOrNotSmooth,
    ShapeMismatch,
)
from modules.intersection import (
    Arrangement,
    ContactKind,
    PointLocation,
    ShapeStatus,
    classify_point,
    induction_step,
    intersect,
    is_redundant,
    normal_margin,
    outside_gauss_measure,
    pair_boundary_points,
    verify_nonparallel_normals,
    verify_theorem,
)
from utils.geometry import Vec2

ROOT3_2 = math.sqrt(3.0) / 2


def disk_at(x, y=0.0):
    return SupportBody(SupportFunction.disk(), Vec2(x, y))


def sorted_points(points):
    return sorted((tuple(p) for p in points), key=lambda p: (round(p[1], 6), round(p[0], 6)))


class TestArrangement:
    """Test cases for Arrangement."""

    def test_needs_two_translates(self):
        """A single translate is not an arrangement."""
        with pytest.raises(InvalidArrangement):
            Arrangement(SupportFunction.disk(), ((0.0, 0.0),))

    def test_rejects_repeats(self):
        """Translations must be distinct."""
        with pytest.raises(InvalidArrangement):
            Arrangement(SupportFunction.disk(), ((0.0, 0.0), (0.0, 0.0)))

    def test_rejects_invalid_shape(self):
        """The shared body must be smooth and strictly convex."""
        with pytest.raises(NotStrictlyConvexOrNotSmooth):
            Arrangement(SupportFunction(1.0, ((0.0, 0.0), (0.4, 0.0))), ((0.0, 0.0), (0.1, 0.0)))

    def test_from_dict(self, data_dir):
        """Sample files load into arrangements."""
        with open(f"{data_dir}/arrangements/reuleaux.json") as f:
            arrangement = Arrangement.from_dict(json.load(f))
        assert arrangement.n == 3
        assert arrangement.translations[2] == pytest.approx((0.5, ROOT3_2))

    def test_from_dict_malformed(self):
        """Missing keys are reported as invalid input."""
        with pytest.raises(InvalidInput):
            Arrangement.from_dict({"translations": [[0, 0], [1, 0]]})

    def test_digest_is_stable(self, two_disks):
        """Equal arrangements share a digest."""
        copy = Arrangement.from_dict(two_disks.to_dict())
        assert copy.digest() == two_disks.digest()
        assert two_disks.with_translation((0.0, 0.5)).digest() != two_disks.digest()

    def test_from_bodies_mismatch(self, ellipse_shape):
        """Bodies of different shapes are not translates."""
        with pytest.raises(ShapeMismatch):
            Arrangement.from_bodies([disk_at(0.0), SupportBody(ellipse_shape)])


class TestPairBoundaryPoints:
    """Test cases for pair_boundary_points and the normal checks."""

    def test_two_points(self):
        """Unit disks at distance 1 cross at (0.5, ±√3/2)."""
        contact = pair_boundary_points(disk_at(0.0), disk_at(1.0))
        assert contact.kind is ContactKind.TWO_POINTS
        expected = [(0.5, -ROOT3_2), (0.5, ROOT3_2)]
        for found, wanted in zip(sorted_points(contact.points), expected):
            assert found == pytest.approx(wanted, abs=1e-9)

    def test_tangent(self):
        """Unit disks at distance 2 touch at (1, 0)."""
        contact = pair_boundary_points(disk_at(0.0), disk_at(2.0))
        assert contact.kind is ContactKind.TANGENT
        assert contact.points[0] == pytest.approx((1.0, 0.0), abs=1e-6)

    def test_disjoint(self):
        """Unit disks at distance 2.5 do not meet."""
        assert pair_boundary_points(disk_at(0.0), disk_at(2.5)).kind is ContactKind.DISJOINT

    def test_identical(self):
        """A body meets itself everywhere."""
        assert pair_boundary_points(disk_at(0.3), disk_at(0.3)).kind is ContactKind.IDENTICAL

    def test_shape_mismatch(self, ellipse_shape):
        """Non-translates are refused."""
        with pytest.raises(ShapeMismatch):
            pair_boundary_points(disk_at(0.0), SupportBody(ellipse_shape))

    def test_points_on_both_boundaries(self, ellipse_shape):
        """Crossings of two ovals lie on both boundaries."""
        b1 = SupportBody(ellipse_shape, Vec2(0.0, 0.0), 0.7)
        b2 = b1.translated((0.4, 0.3))
        contact = pair_boundary_points(b1, b2)
        assert contact.kind is ContactKind.TWO_POINTS
        for point in contact.points:
            assert abs(b1.contains(point).gap) < 1e-8
            assert abs(b2.contains(point).gap) < 1e-8

    def test_nonparallel_normals(self):
        """Normals at the lens vertices are radial."""
        b1, b2 = disk_at(0.0), disk_at(1.0)
        assert verify_nonparallel_normals(b1, b2, (0.5, ROOT3_2)) == pytest.approx((math.pi / 3, 2 * math.pi / 3), abs=1e-9)
        assert verify_nonparallel_normals(b1, b2, (0.5, -ROOT3_2)) == pytest.approx((5 * math.pi / 3, 4 * math.pi / 3), abs=1e-9)

    def test_normal_margin(self):
        """Distance of the normal difference from {0, π}."""
        assert normal_margin(0.0, math.pi / 3) == pytest.approx(math.pi / 3)
        assert normal_margin(0.0, math.pi) == pytest.approx(0.0)
        assert normal_margin(0.1, 2 * math.pi - 0.1) == pytest.approx(0.2)


class TestIntersect:
    """Test cases for intersect and is_redundant."""

    def test_lens(self, two_disks):
        """Two disks: two vertices, two edges of Gauss measure 2π/3."""
        shape = intersect(two_disks)
        assert shape.status is ShapeStatus.PROPER_BODY
        assert shape.vertex_count == 2
        for found, wanted in zip(sorted_points(shape.vertex_points), [(0.5, -ROOT3_2), (0.5, ROOT3_2)]):
            assert found == pytest.approx(wanted, abs=1e-9)
        assert [e.gauss_interval.measure for e in shape.edges] == pytest.approx([2 * math.pi / 3] * 2, abs=1e-9)
        assert shape.owned_edge_counts(2) == [1, 1]

    def test_reuleaux(self, reuleaux):
        """Three disks: vertices at the centers, edges of measure π/3."""
        shape = intersect(reuleaux)
        assert shape.vertex_count == 3
        for found, wanted in zip(sorted_points(shape.vertex_points), [(0.0, 0.0), (1.0, 0.0), (0.5, ROOT3_2)]):
            assert found == pytest.approx(wanted, abs=1e-9)
        assert [e.gauss_interval.measure for e in shape.edges] == pytest.approx([math.pi / 3] * 3, abs=1e-9)
        assert shape.gauss_partition_residual < 1e-7
        assert not shape.flags

    def test_vertices_counterclockwise(self, reuleaux):
        """Edge i runs from vertex i to vertex i + 1."""
        shape = intersect(reuleaux)
        for i, edge in enumerate(shape.edges):
            assert edge.start == shape.vertices[i].point
            assert edge.end == shape.vertices[(i + 1) % 3].point
            assert shape.vertices[(i + 1) % 3].pair[0] == edge.owner

    def test_redundant(self, redundant_disks):
        """The middle disk is redundant and only two vertices remain."""
        shape = intersect(redundant_disks)
        assert shape.vertex_count == 2
        assert shape.redundancy == (False, False, True)

    def test_tangent(self):
        """Tangent disks intersect in a single point."""
        shape = intersect(Arrangement(SupportFunction.disk(), ((0.0, 0.0), (2.0, 0.0))))
        assert shape.status is ShapeStatus.SINGLE_POINT
        assert shape.vertex_points[0] == pytest.approx((1.0, 0.0), abs=1e-6)

    def test_disjoint(self):
        """Far apart disks have an empty intersection."""
        shape = intersect(Arrangement(SupportFunction.disk(), ((0.0, 0.0), (3.0, 0.0))))
        assert shape.status is ShapeStatus.EMPTY
        assert shape.vertex_count == 0

    def test_ellipse_triple(self, data_dir):
        """Three ovals in general position give three vertices."""
        with open(f"{data_dir}/arrangements/ellipse_triple.json") as f:
            arrangement = Arrangement.from_dict(json.load(f))
        shape = intersect(arrangement)
        assert shape.vertex_count == 3
        assert shape.owned_edge_counts(3) == [1, 1, 1]
        assert shape.gauss_partition_residual < 1e-7

    def test_is_redundant(self, redundant_disks, reuleaux, two_disks):
        """Only the disk halfway between the others is redundant."""
        assert is_redundant(redundant_disks, 2)
        assert not is_redundant(redundant_disks, 0)
        assert not any(is_redundant(reuleaux, j) for j in range(3))
        assert not any(is_redundant(two_disks, j) for j in range(2))

    def test_is_redundant_when_others_touch(self):
        """Redundancy is undefined when the other translates meet in one point."""
        arrangement = Arrangement(SupportFunction.disk(), ((0.0, 0.0), (2.0, 0.0), (1.0, 0.5)))
        with pytest.raises(EmptyInterior):
            is_redundant(arrangement, 2)

    def test_is_redundant_when_others_are_disjoint(self):
        """Disjoint remaining translates have no intersection to compare."""
        arrangement = Arrangement(SupportFunction.disk(), ((0.0, 0.0), (3.0, 0.0), (1.5, 0.5)))
        with pytest.raises(EmptyIntersection):
            is_redundant(arrangement, 2)

    def test_boundary_polyline(self, two_disks):
        """The dense boundary starts at a vertex and stays on the lens."""
        shape = intersect(two_disks)
        polyline = shape.boundary_polyline(two_disks.bodies, per_edge=16)
        assert len(polyline) == 2 * 17
        for x, y in polyline:
            assert max(math.hypot(x, y), math.hypot(x - 1.0, y)) <= 1.0 + 1e-9


class TestOutsideGaussMeasure:
    """Test cases for outside_gauss_measure."""

    def test_unit_distance(self):
        """Disks at distance 1 leave 4π/3 of each boundary outside the other."""
        assert outside_gauss_measure(disk_at(0.0), disk_at(1.0)) == pytest.approx(4 * math.pi / 3, abs=1e-9)

    def test_near_tangency(self):
        """At distance 1.9 the inside arc is 2·arccos(0.95)."""
        expected = 2 * math.pi - 2 * math.acos(0.95)
        assert outside_gauss_measure(disk_at(0.0), disk_at(1.9)) == pytest.approx(expected, abs=1e-8)

    def test_exceeds_half_turn(self, ellipse_shape):
        """Overlapping translates always keep more than half their normals outside."""
        body = SupportBody(ellipse_shape)
        for offset in ((0.2, 0.1), (1.0, -0.3), (-0.5, 1.1)):
            assert outside_gauss_measure(body, body.translated(offset)) > math.pi

    def test_no_proper_overlap(self):
        """Tangent disks have no outside arc to measure."""
        with pytest.raises(NoProperOverlap):
            outside_gauss_measure(disk_at(0.0), disk_at(2.0))


class TestVerifyTheorem:
    """Test cases for verify_theorem."""

    def test_reuleaux(self, reuleaux):
        """Three translates, three singular points, every check passes."""
        report = verify_theorem(reuleaux)
        assert report.passed
        assert report.vertex_count == report.n == 3
        assert report.owned_edges == (1, 1, 1)
        assert report.min_normal_margin > 1e-6
        assert report.min_edge_margin > 1e-9
        assert report.min_outside_margin > 1e-9

    def test_lens(self, two_disks):
        """Base case: two translates, two singular points."""
        report = verify_theorem(two_disks)
        assert report.passed
        assert report.vertex_count == 2
        assert report.to_dict()["pass"] is True
        assert report.to_dict()["schema"] == 1

    def test_redundant_strict(self, redundant_disks):
        """Strict mode refuses a redundant translate and names it."""
        with pytest.raises(HypothesisViolated) as excinfo:
            verify_theorem(redundant_disks)
        assert excinfo.value.hypothesis == "redundant"
        assert "translate 3" in str(excinfo.value)

    def test_redundant_non_strict(self, redundant_disks):
        """Non-strict mode reports the failed count instead of raising."""
        report = verify_theorem(redundant_disks, strict=False)
        assert not report.passed
        assert report.vertex_count == 2
        assert report.redundant == (2,)
        assert report.owned_edges == (1, 1, 0)

    def test_empty_interior_strict(self):
        """Strict mode refuses a single-point intersection."""
        arrangement = Arrangement(SupportFunction.disk(), ((0.0, 0.0), (2.0, 0.0)))
        with pytest.raises(HypothesisViolated) as excinfo:
            verify_theorem(arrangement)
        assert excinfo.value.hypothesis == "empty-interior"


class TestClassifyPoint:
    """Test cases for classify_point."""

    def test_singular(self, two_disks):
        """A lens vertex has the normal arc from π/3 to 2π/3."""
        result = classify_point(two_disks, (0.5, ROOT3_2))
        assert result.location is PointLocation.SINGULAR
        assert result.normals.start == pytest.approx(math.pi / 3, abs=1e-9)
        assert result.normals.measure == pytest.approx(math.pi / 3, abs=1e-9)
        assert result.binding == (0, 1)

    def test_regular(self, two_disks):
        """The origin is on circle 2 only, with normal π."""
        result = classify_point(two_disks, (0.0, 0.0))
        assert result.location is PointLocation.REGULAR
        assert result.normals.start == pytest.approx(math.pi, abs=1e-9)
        assert result.normals.measure == 0.0

    def test_interior_and_exterior(self, two_disks):
        """Points strictly inside or outside have no normals."""
        assert classify_point(two_disks, (0.5, 0.0)).location is PointLocation.INTERIOR
        assert classify_point(two_disks, (3.0, 0.0)).location is PointLocation.EXTERIOR


class TestInductionStep:
    """Test cases for induction_step."""

    def test_lens_to_reuleaux(self, two_disks):
        """Adding the third disk of the Reuleaux triangle adds one vertex and one edge."""
        step = induction_step(two_disks, (0.5, ROOT3_2))
        assert step.before.vertex_count == 2
        assert step.after.vertex_count == 3
        assert step.growth == 1
        assert step.new_index == 2
        assert step.new_edges == 1
        assert step.newly_redundant == ()
        assert len(step.removed) == 1
        assert step.removed[0] == pytest.approx((0.5, -ROOT3_2), abs=1e-9)
        added = sorted_points(step.added)
        assert len(added) == 2
        assert added[0] == pytest.approx((0.0, 0.0), abs=1e-9)
        assert added[1] == pytest.approx((1.0, 0.0), abs=1e-9)

    def test_redundant_addition(self, two_disks):
        """A translate containing the lens owns no edge."""
        step = induction_step(two_disks, (0.5, 0.0))
        assert step.growth == 0
        assert step.new_edges == 0
        assert step.after.redundancy[2]
