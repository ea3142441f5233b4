"""
Exception hierarchy for the geometry kernel.

Kernel code raises these; the command line is the only place that turns them
into exit codes.
"""


class GeometryError(Exception):
    """Base class for every error raised by the kernel."""


class InvalidInput(GeometryError):
    """A JSON document or argument does not describe a valid object."""


class NotStrictlyConvexOrNotSmooth(GeometryError):
    """The certified radius of curvature is not positive."""


class OriginNotInterior(GeometryError):
    """The support function is not positive everywhere."""


class NotOnBoundary(GeometryError):
    """A point expected on a body's boundary lies outside the tolerance band."""


class LengthOutOfRange(GeometryError):
    """Requested chord length outside the open interval (0, η)."""


class ShapeMismatch(GeometryError):
    """Two bodies that should be translates differ in shape or rotation."""


class ParallelNormals(GeometryError):
    """Normals at a boundary crossing are equal or opposite."""


class EmptyIntersection(GeometryError):
    """The bodies have no common point."""


class EmptyInterior(GeometryError):
    """The intersection has no interior point."""


class NoProperOverlap(GeometryError):
    """Two translates do not cross in exactly two points."""


class InvalidArrangement(GeometryError):
    """Fewer than two translates, or a repeated translation."""


class HypothesisViolated(GeometryError):
    """A hypothesis of the singularity-count theorem does not hold."""

    def __init__(self, hypothesis, detail=""):
        self.hypothesis = hypothesis
        self.detail = detail
        super().__init__(f"{hypothesis}: {detail}" if detail else hypothesis)


class UnknownScenario(GeometryError, KeyError):
    """No gallery scenario with that name."""


class GenerationExhausted(GeometryError):
    """Random generation gave up after the configured number of rejections."""
