"""
Polygonal oracle: dense inscribed polygons, source-tagged convex clipping and
scan-based chords. Everything here is independent of the analytic pipeline
and is used to cross-check it.

Edge k of a TaggedPolygon runs from vertex k to vertex k+1 and carries
tag_codes[k], the index of the translate it came from (-1 for untagged).
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial.distance import directed_hausdorff

from config import Config
from modules.body import SupportBody, angle_grid
from utils.geometry import Vec2, unit
from utils.logger import get_logger

logger = get_logger(__name__)

NO_TAG = -1
_CHUNK = 512


@dataclass(frozen=True, eq=False)
class TaggedPolygon:
    vertices: np.ndarray
    tag_codes: np.ndarray

    @classmethod
    def from_points(cls, points, tag: Optional[int] = None) -> "TaggedPolygon":
        vertices = np.asarray(points, dtype=float).reshape(-1, 2)
        code = NO_TAG if tag is None else int(tag)
        return cls(vertices, np.full(len(vertices), code, dtype=int))

    @classmethod
    def empty(cls) -> "TaggedPolygon":
        return cls(np.zeros((0, 2)), np.zeros(0, dtype=int))

    def __len__(self):
        return len(self.vertices)

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) < 3

    @property
    def tags(self) -> List[Optional[int]]:
        return [None if code == NO_TAG else int(code) for code in self.tag_codes]

    @property
    def area(self) -> float:
        if self.is_empty:
            return 0.0
        x, y = self.vertices[:, 0], self.vertices[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))

    @property
    def perimeter(self) -> float:
        if len(self.vertices) < 2:
            return 0.0
        return float(np.linalg.norm(np.roll(self.vertices, -1, axis=0) - self.vertices, axis=1).sum())

    def is_convex(self, tol: float = 1e-12) -> bool:
        edges = np.roll(self.vertices, -1, axis=0) - self.vertices
        following = np.roll(edges, -1, axis=0)
        cross = edges[:, 0] * following[:, 1] - edges[:, 1] * following[:, 0]
        return bool(np.all(cross >= -tol))

    def to_dict(self):
        return {"vertices": self.vertices.tolist(), "edge_tags": self.tags}


def polygonize(body: SupportBody, m: int, tag: Optional[int] = None) -> TaggedPolygon:
    """Inscribed polygon through boundary_point(2πk/m), k = 0..m-1."""
    if m < 3:
        raise ValueError(f"A polygon needs at least 3 vertices, got {m}")
    return TaggedPolygon.from_points(body.boundary_points(angle_grid(m)), tag)


def _half_planes(clipper: TaggedPolygon) -> Tuple[np.ndarray, np.ndarray]:
    """Outward unit normals and offsets of the clipper's edges (inside: n·x ≤ c)."""
    start = clipper.vertices
    edges = np.roll(start, -1, axis=0) - start
    lengths = np.linalg.norm(edges, axis=1)
    keep = lengths > 0.0
    normals = np.column_stack((edges[keep, 1], -edges[keep, 0])) / lengths[keep, None]
    offsets = np.einsum("ij,ij->i", normals, start[keep])
    return normals, offsets


def _cutting_edges(vertices: np.ndarray, normals: np.ndarray, offsets: np.ndarray, eps: float) -> np.ndarray:
    """Indices of half-planes that exclude at least one subject vertex."""
    cutting = []
    for first in range(0, len(normals), _CHUNK):
        block = slice(first, first + _CHUNK)
        reach = (vertices @ normals[block].T).max(axis=0) - offsets[block]
        cutting.append(first + np.flatnonzero(reach > eps))
    return np.concatenate(cutting) if cutting else np.zeros(0, dtype=int)


def _drop_short_edges(vertices, tags, eps):
    lengths = np.linalg.norm(np.roll(vertices, -1, axis=0) - vertices, axis=1)
    keep = lengths > eps
    if keep.sum() < 3:
        return np.zeros((0, 2)), np.zeros(0, dtype=int)
    return vertices[keep], tags[keep]


def _crossing(a, b, da, db):
    s = min(max(da / (da - db), 0.0), 1.0)
    return a + (b - a) * s


def _clip_loop(vertices, tags, signed, inside, tag):
    """Edge-by-edge Sutherland-Hodgman step for irregular sign patterns."""
    out_points, out_tags = [], []
    m = len(vertices)
    for k in range(m):
        nxt = (k + 1) % m
        if inside[k]:
            out_points.append(vertices[k])
            out_tags.append(tags[k])
            if not inside[nxt]:
                out_points.append(_crossing(vertices[k], vertices[nxt], signed[k], signed[nxt]))
                out_tags.append(tag)
        elif inside[nxt]:
            out_points.append(_crossing(vertices[k], vertices[nxt], signed[k], signed[nxt]))
            out_tags.append(tags[k])
    return np.array(out_points).reshape(-1, 2), np.array(out_tags, dtype=int)


def _clip_half_plane(vertices, tags, normal, offset, tag, eps):
    signed = vertices @ normal - offset
    inside = signed <= eps
    if inside.all():
        return vertices, tags
    if not inside.any():
        return np.zeros((0, 2)), np.zeros(0, dtype=int)

    m = len(vertices)
    following = np.roll(inside, -1)
    exits = np.flatnonzero(inside & ~following)
    entries = np.flatnonzero(~inside & following)
    if len(exits) != 1 or len(entries) != 1:
        new_vertices, new_tags = _clip_loop(vertices, tags, signed, inside, tag)
        return _drop_short_edges(new_vertices, new_tags, eps)

    i, j = int(exits[0]), int(entries[0])
    i1, j1 = (i + 1) % m, (j + 1) % m
    exit_point = _crossing(vertices[i], vertices[i1], signed[i], signed[i1])
    entry_point = _crossing(vertices[j], vertices[j1], signed[j], signed[j1])
    run = np.arange(j1, j1 + (i - j1) % m + 1) % m

    new_vertices = np.vstack((entry_point, vertices[run], exit_point))
    new_tags = np.concatenate(([tags[j]], tags[run], [tag]))
    return _drop_short_edges(new_vertices, new_tags, eps)


def _clip_half_planes(vertices, tags, clipper: TaggedPolygon, code: int, eps: float):
    """Sutherland-Hodgman against every clipper edge that cuts the subject."""
    normals, offsets = _half_planes(clipper)
    for e in _cutting_edges(vertices, normals, offsets, eps):
        vertices, tags = _clip_half_plane(vertices, tags, normals[e], offsets[e], code, eps)
        if len(vertices) == 0:
            break
    return vertices, tags


def _interior_margin(vertices: np.ndarray, point: np.ndarray) -> float:
    """Smallest distance from point to the supporting lines of a counterclockwise polygon (negative outside)."""
    edges = np.roll(vertices, -1, axis=0) - vertices
    lengths = np.linalg.norm(edges, axis=1)
    rel = point - vertices
    cross = edges[:, 0] * rel[:, 1] - edges[:, 1] * rel[:, 0]
    keep = lengths > 0.0
    return float((cross[keep] / lengths[keep]).min())


def _star(vertices: np.ndarray, tags: np.ndarray, center: np.ndarray):
    """Vertices, tags and polar angles about center, rotated to start at the smallest angle.

    None unless the angles then increase strictly, which holds whenever center
    is interior to the convex polygon.
    """
    rel = vertices - center
    theta = np.arctan2(rel[:, 1], rel[:, 0])
    first = int(np.argmin(theta))
    theta = np.roll(theta, -first)
    if not np.all(np.diff(theta) > 0.0):
        return None
    return np.roll(vertices, -first, axis=0), np.roll(tags, -first), theta


def _ray_lengths(star, center: np.ndarray, phi: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Distance from center to the polygon along each direction phi, and the edge hit.

    A direction equal to a vertex angle hits the edge that starts there.
    """
    vertices, _, theta = star
    m = len(vertices)
    k = np.searchsorted(theta, phi, side="right") - 1
    k = np.where(k < 0, m - 1, k)
    start = vertices[k]
    edge = vertices[(k + 1) % m] - start
    rel = start - center
    u = np.column_stack((np.cos(phi), np.sin(phi)))
    r = (rel[:, 0] * edge[:, 1] - rel[:, 1] * edge[:, 0]) / (u[:, 0] * edge[:, 1] - u[:, 1] * edge[:, 0])
    return r, k


def _inside(points: np.ndarray, star, center: np.ndarray, eps: float) -> np.ndarray:
    rel = points - center
    r, _ = _ray_lengths(star, center, np.arctan2(rel[:, 1], rel[:, 0]))
    return np.hypot(rel[:, 0], rel[:, 1]) <= r + eps


def _clip_radial(vertices, tags, clipper: TaggedPolygon, code: int, eps: float):
    """One merge pass of both boundaries in polar order about a common interior point.

    Returns None when no such point is found (disjoint, touching or crossing
    without a vertex of either polygon inside the other); the caller then
    falls back to half-plane clipping.
    """
    own = _star(vertices, tags, vertices.mean(axis=0))
    other_vertices = clipper.vertices
    other = _star(other_vertices, np.full(len(other_vertices), code), other_vertices.mean(axis=0))
    if own is None or other is None:
        return None

    inner = np.vstack((
        own[0][_inside(own[0], other, other_vertices.mean(axis=0), eps)],
        other[0][_inside(other[0], own, vertices.mean(axis=0), eps)],
    ))
    if len(inner) < 3:
        return None
    center = inner.mean(axis=0)
    if min(_interior_margin(vertices, center), _interior_margin(other_vertices, center)) <= eps:
        return None

    a, b = _star(vertices, tags, center), _star(other_vertices, other[1], center)
    if a is None or b is None:
        return None

    phi = np.sort(np.concatenate((a[2], b[2])), kind="stable")
    r_a, edge_a = _ray_lengths(a, center, phi)
    r_b, edge_b = _ray_lengths(b, center, phi)
    d = r_a - r_b
    d_next = np.roll(d, -1)

    # each angular sector holds one edge of each polygon, so they cross at most once in it
    a_first = (d < -eps) | ((np.abs(d) <= eps) & (d_next <= eps))
    crosses = ((d < -eps) & (d_next > eps)) | ((d > eps) & (d_next < -eps))

    u = np.column_stack((np.cos(phi), np.sin(phi)))
    starts = center + np.where(a_first, r_a, r_b)[:, None] * u

    ma, mb = len(a[0]), len(b[0])
    k = np.flatnonzero(crosses)
    pa, ea = a[0][edge_a[k]], a[0][(edge_a[k] + 1) % ma] - a[0][edge_a[k]]
    pb, eb = b[0][edge_b[k]], b[0][(edge_b[k] + 1) % mb] - b[0][edge_b[k]]
    gap = pb - pa
    s = (gap[:, 0] * eb[:, 1] - gap[:, 1] * eb[:, 0]) / (ea[:, 0] * eb[:, 1] - ea[:, 1] * eb[:, 0])
    crossings = pa + s[:, None] * ea

    points = np.vstack((starts, crossings))
    owner_a = np.concatenate((a_first, ~a_first[k]))
    on_a = np.concatenate((edge_a, edge_a[k]))
    on_b = np.concatenate((edge_b, edge_b[k]))
    order = np.argsort(np.concatenate((2 * np.arange(len(phi)), 2 * k + 1)), kind="stable")
    points, owner_a, on_a, on_b = points[order], owner_a[order], on_a[order], on_b[order]

    # a vertex survives only where the supporting edge changes
    support = np.where(owner_a, on_a, ma + on_b)
    keep = support != np.roll(support, 1)
    if keep.sum() < 3:
        return None
    piece_tags = np.where(owner_a, a[1][on_a], code)
    return _drop_short_edges(points[keep], piece_tags[keep], eps)


def clip(subject: TaggedPolygon, clipper: TaggedPolygon, tag: Optional[int]) -> TaggedPolygon:
    """Convex intersection; subject edges keep their tags, clipper edges get tag."""
    if subject.is_empty or clipper.is_empty:
        return TaggedPolygon.empty()

    code = NO_TAG if tag is None else int(tag)
    scale = max(float(np.abs(subject.vertices).max()), float(np.abs(clipper.vertices).max()), 1.0)
    eps = 1e-12 * scale

    clipped = _clip_radial(subject.vertices, subject.tag_codes, clipper, code, eps)
    if clipped is None:
        clipped = _clip_half_planes(subject.vertices, subject.tag_codes, clipper, code, eps)
    vertices, tags = clipped
    if len(vertices) < 3:
        return TaggedPolygon.empty()
    return TaggedPolygon(vertices, tags)


def oracle_singularities(polygon: TaggedPolygon) -> List[Vec2]:
    """Vertices whose two incident edges carry different tags."""
    if polygon.is_empty:
        return []
    changes = np.flatnonzero(np.roll(polygon.tag_codes, 1) != polygon.tag_codes)
    return [Vec2(float(polygon.vertices[k, 0]), float(polygon.vertices[k, 1])) for k in changes]


def oracle_intersection(bodies, m: int = None) -> TaggedPolygon:
    """Tagged polygon of ∩ bodies: body 0 tagged 0 clipped by each body i with tag i.

    Accepts an Arrangement or a sequence of bodies with sample_boundary(m);
    for a SupportBody the sampled polygon is exactly polygonize.
    """
    m = m or Config.ORACLE["RESOLUTION"]
    bodies = getattr(bodies, "bodies", bodies)
    polygon = TaggedPolygon.from_points(bodies[0].sample_boundary(m), 0)
    for i, body in enumerate(bodies[1:], start=1):
        polygon = clip(polygon, TaggedPolygon.from_points(body.sample_boundary(m), i), i)
        if polygon.is_empty:
            logger.debug(f"Oracle intersection empty after translate {i}")
            break
    return polygon


def _monotone_chains(polygon: TaggedPolygon, w: float):
    """The two boundary chains between the extreme vertices along u(w).

    Returns offsets along u(w) and positions along u(w - π/2) of each chain,
    both chains sorted by increasing offset.
    """
    normal = np.array(unit(w))
    along = np.array(unit(w - 0.5 * math.pi))
    offsets = polygon.vertices @ normal
    positions = polygon.vertices @ along
    m = len(polygon)
    top, bottom = int(np.argmax(offsets)), int(np.argmin(offsets))

    # counterclockwise from the top the offset falls to the bottom, then rises back
    falling = np.arange(top, top + (bottom - top) % m + 1) % m
    rising = np.arange(bottom, bottom + (top - bottom) % m + 1) % m
    return (offsets[falling][::-1], positions[falling][::-1]), (offsets[rising], positions[rising])


def oracle_chord_length(polygon: TaggedPolygon, w: float, s: float) -> float:
    """Length of polygon ∩ {x : ⟨x, u(w)⟩ = s} (0 outside the polygon)."""
    if polygon.is_empty:
        return 0.0
    (s1, p1), (s2, p2) = _monotone_chains(polygon, w)
    if s < s1[0] or s > s1[-1]:
        return 0.0
    return float(abs(np.interp(s, s2, p2) - np.interp(s, s1, p1)))


def oracle_chords(polygon: TaggedPolygon, w: float, offsets: int) -> List[Tuple[float, float]]:
    """Chord lengths on `offsets` evenly spaced lines perpendicular to u(w)."""
    if polygon.is_empty:
        return []
    (s1, p1), (s2, p2) = _monotone_chains(polygon, w)
    levels = np.linspace(s1[0], s1[-1], offsets)
    lengths = np.abs(np.interp(levels, s2, p2) - np.interp(levels, s1, p1))
    return list(zip(levels.tolist(), lengths.tolist()))


def match_vertices(a: Sequence, b: Sequence) -> float:
    """Symmetric Hausdorff distance between two point sets."""
    if len(a) == 0 and len(b) == 0:
        return 0.0
    if len(a) == 0 or len(b) == 0:
        return math.inf
    u = np.asarray(a, dtype=float).reshape(-1, 2)
    v = np.asarray(b, dtype=float).reshape(-1, 2)
    return max(directed_hausdorff(u, v)[0], directed_hausdorff(v, u)[0])
