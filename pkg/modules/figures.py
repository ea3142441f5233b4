"""
SVG figures of arrangements, chord profiles and gallery scenarios.

Output is deterministic: Agg backend, a fixed SVG hash salt and no date
metadata, so the same geometry always produces the same bytes.
"""

import os
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from modules.chords import ChordProfile, chord_at
from modules.intersection import Arrangement, IntersectionShape, ShapeStatus, intersect
from modules.oracle import oracle_intersection
from utils.logger import get_logger

logger = get_logger(__name__)

plt.rcParams["svg.hashsalt"] = "translate-singularities"
plt.rcParams["svg.fonttype"] = "none"

OUTLINE_WIDTH = 0.75  # 1px at 72 dpi
FILL_ALPHA = 0.3
POINT_SIZE = 9.0  # scatter area in pt², about a 4px disk
OUTLINE_SAMPLES = 512
COLORS = plt.rcParams["axes.prop_cycle"].by_key()["color"]


def _closed(points: np.ndarray) -> np.ndarray:
    return np.vstack((points, points[:1])) if len(points) else points


def _frame(ax, outlines: Sequence[np.ndarray], margin: float = 0.08):
    """Fixed equal-aspect limits around all outlines."""
    stacked = np.vstack([o for o in outlines if len(o)])
    low, high = stacked.min(axis=0), stacked.max(axis=0)
    pad = margin * float((high - low).max())
    ax.set_xlim(low[0] - pad, high[0] + pad)
    ax.set_ylim(low[1] - pad, high[1] + pad)
    ax.set_aspect("equal")
    ax.set_xticks([])
    ax.set_yticks([])


def _draw_outlines(ax, outlines: Sequence[np.ndarray]):
    for i, outline in enumerate(outlines):
        closed = _closed(outline)
        ax.plot(closed[:, 0], closed[:, 1], lw=OUTLINE_WIDTH, color=COLORS[i % len(COLORS)], gid=f"body-{i}")


def _draw_region(ax, region: np.ndarray):
    if len(region) >= 3:
        ax.fill(region[:, 0], region[:, 1], alpha=FILL_ALPHA, color="0.4", lw=0, gid="intersection")


def _draw_points(ax, points):
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(points):
        marks = ax.scatter(points[:, 0], points[:, 1], s=POINT_SIZE, color="crimson", zorder=5)
        marks.set_gid("singular-points")


def _save(fig, path: str) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    logger.info(f"Wrote {path}")
    return path


def plot_arrangement(arr: Arrangement, path: str, shape: Optional[IntersectionShape] = None, title: str = None) -> str:
    """Translates, the intersection and its singular vertices.

    Args:
        arr: The arrangement to draw.
        path: Destination .svg file.
        shape: A precomputed intersection; computed when omitted.
        title: Optional axes title.

    Returns:
        str: The path written.
    """
    shape = shape or intersect(arr)
    bodies = arr.bodies
    outlines = [b.sample_boundary(OUTLINE_SAMPLES) for b in bodies]

    fig, ax = plt.subplots(figsize=(5, 5))
    _draw_outlines(ax, outlines)
    if shape.status is ShapeStatus.PROPER_BODY:
        _draw_region(ax, shape.boundary_polyline(bodies))
    _draw_points(ax, [p.to_list() for p in shape.vertex_points])
    _frame(ax, outlines)
    ax.set_title(title or f"n = {arr.n}, {shape.vertex_count} singular points", fontsize=9)
    return _save(fig, path)


def plot_chord_profile(profile: ChordProfile, samples, path: str) -> str:
    """Body with its longest chord next to the chord length profile."""
    body = profile.body
    outline = body.sample_boundary(OUTLINE_SAMPLES)
    longest = chord_at(profile, profile.t_max)

    fig, (left, right) = plt.subplots(1, 2, figsize=(9, 4.5))
    _draw_outlines(left, [outline])
    left.plot(
        [profile.top.x, profile.bottom.x], [profile.top.y, profile.bottom.y],
        lw=OUTLINE_WIDTH, ls="--", color="0.5", gid="axis",
    )
    left.plot([longest.p.x, longest.q.x], [longest.p.y, longest.q.y], lw=1.5, color="crimson", gid="longest-chord")
    _frame(left, [outline])
    left.set_title(f"w = {profile.w:.4f}", fontsize=9)

    samples = np.asarray(samples, dtype=float).reshape(-1, 2)
    right.plot(samples[:, 0], samples[:, 1], lw=1.0, color=COLORS[0], gid="profile")
    right.axvline(profile.t_max, lw=OUTLINE_WIDTH, ls=":", color="crimson")
    right.set_xlabel("t")
    right.set_ylabel("chord length")
    right.set_title(f"max {profile.eta:.6f} at t = {profile.t_max:.6f}", fontsize=9)
    return _save(fig, path)


def plot_scenario(case, result, path: str, resolution: int = 1024) -> str:
    """Gallery scenario: bodies, oracle intersection and the counted singular points."""
    outlines = [b.sample_boundary(OUTLINE_SAMPLES) for b in case.bodies]
    region = oracle_intersection(case.bodies, resolution)

    fig, ax = plt.subplots(figsize=(5, 5))
    _draw_outlines(ax, outlines)
    _draw_region(ax, region.vertices)
    _draw_points(ax, [p.to_list() for p in result.points])
    _frame(ax, outlines)
    ax.set_title(f"{case.name}: {result.actual} (expected {result.expected})", fontsize=9)
    return _save(fig, path)
