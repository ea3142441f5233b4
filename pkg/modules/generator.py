"""
Seeded random bodies and arrangements for fuzz campaigns.

Random streams are numpy PCG64 generators. Trial i of a campaign with seed S
uses the i-th child of SeedSequence(S).spawn(trials), so a trial replays on
its own without running the ones before it.
"""

import math
from dataclasses import asdict, dataclass
from typing import List, Tuple

import numpy as np

from config import Config
from modules.body import SupportBody, SupportFunction, angle_grid
from modules.errors import GenerationExhausted, InvalidArrangement, InvalidInput
from modules.intersection import Arrangement, ShapeStatus, intersect
from utils.geometry import TWO_PI, Vec2
from utils.logger import get_logger

logger = get_logger(__name__)

# Safety factor on the certified rescaling, so rounding never lands below the floor
RESCALE_MARGIN = 1.0 - 1e-9
# Translation radii as fractions of the minimum width; the wide one stays below half the shortest maximal chord
SPREAD_RADIUS = 0.3
WIDE_RADIUS = 0.48
# Share of arrangements drawn with the wide scheme
WIDE_SHARE = 0.5
# Scattered points are rarely in convex position beyond this many translates
WIDE_N_MAX = 7


@dataclass(frozen=True)
class FuzzConfig:
    """Settings of one fuzz campaign, validated on construction."""

    seed: int = 1
    trials: int = 200
    n_min: int = 2
    n_max: int = 7
    max_harmonic: int = 4
    coefficient_cap: float = 0.25
    rho_floor: float = 0.2
    a0_min: float = 0.75
    a0_max: float = 1.25
    max_retries: int = 1000

    def __post_init__(self):
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidInput(f"Seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.trials < 0:
            raise InvalidInput(f"Trial count must be non-negative, got {self.trials}")
        if not 2 <= self.n_min <= self.n_max <= 16:
            raise InvalidInput(f"n range [{self.n_min}, {self.n_max}] must lie within [2, 16]")
        if self.max_harmonic < 0 or self.coefficient_cap < 0:
            raise InvalidInput("Harmonic budget must be non-negative")
        if not 0 < self.rho_floor < self.a0_min <= self.a0_max:
            raise InvalidInput("rho_floor must be positive and below the smallest a0")
        if self.max_retries < 1:
            raise InvalidInput("max_retries must be at least 1")

    @classmethod
    def from_config(cls, config=Config, **overrides) -> "FuzzConfig":
        """Build from the FUZZ section of a configuration.

        Args:
            config: Configuration object
            overrides: Field values that replace the configured ones; None is ignored
        """
        fuzz = config.FUZZ
        values = {
            "seed": fuzz["SEED"],
            "trials": fuzz["TRIALS"],
            "n_min": fuzz["N_MIN"],
            "n_max": fuzz["N_MAX"],
            "max_harmonic": fuzz["MAX_HARMONIC"],
            "coefficient_cap": fuzz["COEFFICIENT_CAP"],
            "rho_floor": fuzz["RHO_FLOOR"],
            "max_retries": fuzz["MAX_RETRIES"],
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def to_dict(self):
        return asdict(self)


def trial_seeds(cfg: FuzzConfig) -> List[np.random.SeedSequence]:
    """One child SeedSequence per trial, independent of the trial count."""
    return np.random.SeedSequence(cfg.seed).spawn(cfg.trials)


def trial_rng(seed: np.random.SeedSequence) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _certified_rescale(shape: SupportFunction, floor: float) -> float:
    """Largest factor λ ≤ 1 for which a0 + λ q(θ) keeps a certified ρ_min ≥ floor.

    ρ = a0 + q with q linear in the harmonics, so the certified bound after
    scaling is a0 - λ (Lipschitz slack - min q).
    """
    samples = Config.SEARCH["CURVATURE_SAMPLES"]
    h, _, d2h = shape.evaluate_many(angle_grid(samples))
    q_min = float((h + d2h).min()) - shape.a0
    deficit = shape.curvature_lipschitz * math.pi / samples - q_min
    if deficit <= 0.0:
        return 1.0
    return min(1.0, (shape.a0 - floor) / deficit) * RESCALE_MARGIN


def random_body(rng: np.random.Generator, cfg: FuzzConfig) -> SupportBody:
    """A body with certified ρ_min ≥ rho_floor.

    Harmonics k = 2..K are uniform in ±coefficient_cap; k = 1 is left at zero
    since it only translates the body. The harmonics are then scaled down
    until the curvature certificate clears the floor.
    """
    a0 = float(rng.uniform(cfg.a0_min, cfg.a0_max))
    if cfg.max_harmonic < 2:
        return SupportBody(SupportFunction(a0))

    coefficients = rng.uniform(-cfg.coefficient_cap, cfg.coefficient_cap, size=(cfg.max_harmonic - 1, 2))
    shape = SupportFunction(a0, ((0.0, 0.0),) + tuple((float(a), float(b)) for a, b in coefficients))
    scale = _certified_rescale(shape, cfg.rho_floor)
    if scale < 1.0:
        shape = shape.scaled_harmonics(scale)

    rho_min = shape.validate()
    logger.debug(f"Random body a0={a0:.4f}, harmonic scale {scale:.4f}, certified rho_min {rho_min:.4f}")
    return SupportBody(shape)


def _spread_translations(rng: np.random.Generator, n: int, radius: float) -> Tuple[Vec2, ...]:
    """n translations at jittered, evenly spread angles inside a disk of the given radius."""
    offset = rng.uniform(0.0, TWO_PI)
    jitter = rng.uniform(-0.25, 0.25, size=n) * TWO_PI / n
    angles = offset + TWO_PI * np.arange(n) / n + jitter
    radii = radius * rng.uniform(0.7, 1.0, size=n)
    return tuple(Vec2(float(r * math.cos(a)), float(r * math.sin(a))) for r, a in zip(radii, angles))


def _wide_translations(rng: np.random.Generator, n: int, radius: float) -> Tuple[Vec2, ...]:
    """n translations uniform over the outer half of a disk of the given radius."""
    angles = rng.uniform(0.0, TWO_PI, size=n)
    radii = radius * np.sqrt(rng.uniform(0.25, 1.0, size=n))
    return tuple(Vec2(float(r * math.cos(a)), float(r * math.sin(a))) for r, a in zip(radii, angles))


def random_arrangement(rng: np.random.Generator, cfg: FuzzConfig) -> Arrangement:
    """A random arrangement satisfying the hypotheses of the singularity count.

    Each arrangement is drawn with one of two schemes. Spread draws put the
    translations near a regular polygon within 0.3 times the minimum width of
    the origin, so the intersection is fat. Wide draws scatter them up to
    0.48 times the minimum width, below half of every maximal chord, which
    gives thin intersections and nearly parallel normals at the vertices.
    Wide draws are only used up to WIDE_N_MAX translates.

    n is drawn once; translations whose intersection is not a proper body,
    has a redundant translate or raises a degeneracy flag are redrawn.

    Raises:
        GenerationExhausted: after cfg.max_retries rejected draws.
    """
    body = random_body(rng, cfg)
    n = int(rng.integers(cfg.n_min, cfg.n_max + 1))
    wide = n <= WIDE_N_MAX and bool(rng.random() < WIDE_SHARE)
    draw = _wide_translations if wide else _spread_translations
    radius = (WIDE_RADIUS if wide else SPREAD_RADIUS) * body.shape.min_width

    for attempt in range(cfg.max_retries):
        try:
            arrangement = Arrangement(body.shape, draw(rng, n, radius))
        except InvalidArrangement:
            continue

        shape = intersect(arrangement)
        if shape.status is ShapeStatus.PROPER_BODY and not any(shape.redundancy) and not shape.flags:
            if attempt:
                logger.debug(f"Accepted {'wide' if wide else 'spread'} arrangement of {n} after {attempt} rejections")
            return arrangement
        logger.debug(f"Rejected draw: {shape.status.value}, redundancy {shape.redundancy}, flags {shape.flags}")

    raise GenerationExhausted(f"No admissible arrangement of {n} translates after {cfg.max_retries} draws")
