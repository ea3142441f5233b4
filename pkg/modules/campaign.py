"""
Fuzz campaigns: many random arrangements, each checked analytically and
against the polygonal oracle.
"""

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np
import pandas as pd

from config import Config
from modules.errors import GeometryError
from modules.generator import FuzzConfig, random_arrangement, trial_rng, trial_seeds
from modules.intersection import verify_theorem
from modules.oracle import match_vertices, oracle_intersection, oracle_singularities
from utils.logger import get_logger

logger = get_logger(__name__)

REPORT_SCHEMA = 1


@dataclass(frozen=True)
class TrialRecord:
    """Outcome of one fuzz trial; a failed trial also keeps its arrangement for replay."""

    index: int
    digest: Optional[str] = None
    n: Optional[int] = None
    vertex_count: Optional[int] = None
    min_normal_margin: Optional[float] = None
    min_edge_margin: Optional[float] = None
    min_outside_margin: Optional[float] = None
    partition_residual: Optional[float] = None
    oracle_count: Optional[int] = None
    oracle_distance: Optional[float] = None
    flags: Tuple[str, ...] = ()
    passed: bool = False
    error: Optional[str] = None
    arrangement: Optional[Dict] = field(default=None, compare=False)

    def to_dict(self):
        record = {
            "index": self.index,
            "digest": self.digest,
            "n": self.n,
            "vertex_count": self.vertex_count,
            "min_normal_margin": self.min_normal_margin,
            "min_edge_margin": self.min_edge_margin,
            "min_outside_margin": self.min_outside_margin,
            "partition_residual": self.partition_residual,
            "oracle_count": self.oracle_count,
            "oracle_distance": _finite_or_none(self.oracle_distance),
            "flags": list(self.flags),
            "pass": self.passed,
        }
        if self.error is not None:
            record["error"] = self.error
        if not self.passed and self.arrangement is not None:
            record["arrangement"] = self.arrangement
        return record


def _finite_or_none(value):
    if value is None or not math.isfinite(value):
        return None
    return value


def run_trial(
    cfg: FuzzConfig,
    index: int,
    seed: np.random.SeedSequence,
    resolution: int,
    match_tolerance: float,
) -> TrialRecord:
    """Generate, verify and oracle-check trial `index` of a campaign.

    Module-level so it can be shipped to worker processes.
    """
    rng = trial_rng(seed)
    arrangement = None
    try:
        arrangement = random_arrangement(rng, cfg)
        report = verify_theorem(arrangement, strict=True)

        polygon = oracle_intersection(arrangement, resolution)
        oracle_points = oracle_singularities(polygon)
        distance = match_vertices(report.vertices, oracle_points)

        flags = list(report.flags)
        if len(oracle_points) != report.vertex_count:
            flags.append(f"oracle-count-mismatch {len(oracle_points)} != {report.vertex_count}")
        elif distance > match_tolerance * arrangement.diameter:
            flags.append(f"oracle-distance {distance:.3e}")

        passed = report.passed and len(flags) == len(report.flags)
        if not passed:
            logger.warning(f"Trial {index} failed: n={arrangement.n}, vertices={report.vertex_count}, flags={flags}")

        return TrialRecord(
            index=index,
            digest=arrangement.digest(),
            n=arrangement.n,
            vertex_count=report.vertex_count,
            min_normal_margin=report.min_normal_margin,
            min_edge_margin=report.min_edge_margin,
            min_outside_margin=report.min_outside_margin,
            partition_residual=report.partition_residual,
            oracle_count=len(oracle_points),
            oracle_distance=distance,
            flags=tuple(flags),
            passed=passed,
            arrangement=arrangement.to_dict(),
        )
    except GeometryError as e:
        logger.error(f"Trial {index} raised {type(e).__name__}: {str(e)}")
        return TrialRecord(
            index=index,
            digest=arrangement.digest() if arrangement else None,
            n=arrangement.n if arrangement else None,
            error=f"{type(e).__name__}: {e}",
            arrangement=arrangement.to_dict() if arrangement else None,
        )


@dataclass(frozen=True)
class CampaignReport:
    """All trial records of one campaign and the summary built from them."""

    config: FuzzConfig
    resolution: int
    records: Tuple[TrialRecord, ...]

    def frame(self) -> pd.DataFrame:
        """One row per trial, the input of the summary and the by-n breakdown."""
        columns = [
            "index", "n", "vertex_count", "min_normal_margin", "min_edge_margin",
            "min_outside_margin", "partition_residual", "oracle_distance", "passed",
        ]
        rows = [{name: getattr(r, name) for name in columns} for r in self.records]
        return pd.DataFrame(rows, columns=columns)

    @property
    def passes(self) -> int:
        return sum(1 for r in self.records if r.passed)

    @property
    def failures(self) -> int:
        return len(self.records) - self.passes

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def summary(self) -> Dict:
        """Pass counts and worst margins over all trials."""
        df = self.frame()

        def column_min(name):
            values = pd.to_numeric(df[name], errors="coerce").dropna()
            return float(values.min()) if len(values) else None

        def column_max(name):
            values = pd.to_numeric(df[name], errors="coerce").replace([np.inf, -np.inf], np.nan).dropna()
            return float(values.max()) if len(values) else None

        by_n = df.groupby("n")["passed"].agg(["count", "sum"]) if len(df) else pd.DataFrame()
        return {
            "trials": len(self.records),
            "passes": self.passes,
            "failures": self.failures,
            "min_normal_margin": column_min("min_normal_margin"),
            "min_edge_margin": column_min("min_edge_margin"),
            "min_outside_margin": column_min("min_outside_margin"),
            "max_partition_residual": column_max("partition_residual"),
            "max_oracle_distance": column_max("oracle_distance"),
            "by_n": {str(int(n)): {"trials": int(row["count"]), "passes": int(row["sum"])} for n, row in by_n.iterrows()},
        }

    def to_dict(self):
        return {
            "schema": REPORT_SCHEMA,
            "config": self.config.to_dict(),
            "oracle_resolution": self.resolution,
            "summary": self.summary(),
            "trials": [r.to_dict() for r in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


class FuzzCampaign:
    """Runs a seeded campaign of random arrangements."""

    def __init__(self, config=Config, fuzz_config: FuzzConfig = None, workers: int = None, oracle_resolution: int = None):
        self.config = config
        self.fuzz_config = fuzz_config or FuzzConfig.from_config(config)
        self.workers = max(1, workers or config.FUZZ["WORKERS"])
        self.resolution = oracle_resolution or config.ORACLE["RESOLUTION"]
        self.match_tolerance = config.ORACLE["MATCH_TOLERANCE"]

    def run(self) -> CampaignReport:
        """Run every trial of the campaign.

        Trials run in index order with one worker and on a process pool
        otherwise; records are always returned in index order.

        Returns:
            CampaignReport: one record per trial
        """
        cfg = self.fuzz_config
        seeds = trial_seeds(cfg)
        logger.info(f"Starting campaign: seed={cfg.seed}, trials={cfg.trials}, n in [{cfg.n_min}, {cfg.n_max}], workers={self.workers}")
        started = time.monotonic()

        if self.workers > 1 and cfg.trials > 1:
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                futures = [
                    pool.submit(run_trial, cfg, index, seed, self.resolution, self.match_tolerance)
                    for index, seed in enumerate(seeds)
                ]
                records = [future.result() for future in futures]
        else:
            records = [
                run_trial(cfg, index, seed, self.resolution, self.match_tolerance)
                for index, seed in enumerate(seeds)
            ]

        report = CampaignReport(cfg, self.resolution, tuple(records))
        logger.info(
            f"Campaign finished in {time.monotonic() - started:.1f}s: "
            f"{report.passes}/{len(records)} passed"
        )
        return report

    def replay(self, index: int) -> TrialRecord:
        """Re-run a single trial of this campaign."""
        seeds = trial_seeds(self.fuzz_config)
        if not 0 <= index < len(seeds):
            raise IndexError(f"Trial {index} is outside the campaign of {len(seeds)} trials")
        return run_trial(self.fuzz_config, index, seeds[index], self.resolution, self.match_tolerance)
