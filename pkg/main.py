# main.py
import argparse
import json
import os
import sys
from typing import List, Optional

from tabulate import tabulate

from config import Config
from modules.body import SupportBody
from modules.campaign import FuzzCampaign
from modules.chords import chord_profile_samples, max_chord
from modules.errors import (
    GeometryError,
    HypothesisViolated,
    InvalidArrangement,
    InvalidInput,
    NotStrictlyConvexOrNotSmooth,
    OriginNotInterior,
    UnknownScenario,
)
from modules.figures import plot_arrangement, plot_chord_profile, plot_scenario
from modules.gallery import Gallery, scenario
from modules.generator import FuzzConfig
from modules.intersection import Arrangement, intersect, verify_theorem
from utils.logger import get_logger

# Set up logging
logger = get_logger("main")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# Errors that mean the input itself is unusable, not that a check failed
INPUT_ERRORS = (InvalidInput, InvalidArrangement, NotStrictlyConvexOrNotSmooth, OriginNotInterior, UnknownScenario)


def _load_json(path: str):
    try:
        with open(path, "r") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidInput(f"{path} is not valid JSON: {e}") from e


def _write_json(data, path: Optional[str]) -> None:
    text = json.dumps(data, sort_keys=True, indent=2)
    if path is None:
        print(text)
        return
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w") as f:
        f.write(text + "\n")
    logger.info(f"Wrote {path}")


def _fmt(value, digits: int = 3) -> str:
    return "-" if value is None else f"{value:.{digits}e}"


class SingularityToolkit:
    """Command-line application for checking singularity counts of translate intersections."""

    def __init__(self, config=Config):
        """Initialize the application."""
        self.config = config
        self.output_dir = config.OUTPUT["DIR"]

        # Validate configuration
        problems = config.validate()
        for problem in problems:
            logger.warning(f"Configuration problem: {problem}")
        if problems:
            logger.warning("Results may not be reliable")

    def _output_path(self, name: str) -> str:
        return os.path.join(self.output_dir, name)

    def verify(self, path: str, strict: bool = True, out: Optional[str] = None) -> int:
        """Check one arrangement file. Exit 0 iff every check passes."""
        arrangement = Arrangement.from_dict(_load_json(path))
        logger.info(f"Verifying {path}: n={arrangement.n}, digest {arrangement.digest()}")

        report = verify_theorem(arrangement, strict=strict)
        _write_json(report.to_dict(), out)

        if report.passed:
            logger.info(f"{path}: {report.vertex_count} singular points for n={report.n}, all checks passed")
            return EXIT_OK
        logger.warning(f"{path}: checks failed ({report.vertex_count} singular points for n={report.n}, flags {list(report.flags)})")
        return EXIT_FAILED

    def fuzz(self, seed: int = None, trials: int = None, n_min: int = None, n_max: int = None,
             workers: int = None, resolution: int = None, out: Optional[str] = None) -> int:
        """Run a seeded campaign and write its JSON report."""
        fuzz_config = FuzzConfig.from_config(self.config, seed=seed, trials=trials, n_min=n_min, n_max=n_max)
        campaign = FuzzCampaign(self.config, fuzz_config, workers=workers, oracle_resolution=resolution)
        report = campaign.run()

        out = out or self._output_path(f"fuzz-seed{fuzz_config.seed}-trials{fuzz_config.trials}.json")
        directory = os.path.dirname(out)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(out, "w") as f:
            f.write(report.to_json() + "\n")
        logger.info(f"Wrote {out}")

        summary = report.summary()
        rows = [
            ["trials", summary["trials"]],
            ["passes", summary["passes"]],
            ["failures", summary["failures"]],
            ["min normal margin", _fmt(summary["min_normal_margin"])],
            ["min edge margin", _fmt(summary["min_edge_margin"])],
            ["min outside margin", _fmt(summary["min_outside_margin"])],
            ["max partition residual", _fmt(summary["max_partition_residual"])],
            ["max oracle distance", _fmt(summary["max_oracle_distance"])],
        ]
        print(tabulate(rows, tablefmt="simple"))

        for record in report.records:
            if not record.passed:
                print(f"trial {record.index} failed: {record.error or ', '.join(record.flags) or 'checks failed'}")
        return EXIT_OK if report.passed else EXIT_FAILED

    def gallery(self, out: Optional[str] = None) -> int:
        """Run every scenario, write one SVG each and a JSON summary."""
        out = out or self._output_path("gallery")
        gallery = Gallery(self.config)
        results = gallery.run_all()

        for result in results:
            plot_scenario(scenario(result.name), result, os.path.join(out, f"{result.name}.svg"))

        _write_json({"schema": 1, "scenarios": [r.to_dict() for r in results]}, os.path.join(out, "summary.json"))

        rows = [
            [r.name, r.violated.value, r.expected, r.actual, "-" if r.oracle is None else r.oracle, "pass" if r.passed else "FAIL"]
            for r in results
        ]
        print(tabulate(rows, headers=["scenario", "violated", "expected", "actual", "oracle", "result"]))
        return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED

    def chords(self, path: str, w: float, samples: int = 1001, out: Optional[str] = None) -> int:
        """Chord profile of one body in direction w, as JSON and SVG."""
        body = SupportBody.from_dict(_load_json(path))
        body.validate()

        profile = max_chord(body, w)
        points = chord_profile_samples(profile, samples)

        out = out or self._output_path("chords")
        stem = os.path.splitext(os.path.basename(path))[0]
        data = {"schema": 1, "profile": profile.to_dict(), "samples": [list(p) for p in points]}
        _write_json(data, os.path.join(out, f"{stem}-chords.json"))
        plot_chord_profile(profile, points, os.path.join(out, f"{stem}-chords.svg"))

        print(tabulate([[profile.w, profile.t_max, profile.eta]], headers=["w", "t_max", "eta"], floatfmt=".9f"))
        return EXIT_OK

    def plot(self, path: str, out: Optional[str] = None) -> int:
        """SVG of an arrangement with its singular points marked."""
        arrangement = Arrangement.from_dict(_load_json(path))
        out = out or self._output_path(os.path.splitext(os.path.basename(path))[0] + ".svg")
        plot_arrangement(arrangement, out, intersect(arrangement))
        return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="translate-singularities",
        description="Singular points of intersections of translates of a planar convex body",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="check the singularity count for one arrangement")
    verify.add_argument("arrangement", help="arrangement JSON file")
    verify.add_argument("--non-strict", action="store_true", help="report instead of refusing violated hypotheses")
    verify.add_argument("--out", help="write the report here instead of stdout")

    fuzz = commands.add_parser("fuzz", help="run a seeded campaign of random arrangements")
    fuzz.add_argument("--seed", type=int)
    fuzz.add_argument("--trials", type=int)
    fuzz.add_argument("--n-min", type=int)
    fuzz.add_argument("--n-max", type=int)
    fuzz.add_argument("--workers", type=int)
    fuzz.add_argument("--resolution", type=int, help="oracle polygon resolution")
    fuzz.add_argument("--out", help="report JSON path")

    gallery = commands.add_parser("gallery", help="run the counterexample scenarios")
    gallery.add_argument("--out", help="output directory")

    chords = commands.add_parser("chords", help="chord profile of a body")
    chords.add_argument("body", help="body JSON file")
    chords.add_argument("--w", type=float, required=True, help="normal direction in radians")
    chords.add_argument("--samples", type=int, default=1001)
    chords.add_argument("--out", help="output directory")

    plot = commands.add_parser("plot", help="draw an arrangement")
    plot.add_argument("arrangement", help="arrangement JSON file")
    plot.add_argument("--out", help="SVG path")
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, run one subcommand and return the exit code."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    app = SingularityToolkit()
    try:
        if args.command == "verify":
            return app.verify(args.arrangement, strict=not args.non_strict, out=args.out)
        if args.command == "fuzz":
            return app.fuzz(args.seed, args.trials, args.n_min, args.n_max, args.workers, args.resolution, args.out)
        if args.command == "gallery":
            return app.gallery(args.out)
        if args.command == "chords":
            return app.chords(args.body, args.w, args.samples, args.out)
        return app.plot(args.arrangement, args.out)
    except HypothesisViolated as e:
        logger.error(f"Hypothesis violated: {str(e)}")
        return EXIT_FAILED
    except (OSError, ValueError) + INPUT_ERRORS as e:
        logger.error(f"Invalid input: {str(e)}")
        return EXIT_USAGE
    except GeometryError as e:
        logger.error(f"Geometry error: {str(e)}")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(run())
