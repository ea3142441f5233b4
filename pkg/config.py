import os
from dotenv import load_dotenv

load_dotenv()

class Config:
    """Application configuration settings."""

    # Numerical tolerances (BOUNDARY and TANGENCY are scaled by body diameter)
    TOLERANCES = {
        "BOUNDARY": float(os.getenv('TRANSLATE_SING_TOL', 1e-7)),  # test-only override
        "TANGENCY": float(os.getenv('TANGENCY_TOL', 1e-9)),
        "ANGLE": float(os.getenv('ANGLE_TOL', 1e-6)),
        "GAUSS_MARGIN": float(os.getenv('GAUSS_MARGIN_TOL', 1e-9)),
        "PARTITION": float(os.getenv('PARTITION_TOL', 1e-7)),
        "CORNER": float(os.getenv('CORNER_TOL', 1e-6)),
        "ARC_POINT": float(os.getenv('ARC_POINT_TOL', 1e-9))
    }

    # Search and sampling parameters
    SEARCH = {
        "CURVATURE_SAMPLES": int(os.getenv('CURVATURE_SAMPLES', 4096)),
        "COARSE_SCAN": int(os.getenv('COARSE_SCAN', 64)),
        "REFINE_XTOL": float(os.getenv('REFINE_XTOL', 1e-12)),
        "ROOT_XTOL": float(os.getenv('ROOT_XTOL', 1e-15)),
        "EDGE_SAMPLES": int(os.getenv('EDGE_SAMPLES', 64)),
        "CROSSING_SCAN": int(os.getenv('CROSSING_SCAN', 256))
    }

    # Polygonal oracle
    ORACLE = {
        "RESOLUTION": int(os.getenv('ORACLE_RESOLUTION', 4096)),
        "MATCH_TOLERANCE": float(os.getenv('ORACLE_MATCH_TOL', 1e-3))  # diameter-normalized
    }

    # Fuzz campaign defaults
    FUZZ = {
        "SEED": int(os.getenv('FUZZ_SEED', 1)),
        "TRIALS": int(os.getenv('FUZZ_TRIALS', 200)),
        "N_MIN": int(os.getenv('FUZZ_N_MIN', 2)),
        "N_MAX": int(os.getenv('FUZZ_N_MAX', 7)),
        "MAX_HARMONIC": int(os.getenv('FUZZ_MAX_HARMONIC', 4)),
        "COEFFICIENT_CAP": float(os.getenv('FUZZ_COEFFICIENT_CAP', 0.25)),
        "RHO_FLOOR": float(os.getenv('FUZZ_RHO_FLOOR', 0.2)),
        "MAX_RETRIES": int(os.getenv('FUZZ_MAX_RETRIES', 1000)),
        "WORKERS": int(os.getenv('FUZZ_WORKERS', 1))
    }

    # Output locations
    OUTPUT = {
        "DIR": os.getenv('OUTPUT_DIR', 'output'),
        "CACHE_DIR": os.getenv('CACHE_DIR', 'cache')
    }

    # Logging
    LOGGING = {
        "LEVEL": os.getenv('LOG_LEVEL', 'INFO'),
        "DIR": os.getenv('LOG_DIR', 'logs'),
        "TO_FILE": os.getenv('LOG_TO_FILE', 'true').lower() == 'true'
    }

    @classmethod
    def validate(cls):
        """Validate configuration parameters and return a list of problems."""
        problems = []

        for name, value in cls.TOLERANCES.items():
            if value <= 0:
                problems.append(f"TOLERANCES.{name} must be positive (got {value})")

        if cls.SEARCH["COARSE_SCAN"] < 8:
            problems.append("SEARCH.COARSE_SCAN must be at least 8")

        if cls.ORACLE["RESOLUTION"] < 8:
            problems.append("ORACLE.RESOLUTION must be at least 8")

        if cls.FUZZ["N_MIN"] < 2 or cls.FUZZ["N_MAX"] > 16 or cls.FUZZ["N_MIN"] > cls.FUZZ["N_MAX"]:
            problems.append("FUZZ.N_MIN..N_MAX must lie within [2, 16]")

        if cls.FUZZ["RHO_FLOOR"] <= 0:
            problems.append("FUZZ.RHO_FLOOR must be positive")

        return problems
