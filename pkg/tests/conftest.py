"""
Pytest configuration file for the translate-singularities project.
"""

import math
import os
import sys
import tempfile
from unittest.mock import MagicMock

import numpy as np
import pytest

# Add the project root directory to the Python path
ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
sys.path.insert(0, ROOT)

# Test environment: no log files, scratch cache and output directories
SCRATCH = tempfile.mkdtemp(prefix="translate-singularities-")
os.environ.setdefault("LOG_TO_FILE", "false")
os.environ.setdefault("CACHE_DIR", os.path.join(SCRATCH, "cache"))
os.environ.setdefault("OUTPUT_DIR", os.path.join(SCRATCH, "output"))

# Import project modules
from config import Config
from modules.body import SupportBody, SupportFunction
from modules.intersection import Arrangement

DATA_DIR = os.path.join(ROOT, "data")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: campaign-scale checks (deselect with -m 'not slow')")


@pytest.fixture
def mock_config():
    """Create a mock configuration for testing."""
    config = MagicMock(spec=Config)
    config.TOLERANCES = dict(Config.TOLERANCES)
    config.SEARCH = dict(Config.SEARCH)
    config.ORACLE = dict(Config.ORACLE, RESOLUTION=1024)
    config.FUZZ = dict(Config.FUZZ, TRIALS=4, N_MAX=4)
    config.OUTPUT = {"DIR": os.path.join(SCRATCH, "output"), "CACHE_DIR": os.path.join(SCRATCH, "cache")}
    config.LOGGING = dict(Config.LOGGING, TO_FILE=False)
    config.validate.return_value = []
    return config


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def unit_disk():
    """Unit disk centred at the origin."""
    return SupportBody(SupportFunction.disk())


@pytest.fixture
def ellipse_shape():
    """Oval with a second harmonic: ρ = 1 - 0.6 cos 2θ > 0."""
    return SupportFunction(1.0, ((0.0, 0.0), (0.2, 0.0)))


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240601))


@pytest.fixture
def two_disks():
    """Unit disks at distance 1 (a lens)."""
    return Arrangement(SupportFunction.disk(), ((0.0, 0.0), (1.0, 0.0)))


@pytest.fixture
def reuleaux():
    """Unit disks on an equilateral triangle of side 1."""
    return Arrangement(SupportFunction.disk(), ((0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3.0) / 2)))


@pytest.fixture
def redundant_disks():
    """Two unit disks at distance 1 and a third halfway between."""
    return Arrangement(SupportFunction.disk(), ((0.0, 0.0), (1.0, 0.0), (0.5, 0.0)))
