"""Shared pytest options and fixtures."""
import numpy as np
import pytest

from timpy.tools.spectral.grid import Grid
from timpy.tools.spectral.littlewood_paley import build_filter_bank


# ...............................................
def pytest_addoption(parser):
    """Register `--runslow` for reference-resolution experiments."""
    parser.addoption(
        "--runslow", action="store_true", default=False,
        help="run reference-resolution experiments")


# ...............................................
def pytest_configure(config):
    """Register the `slow` marker."""
    config.addinivalue_line("markers", "slow: reference-resolution experiment")


# ...............................................
def pytest_collection_modifyitems(config, items):
    """Skip slow tests unless `--runslow` is given."""
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


# ...............................................
@pytest.fixture
def grid():
    """Medium grid with plenty of dyadic shells."""
    return Grid(64.0, 1024)


# ...............................................
@pytest.fixture
def bank(grid):
    """Filter bank of the medium grid."""
    return build_filter_bank(grid)


# ...............................................
@pytest.fixture
def rng():
    """Seeded random generator."""
    return np.random.default_rng(12345)
