"""
Pytest configuration and fixtures
"""
import sys
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

import numpy as np
import pytest

from src.core.grid import Grid
from src.potential.potentials import LinearPotential, SinePotential


@pytest.fixture
def turning_point_potential():
    """V = 10^4 (-1/2 + (1 + 0.05i) sin^2 x)"""
    return SinePotential(10000.0, 0.05)


@pytest.fixture
def axis_crossing_potential():
    """V = 500 (-1/2 + (1 - 0.2i) sin^2 x)"""
    return SinePotential(500.0, -0.2)


@pytest.fixture
def negative_increasing_potential():
    """V = -2 + x, negative and increasing on [0, 1]"""
    return LinearPotential(-2.0, 1.0)


@pytest.fixture
def constant_potential():
    def make(v):
        return LinearPotential(complex(v), 0j)
    return make


@pytest.fixture
def unit_grid():
    return Grid.uniform(0.0, 1.0, 129)


@pytest.fixture
def split_grid():
    """[0, 1] with breakpoints at 0.3 and 0.7"""
    return Grid.uniform(0.0, 1.0, 201, breakpoints=(0.3, 0.7))


@pytest.fixture
def rng():
    return np.random.default_rng(20260)
