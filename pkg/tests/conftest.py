"""Shared pytest fixtures."""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add project to path
sys.path.insert(0, str(Path(__file__).parent.parent))


@pytest.fixture
def rng():
    """Seeded generator so every random test is reproducible."""
    return np.random.default_rng(20240611)
