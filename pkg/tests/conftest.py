"""Shared fixtures."""

import pytest

from config.settings import get_settings
from src.engine.families import JointCumulantSpec
from tests.helpers import scalar_spec


@pytest.fixture(autouse=True)
def fresh_settings():
    """Each test sees settings rebuilt from its own environment."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def semicircle() -> JointCumulantSpec:
    """Single d = 1 variable with k_2 = 1 and nothing else."""
    return scalar_spec({(1, 1): 1}, N=6)
