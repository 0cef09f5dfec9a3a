import numpy as np
import pytest

from wickcalc.settings import get_settings


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(autouse=True)
def fresh_settings():
    """Settings are cached per process; tests that patch the environment need a clean slate."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
