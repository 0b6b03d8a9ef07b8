import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ordered_yao.constructions import random_points

settings.register_profile(
    "repo",
    max_examples=40,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture
def rand_set():
    """Factory for seeded random sets in general position."""
    return random_points


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
