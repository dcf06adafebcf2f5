"""Shared fixtures: builtin algebras, a seeded generator and a reduced hypothesis profile."""

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ncalc.algebra import builtin

settings.register_profile(
    "ncalc", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("ncalc")


@pytest.fixture
def reals():
    return builtin("reals")


@pytest.fixture
def complex_algebra():
    return builtin("complex")


@pytest.fixture
def quaternions():
    return builtin("quaternions")


@pytest.fixture
def octonions():
    return builtin("octonions")


@pytest.fixture
def matrix2x2():
    return builtin("matrix2x2")


@pytest.fixture
def dual_numbers():
    return builtin("dual_numbers")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
