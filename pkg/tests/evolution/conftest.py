"""Fixtures for the evolution tests."""

import math

import pytest

from liewave.solvers import CauchyData, SemilinearConfig
from liewave.spectral import GroupSpec, SpectralField


def cosine_field(spec, scale=1.0):
    """sqrt(2) cos(x) on a unit circle, times ``scale``."""
    amplitude = scale / math.sqrt(2.0)
    return SpectralField.from_mapping(spec, {(1,): [[amplitude]], (-1,): [[amplitude]]})


@pytest.fixture
def circle8():
    return GroupSpec.torus([1], 8)


@pytest.fixture
def cosine_data(circle8):
    """u0 = sqrt(2) cos x, u1 = 0."""
    return CauchyData(cosine_field(circle8), SpectralField.zeros(circle8))


@pytest.fixture
def constant_data(circle8):
    """u0 = u1 = 1."""
    one = SpectralField.constant(circle8)
    return CauchyData(one, one)


@pytest.fixture
def small_data(circle8):
    """eps = 1e-3, u0 = u1 = sqrt(2) cos x."""
    field_ = cosine_field(circle8)
    return CauchyData(field_, field_, epsilon=1e-3)


@pytest.fixture
def semilinear_config():
    return SemilinearConfig(p=2.0, T=0.5, n_time_steps=20)
