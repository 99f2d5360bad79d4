"""Fixtures for the verification-harness tests."""

import math

import numpy as np
import pytest

from liewave.solvers import CauchyData
from liewave.spectral import GroupSpec, SpectralField, random_spectral_field, real_projection


@pytest.fixture
def times():
    """301 samples on [0, 30]."""
    return np.linspace(0.0, 30.0, 301)


@pytest.fixture
def circle_cosine():
    spec = GroupSpec.torus([1], 8)
    amplitude = 1.0 / math.sqrt(2.0)
    u0 = SpectralField.from_mapping(spec, {(1,): [[amplitude]], (-1,): [[amplitude]]})
    return CauchyData(u0, SpectralField.zeros(spec))


@pytest.fixture
def mixed_su2_data():
    """Real random data on SU(2), B = 4, touching every representation."""
    spec = GroupSpec.su2(4)
    rng = np.random.default_rng(11)
    return CauchyData(real_projection(random_spectral_field(spec, rng, 1.0)),
                      real_projection(random_spectral_field(spec, rng, 1.0)))
