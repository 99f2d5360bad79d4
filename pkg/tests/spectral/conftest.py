"""Fixtures for the spectral tests."""

import math

import numpy as np
import pytest

from liewave.spectral import GridField, GroupSpec, SpectralField, make_grid


@pytest.fixture
def small_circle():
    """Unit circle at B = 2: spectrum {0, 1, 4}."""
    return GroupSpec.torus([1], 2)


@pytest.fixture
def cos_mode():
    """Builder for the coefficients of sqrt(2) cos(x) on a unit circle."""
    def build(spec):
        amplitude = 1.0 / math.sqrt(2.0)
        return SpectralField.from_mapping(spec, {(1,): [[amplitude]], (-1,): [[amplitude]]})
    return build


@pytest.fixture
def sampled():
    """Builder for grid samples of a function of the circle angle."""
    def build(spec, fn, oversample=1.0):
        grid = make_grid(spec, oversample)
        (theta,) = grid.mesh()
        return GridField(grid, fn(theta))
    return build


@pytest.fixture
def resonance_grid():
    """(lambda^2, t) pairs covering both propagator branches."""
    lambdas = [0.0, 0.25, 0.75, 1.0 - 1e-9, 1.0, 1.0 + 1e-9, 2.0, 10.0]
    times = [0.0, 0.1, 1.0, 5.0, 10.0]
    return [(lam, t) for lam in lambdas for t in times]


@pytest.fixture
def seeded_rng():
    return np.random.default_rng(7)
