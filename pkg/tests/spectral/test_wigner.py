"""Tests for the Wigner small-d recurrence."""

import numpy as np
import pytest

from liewave.spectral import wigner_d_explicit, wigner_small_d
from liewave.spectral.wigner import magnetic_numbers

BETAS = np.linspace(0.05, np.pi - 0.05, 11)


class TestWignerSmallD:
    """Recurrence against closed forms and the direct factorial sum."""

    def test_spin_half(self):
        d = wigner_small_d(1, BETAS)[1]
        c, s = np.cos(BETAS / 2), np.sin(BETAS / 2)
        expected = np.stack([np.stack([c, s], -1), np.stack([-s, c], -1)], -2)
        assert np.allclose(d, expected, atol=1e-14)

    def test_spin_one_centre_entry(self):
        d = wigner_small_d(2, BETAS)[2]
        assert np.allclose(d[:, 1, 1], np.cos(BETAS), atol=1e-14)

    @pytest.mark.parametrize("two_j", range(0, 9))
    def test_matches_explicit_sum(self, two_j):
        d = wigner_small_d(8, BETAS)[two_j]
        for a in range(two_j + 1):
            for b in range(two_j + 1):
                explicit = wigner_d_explicit(two_j, 2 * a - two_j, 2 * b - two_j, BETAS)
                assert np.allclose(d[:, a, b], explicit, atol=1e-12)

    @pytest.mark.parametrize("two_j", [3, 10, 20])
    def test_orthogonal(self, two_j):
        d = wigner_small_d(two_j, BETAS)[two_j]
        eye = np.eye(two_j + 1)
        for matrix in d:
            assert np.allclose(matrix @ matrix.T, eye, atol=1e-11)

    def test_identity_at_zero_angle(self):
        d = wigner_small_d(6, [0.0])
        for two_j, matrix in d.items():
            assert np.allclose(matrix[0], np.eye(two_j + 1), atol=1e-14)

    def test_negative_spin_raises(self):
        with pytest.raises(ValueError):
            wigner_small_d(-1, BETAS)

    def test_mixed_parity_raises(self):
        with pytest.raises(ValueError):
            wigner_d_explicit(2, 1, 0, BETAS)


def test_magnetic_numbers():
    assert magnetic_numbers(3).tolist() == [-1.5, -0.5, 0.5, 1.5]
    assert magnetic_numbers(0).tolist() == [0.0]
