"""Tests for the linear decay-bound harness."""

import math

import numpy as np
import pytest

from liewave.analysis import (
    DECAY_RATES,
    calibration_window,
    data_norms,
    fit_decay_rate,
    norm_series,
    verify_decay_bounds,
)
from liewave.solvers import CauchyData
from liewave.spectral import GroupSpec, SpectralField, enumerate_dual, spectral_gaps


class TestNormSeries:
    """Vectorised norms along a time grid."""

    def test_cosine_closed_forms(self, circle_cosine, times):
        norms = norm_series(circle_cosine, times)
        envelope = (1 + times) * np.exp(-times)
        assert np.allclose(norms[:, 0], envelope, atol=1e-10, rtol=0)
        assert np.allclose(norms[:, 1], envelope, atol=1e-10, rtol=0)
        assert np.allclose(norms[:, 2], times * np.exp(-times), atol=1e-10, rtol=0)
        assert np.allclose(norms[:, 3], times * np.exp(-times), atol=1e-10, rtol=0)

    def test_data_norm_combinations(self, circle_cosine):
        assert data_norms(circle_cosine) == pytest.approx((1.0, 2.0, 2.0, 2.0), abs=1e-14)


class TestFitDecayRate:
    """Log-linear rate fits."""

    def test_pure_exponential(self, times):
        assert fit_decay_rate(times, np.exp(-0.5 * times)) == pytest.approx(0.5, abs=1e-10)
        # e^(-2t) stays above the log floor only up to t ~ 16
        assert fit_decay_rate(times, np.exp(-2.0 * times), window=(5.0, 15.0)) == pytest.approx(2.0, abs=1e-10)

    def test_polynomial_prefactor(self, times):
        values = (1 + times) * np.exp(-times)
        assert fit_decay_rate(times, values, polynomial_degree=1) == pytest.approx(1.0, abs=1e-10)
        assert fit_decay_rate(times, values) < 0.97

    def test_floor_keeps_zeros_finite(self, times):
        rate = fit_decay_rate(times, np.zeros_like(times))
        assert rate == pytest.approx(0.0, abs=1e-12)

    def test_shape_mismatch_raises(self, times):
        with pytest.raises(ValueError):
            fit_decay_rate(times, times[:-1])

    def test_window_without_samples_raises(self, times):
        with pytest.raises(ValueError):
            fit_decay_rate(times, np.exp(-times), window=(40.0, 50.0))


class TestCalibrationWindow:
    """Default window covering the ratio peaks."""

    @pytest.mark.parametrize("spec,expected", [
        (GroupSpec.torus([1], 8), 2.5),
        (GroupSpec.su2(4), 2.5 / 0.75),
        (GroupSpec.torus([2], 2), 10.0),
    ])
    def test_values(self, spec, expected):
        assert calibration_window(spec) == pytest.approx(expected)


class TestVerifyDecayBounds:
    """PASS/FAIL verdicts of the four estimates."""

    def test_resonant_cosine_passes(self, circle_cosine, times):
        report = verify_decay_bounds(circle_cosine, times)
        assert report.passed
        assert report.rates == DECAY_RATES
        # r3 = (1 + t) t e^(-t) / 2 peaks at the golden ratio
        golden = (1 + math.sqrt(5)) / 2
        assert report.verdicts[2].constant == pytest.approx((1 + golden) * golden * math.exp(-golden) / 2, abs=1e-3)
        assert report.ratios[-1, 2] < report.verdicts[2].constant

    def test_constant_data(self, times):
        spec = GroupSpec.su2(2)
        data = CauchyData(SpectralField.constant(spec), SpectralField.zeros(spec))
        report = verify_decay_bounds(data, times)
        assert report.passed
        assert np.allclose(report.ratios[:, 0], 1.0, atol=1e-14)
        assert np.all(report.ratios[:, 1:] == 0.0)

    def test_mixed_spectrum_on_su2(self, mixed_su2_data, times):
        report = verify_decay_bounds(mixed_su2_data, times)
        assert report.passed, [v.detail for v in report.verdicts]
        delta1 = float(spectral_gaps(enumerate_dual(mixed_su2_data.spec)).delta1)
        for name in ("grad", "dt", "dt_grad"):
            assert report.fitted_rates[name] >= delta1 - 0.05

    def test_short_window_fails(self, circle_cosine, times):
        report = verify_decay_bounds(circle_cosine, times, window=0.1)
        assert not report.passed
        assert any("after the window" in v.detail for v in report.verdicts)

    def test_frame_columns(self, circle_cosine, times):
        frame = verify_decay_bounds(circle_cosine, times).to_frame()
        assert list(frame.columns) == ["t"] + [f"norm{i}" for i in range(1, 5)] + [f"ratio{i}" for i in range(1, 5)]
        assert len(frame) == times.size

    def test_short_horizon_has_no_fitted_rate(self, circle_cosine):
        report = verify_decay_bounds(circle_cosine, np.linspace(0.0, 3.0, 31))
        assert report.fitted_rates["l2"] is None

    def test_empty_times_raise(self, circle_cosine):
        with pytest.raises(ValueError):
            verify_decay_bounds(circle_cosine, [])

    def test_unsorted_times_raise(self, circle_cosine):
        with pytest.raises(ValueError):
            verify_decay_bounds(circle_cosine, [0.0, 2.0, 1.0])

    def test_non_finite_data_fail(self, circle_cosine, times):
        coefficients = circle_cosine.u0.data.copy()
        coefficients[0] = np.nan
        data = CauchyData(SpectralField(circle_cosine.spec, coefficients), circle_cosine.u1)
        report = verify_decay_bounds(data, times)
        assert not report.passed
        assert all(not v.passed and "non-finite" in v.detail for v in report.verdicts)
