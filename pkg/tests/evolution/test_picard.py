"""Tests for the Picard solver of the semilinear problem."""

import logging

import numpy as np
import pytest

from liewave import NumericalAbort
from liewave.solvers import (
    CauchyData,
    DuhamelOperator,
    SemilinearConfig,
    lipschitz_estimate,
    nonlinear_difference_check,
    picard_solve,
    reference_rk4_trajectory,
)
from liewave.spectral import GroupSpec, SpectralField, inverse_gft, make_grid, plancherel_norm

from .conftest import cosine_field


class TestSemilinearConfig:
    """Parameter validation."""

    @pytest.mark.parametrize("kwargs", [
        dict(p=1.0, T=1.0),
        dict(p=2.0, T=0.0),
        dict(p=2.0, T=1.0, n_time_steps=0),
        dict(p=2.0, T=1.0, picard_tol=0.0),
        dict(p=2.0, T=1.0, picard_max_iters=0),
        dict(p=2.0, T=1.0, oversample=1.5),
        dict(p=2.0, T=1.0, amplitude_ceiling=-1.0),
    ])
    def test_invalid_values_raise(self, kwargs):
        with pytest.raises(ValueError):
            SemilinearConfig(**kwargs)

    def test_exponent_limit_on_su2(self):
        with pytest.raises(ValueError):
            SemilinearConfig(p=3.5, T=0.5).check_group(GroupSpec.su2(2))
        SemilinearConfig(p=3.0, T=0.5).check_group(GroupSpec.su2(2))

    def test_torus_below_dimension_three_warns(self, caplog):
        with caplog.at_level(logging.WARNING, logger="liewave.solvers.evolution"):
            SemilinearConfig(p=2.0, T=0.5).check_group(GroupSpec.torus([1], 4))
        assert "dimension" in caplog.text


class TestPicardSolve:
    """Convergence, oracle agreement and error paths."""

    def test_zero_epsilon_converges_at_once(self, cosine_data, semilinear_config):
        data = CauchyData(cosine_data.u0, cosine_data.u1, epsilon=0.0)
        report = picard_solve(data, semilinear_config)
        assert report.converged
        assert report.iterations == 1
        assert report.xT_norm == 0.0

    @pytest.mark.slow
    def test_small_data_match_rk4(self, small_data, semilinear_config):
        report = picard_solve(small_data, semilinear_config)
        assert report.converged
        assert report.contraction_factor is not None and report.contraction_factor < 0.5
        distances = np.array(report.distances)
        assert np.all(distances[1:] < distances[:-1])

        reference = reference_rk4_trajectory(small_data, semilinear_config, substeps=20)
        assert len(reference) == len(report.trajectory)
        assert plancherel_norm(report.trajectory[-1].u - reference[-1].u) < 1e-6

    def test_halving_T_halves_lipschitz_constant(self, small_data):
        full = lipschitz_estimate(DuhamelOperator(small_data, SemilinearConfig(p=2.0, T=0.5, n_time_steps=20)))
        half = lipschitz_estimate(DuhamelOperator(small_data, SemilinearConfig(p=2.0, T=0.25, n_time_steps=10)))
        assert 0.35 <= half.constant / full.constant <= 0.75

    def test_converged_trajectory_is_fixed_point(self, small_data, semilinear_config):
        report = picard_solve(small_data, semilinear_config)
        operator = DuhamelOperator(small_data, semilinear_config)
        current = operator.from_states(report.trajectory)
        assert operator.distance(operator.apply(*current), current) < 1e-11

    def test_real_data_stay_real(self, small_data, semilinear_config, circle8):
        report = picard_solve(small_data, semilinear_config)
        grid = make_grid(circle8, 2.0)
        for state in report.trajectory:
            assert np.max(np.abs(inverse_gft(state.u, grid).samples.imag)) < 1e-15

    def test_large_horizon_aborts_or_reports(self, circle8):
        data = CauchyData(cosine_field(circle8), SpectralField.zeros(circle8), epsilon=1.0)
        cfg = SemilinearConfig(p=2.0, T=50.0, n_time_steps=50)
        try:
            report = picard_solve(data, cfg)
        except NumericalAbort as e:
            assert "T too large" in str(e)
        else:
            assert not report.converged
            assert report.diagnostic

    def test_amplitude_ceiling_aborts(self, cosine_data):
        cfg = SemilinearConfig(p=2.0, T=0.5, amplitude_ceiling=1e-3)
        with pytest.raises(NumericalAbort):
            picard_solve(cosine_data, cfg)

    def test_iteration_budget_reported(self, small_data):
        cfg = SemilinearConfig(p=2.0, T=0.5, picard_tol=1e-300, picard_max_iters=2)
        report = picard_solve(small_data, cfg)
        assert not report.converged
        assert report.iterations == 2
        assert "no convergence" in report.diagnostic

    def test_exponent_above_limit_raises(self):
        spec = GroupSpec.su2(2)
        data = CauchyData(SpectralField.constant(spec), SpectralField.zeros(spec), epsilon=1e-3)
        with pytest.raises(ValueError):
            picard_solve(data, SemilinearConfig(p=4.0, T=0.1))


class TestDifferenceCheck:
    """Lipschitz-type constant of the integral operator."""

    def test_constant_is_finite(self, small_data, semilinear_config):
        operator = DuhamelOperator(small_data, semilinear_config)
        u = operator.to_states(operator.u_hom, operator.du_hom)
        v = operator.to_states(1.5 * operator.u_hom, 1.5 * operator.du_hom)
        check = nonlinear_difference_check(operator, u, v)
        assert np.isfinite(check.constant) and check.constant > 0
        assert check.constant_per_time == pytest.approx(check.constant / semilinear_config.T)

    def test_wrong_length_raises(self, small_data, semilinear_config):
        operator = DuhamelOperator(small_data, semilinear_config)
        states = operator.to_states(operator.u_hom, operator.du_hom)
        with pytest.raises(ValueError):
            nonlinear_difference_check(operator, states[:-1], states)
