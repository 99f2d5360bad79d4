"""The zero-mode obstruction: L1 data do not improve the decay of ||u(t)||_L2.

Data with nonzero mean keep a non-decaying trivial mode, so ||u(t)||_L2 tends
to |mean(u0) + mean(u1)|. Mean-zero data of the same L1 size decay
exponentially at rate at least delta1.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..solvers.evolution import CauchyData
from ..spectral.group_spectra import GroupSpec, enumerate_dual, spectral_gaps
from ..spectral.harmonic import (
    SpectralField,
    inverse_gft,
    lq_norm,
    make_grid,
    plancherel_norm,
    random_spectral_field,
    real_projection,
)
from ..spectral.propagator import propagator_table
from .decay import fit_decay_rate, norm_series

logger = logging.getLogger(__name__)

L1_QUADRATURE_OVERSAMPLE = 4.0
CHAIN_CONSTANT = 2.0


@dataclass
class L1ExperimentReport:
    """Verdicts of the non-improvement experiment and the series behind them."""

    spec: GroupSpec
    times: np.ndarray
    constant_norms: np.ndarray
    mean_zero_norms: np.ndarray
    limit: float
    fitted_rate: float
    delta1: float
    verdicts: Dict[str, bool]
    details: Dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())


@dataclass
class ChainCheck:
    """sup_t d0 |u^(t, trivial)|^2 against CHAIN_CONSTANT (||u0||_L1^2 + ||u1||_L1^2)."""

    lhs: List[float]
    rhs: List[float]
    passed: bool
    worst_ratio: float


def l1_norm(F: SpectralField, oversample: float = L1_QUADRATURE_OVERSAMPLE) -> float:
    """L1 norm by quadrature on an oversampled grid."""
    return lq_norm(inverse_gft(F, make_grid(F.spec, oversample)), 1.0)


def lowest_mode_field(spec: GroupSpec) -> SpectralField:
    """A real function living on the lowest nonzero eigenvalue, unit L2 norm."""
    reps = [rep for rep in enumerate_dual(spec) if not rep.is_trivial]
    if not reps:
        raise ValueError(f"{spec.describe()} has no nontrivial representation")
    lowest = min(reps, key=lambda rep: (rep.eigenvalue, rep.index))
    block = np.zeros((lowest.dim, lowest.dim), dtype=complex)
    block[0, 0] = 1.0
    field_ = real_projection(SpectralField.from_mapping(spec, {lowest.index: block}))
    table = field_.table
    norm = float(np.sqrt(np.sum(table.dims * np.abs(field_.data) ** 2)))
    return field_ * (1.0 / norm)


def _mean(F: SpectralField) -> complex:
    return complex(F.data[F.table.trivial_position])


def linf_chain_check(samples: Sequence[CauchyData], times: Sequence[float]) -> ChainCheck:
    """Check the trivial-mode bound of the L1 chain on every data set."""
    t = np.asarray(times, dtype=float)
    lhs, rhs = [], []
    for data in samples:
        u0, u1 = data.scaled()
        pos = u0.table.trivial_position
        values = propagator_table(t, np.zeros(1))
        trivial = values.k0 * u0.data[pos] + values.k1 * u1.data[pos]
        lhs.append(float(np.max(np.abs(trivial) ** 2)))
        rhs.append(CHAIN_CONSTANT * (l1_norm(u0) ** 2 + l1_norm(u1) ** 2))
    ratios = [a / b if b > 0 else (0.0 if a == 0 else np.inf) for a, b in zip(lhs, rhs)]
    worst = float(max(ratios)) if ratios else 0.0
    return ChainCheck(lhs, rhs, worst <= 1.0, worst)


def random_chain_corpus(spec: GroupSpec, n_samples: int, seed: int, decay: float = 1.0) -> List[CauchyData]:
    rng = np.random.default_rng(seed)
    return [
        CauchyData(random_spectral_field(spec, rng, decay), random_spectral_field(spec, rng, decay))
        for _ in range(n_samples)
    ]


def _follows_envelope(times: np.ndarray, norms: np.ndarray, data: CauchyData, delta1: float, degree: int,
                      rate_slack: float) -> Tuple[bool, float]:
    """Whether ||u(t)|| / ((1 + t)^degree e^(-(1 - rate_slack) delta1 t) ||data||) keeps falling.

    The weighted ratio at the final time must not exceed its maximum over the
    first half of the horizon. Returns the verdict and final / first-half maximum.
    """
    u0, u1 = data.scaled()
    size = plancherel_norm(u0) + plancherel_norm(u1)
    if size == 0:
        return bool(np.all(norms == 0)), 0.0
    log_weights = (1.0 - rate_slack) * delta1 * times - degree * np.log1p(times)
    ratios = norms * np.exp(log_weights) / size
    first_half = times <= times[-1] / 2
    reference = float(np.max(ratios[first_half]))
    if reference == 0:
        return bool(ratios[-1] == 0), 0.0
    return bool(ratios[-1] <= reference), float(ratios[-1] / reference)


def l1_no_improvement_experiment(spec: GroupSpec, t_final: float = 30.0, n_times: int = 301,
                                 mean_zero: Optional[CauchyData] = None,
                                 constant: Optional[CauchyData] = None,
                                 fit_window: Tuple[float, float] = (5.0, 30.0),
                                 tolerance: float = 1e-10, rate_slack: float = 0.05) -> L1ExperimentReport:
    """Run both evolutions and report (a) non-decay with mean and (b) decay without.

    Default data are u0 = u1 = 1 for the first run and, for the second, the
    lowest nontrivial real mode rescaled to the L1 norm of the constant with
    zero velocity.
    """
    times = np.linspace(0.0, t_final, n_times)
    constant = constant or CauchyData(SpectralField.constant(spec), SpectralField.constant(spec))
    if mean_zero is None:
        shape = lowest_mode_field(spec)
        # zero-displacement constant data fall back to the velocity, then to unit L1 size
        target = l1_norm(constant.u0) or l1_norm(constant.u1) or 1.0
        mean_zero = CauchyData(shape * (target / l1_norm(shape)), SpectralField.zeros(spec))
    if abs(_mean(mean_zero.u0)) > 1e-12 or abs(_mean(mean_zero.u1)) > 1e-12:
        raise ValueError("mean-zero data have a nonzero trivial coefficient")

    gaps = spectral_gaps(enumerate_dual(spec))
    delta1 = float(gaps.delta1)

    constant_norms = norm_series(constant, times)[:, 0]
    mean_zero_norms = norm_series(mean_zero, times)[:, 0]
    u0, u1 = constant.scaled()
    limit = abs(_mean(u0) + _mean(u1))

    # the resonant profile (1 + t) e^(-t) is the slowest one when delta1 = 1
    table = mean_zero.u0.table
    carries_resonance = bool(np.any(table.resonant & ((np.abs(mean_zero.u0.data) > 0)
                                                      | (np.abs(mean_zero.u1.data) > 0))))
    degree = 1 if carries_resonance and delta1 == 1.0 else 0
    rate = fit_decay_rate(times, mean_zero_norms, fit_window, polynomial_degree=degree)

    no_decay = abs(constant_norms[-1] - limit) < tolerance and limit > 0
    bounded, envelope_ratio = _follows_envelope(times, mean_zero_norms, mean_zero, delta1, degree, rate_slack)
    decays = bounded and rate >= (1.0 - rate_slack) * delta1
    details = {
        "no_decay_with_mean": f"||u({t_final})||_L2 = {constant_norms[-1]:.17g}, limit {limit:.17g}",
        "decay_without_mean": (f"||u({t_final})||_L2 = {mean_zero_norms[-1]:.3e}, fitted rate {rate:.4f} "
                               f"vs delta1 = {delta1:.4f}, envelope ratio {envelope_ratio:.4f}"),
    }
    for key, text in details.items():
        logger.info(f"{key}: {text}")
    return L1ExperimentReport(
        spec=spec,
        times=times,
        constant_norms=constant_norms,
        mean_zero_norms=mean_zero_norms,
        limit=limit,
        fitted_rate=rate,
        delta1=delta1,
        verdicts={"no_decay_with_mean": bool(no_decay), "decay_without_mean": bool(decays)},
        details=details,
    )
