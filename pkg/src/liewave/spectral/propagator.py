"""Closed-form multipliers K0, K1 of the damped wave equation and their time derivatives.

For a mode with eigenvalue a = lambda^2 the coefficient ODE

    y'' + (1 + a) y' + a y = 0

has characteristic roots -1 and -a. K0 solves it with data (1, 0), K1 with
data (0, 1). Away from the resonance a = 1 the quotient formulas are used; near
it K1 is written as ``t exp(-t) phi1((1 - a) t)`` with ``phi1(z) = (e^z - 1)/z``
evaluated by ``scipy.special.exprel``, which has no cancellation.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Dict, Optional, Sequence, Union

import numpy as np
from scipy.special import exprel

from .group_spectra import ModeTable, Region, SpectralGaps, region_of

logger = logging.getLogger(__name__)

TAU_SWITCH = 1e-6
ORACLE_STEP = 1e-4

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class PropagatorValues:
    """K0, K1, dK0/dt and dK1/dt at one (t, lambda^2) or broadcast over arrays."""

    k0: ArrayLike
    k1: ArrayLike
    dk0: ArrayLike
    dk1: ArrayLike

    def as_tuple(self):
        return self.k0, self.k1, self.dk0, self.dk1


def _kernels(t, lam, resonant, tau_switch: float) -> PropagatorValues:
    t, lam, resonant = np.broadcast_arrays(
        np.asarray(t, dtype=float), np.asarray(lam, dtype=float), np.asarray(resonant, dtype=bool)
    )
    lam = np.where(resonant, 1.0, lam)
    gap = 1.0 - lam
    et = np.exp(-t)
    elt = np.exp(-lam * t)
    near = resonant | (np.abs(gap) < tau_switch)
    safe_gap = np.where(near, 1.0, gap)

    k0 = (elt - lam * et) / safe_gap
    k1 = (elt - et) / safe_gap
    dk0 = lam * (et - elt) / safe_gap
    dk1 = (et - lam * elt) / safe_gap

    if np.any(near):
        z = np.where(resonant, 0.0, gap * t)
        k1_near = t * et * exprel(z)
        k0 = np.where(near, k1_near + et, k0)
        k1 = np.where(near, k1_near, k1)
        dk0 = np.where(near, -lam * k1_near, dk0)
        dk1 = np.where(near, elt - k1_near, dk1)
    return PropagatorValues(k0, k1, dk0, dk1)


def _is_exact_one(lambda2) -> bool:
    if isinstance(lambda2, (Fraction, Rational)):
        return lambda2 == 1
    return float(lambda2) == 1.0


def eval_propagator(t: float, lambda2, tau_switch: float = TAU_SWITCH) -> PropagatorValues:
    """Evaluate K0, K1 and their first time derivatives at a single (t, lambda^2).

    ``lambda2`` may be an exact ``Fraction``; the resonant formulas are used when
    it equals one exactly.
    """
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    if lambda2 < 0:
        raise ValueError(f"eigenvalue must be nonnegative, got {lambda2}")
    values = _kernels(float(t), float(lambda2), _is_exact_one(lambda2), tau_switch)
    return PropagatorValues(*(float(v) for v in values.as_tuple()))


def propagator_table(t, modes: Union[ModeTable, np.ndarray], resonant: Optional[np.ndarray] = None,
                     tau_switch: float = TAU_SWITCH) -> PropagatorValues:
    """Vectorised multipliers for every coefficient entry.

    ``t`` broadcasts against the entries, so ``t[:, None]`` yields one row per time.
    When ``modes`` is a ``ModeTable`` the exact resonance mask comes from it.
    """
    if isinstance(modes, ModeTable):
        lam, mask = modes.lambda2, modes.resonant
    else:
        lam = np.asarray(modes, dtype=float)
        mask = lam == 1.0 if resonant is None else np.asarray(resonant, dtype=bool)
    if np.any(np.asarray(t) < 0):
        raise ValueError("time must be nonnegative")
    if np.any(lam < 0):
        raise ValueError("eigenvalues must be nonnegative")
    return _kernels(t, lam, mask, tau_switch)


def propagator_ode_oracle(t: float, lambda2: float, step: float = ORACLE_STEP) -> PropagatorValues:
    """Reference values from classical RK4 applied to the coefficient ODE.

    The ODE is linear and autonomous, so one RK4 step of size h is the fixed
    matrix ``I + hA + (hA)^2/2 + (hA)^3/6 + (hA)^4/24`` and n steps are its n-th
    power. The step is ``t / ceil(t / step)``, never larger than ``step``. Only
    tests use this; it shares no code with the closed forms.
    """
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    if lambda2 < 0:
        raise ValueError(f"eigenvalue must be nonnegative, got {lambda2}")
    a = float(lambda2)
    if t == 0:
        return PropagatorValues(1.0, 0.0, 0.0, 1.0)
    n_steps = max(1, math.ceil(t / step))
    h = t / n_steps
    system = np.array([[0.0, 1.0], [-a, -(1.0 + a)]]) * h
    one_step = np.eye(2)
    term = np.eye(2)
    for order in range(1, 5):
        term = term @ system / order
        one_step = one_step + term
    evolved = np.linalg.matrix_power(one_step, n_steps)
    # columns: data (1, 0) -> K0, data (0, 1) -> K1
    return PropagatorValues(
        k0=float(evolved[0, 0]), k1=float(evolved[0, 1]),
        dk0=float(evolved[1, 0]), dk1=float(evolved[1, 1]),
    )


# ---------------------------------------------------------------------------
# Region-wise multiplier estimates
# ---------------------------------------------------------------------------

def region_envelopes(region: Region, gaps: SpectralGaps):
    """Value and derivative envelopes of the multiplier estimates on ``region``."""
    delta1 = float(gaps.delta1)
    if region is Region.R1:
        return (lambda t: np.ones_like(t)), (lambda t: np.exp(-t))
    if region is Region.R2:
        env = lambda t: np.exp(-delta1 * t)  # noqa: E731
        return env, env
    if region is Region.R3:
        env = lambda t: (1.0 + t) * np.exp(-t)  # noqa: E731
        return env, env
    env = lambda t: np.exp(-t)  # noqa: E731
    return env, env


@dataclass
class MultiplierBoundReport:
    """Empirical constants sup |K| / envelope on a (t, lambda^2) grid."""

    region: Region
    constants: Dict[str, float]
    refined_constants: Dict[str, float]
    passed: bool
    issues: list = field(default_factory=list)


def _empirical_constants(times: np.ndarray, lam: np.ndarray, region: Region, gaps: SpectralGaps,
                         tau_switch: float) -> Dict[str, float]:
    value_env, deriv_env = region_envelopes(region, gaps)
    resonant = np.full(lam.shape, region is Region.R3)
    values = _kernels(times[:, None], lam[None, :], resonant[None, :], tau_switch)
    venv = value_env(times)[:, None]
    denv = deriv_env(times)[:, None]
    return {
        "k0": float(np.max(np.abs(values.k0) / venv)),
        "k1": float(np.max(np.abs(values.k1) / venv)),
        "dk0": float(np.max(np.abs(values.dk0) / denv)),
        "dk1": float(np.max(np.abs(values.dk1) / denv)),
    }


def multiplier_bound_check(region: Region, gaps: SpectralGaps, t_grid: Sequence[float],
                           lambda2_samples: Sequence, tau_switch: float = TAU_SWITCH,
                           tolerance: float = 0.01) -> MultiplierBoundReport:
    """Measure the constants in the multiplier estimates for one region.

    A region passes when every constant is finite and refining the time grid
    (midpoints inserted) raises no constant by more than ``tolerance``.
    """
    region = Region(region)
    if not lambda2_samples:
        raise ValueError("no eigenvalue samples supplied")
    for sample in lambda2_samples:
        if region_of(sample) is not region:
            raise ValueError(f"sample {sample} does not lie in region {region.value}")
    times = np.sort(np.asarray(t_grid, dtype=float))
    if times.size == 0 or times[0] < 0:
        raise ValueError("time grid must be nonempty and nonnegative")
    lam = np.asarray([float(s) for s in lambda2_samples])

    coarse = _empirical_constants(times, lam, region, gaps, tau_switch)
    midpoints = 0.5 * (times[1:] + times[:-1])
    refined_times = np.sort(np.concatenate([times, midpoints]))
    refined = _empirical_constants(refined_times, lam, region, gaps, tau_switch)

    issues = []
    for name, value in refined.items():
        if not math.isfinite(value):
            issues.append(f"{name}: constant is not finite")
        elif value > coarse[name] * (1.0 + tolerance) + 1e-300:
            issues.append(f"{name}: constant grew from {coarse[name]:.6g} to {value:.6g} under refinement")
    passed = not issues
    logger.debug(f"Multiplier check {region.value}: {coarse} -> {refined} ({'PASS' if passed else 'FAIL'})")
    return MultiplierBoundReport(region, coarse, refined, passed, issues)
