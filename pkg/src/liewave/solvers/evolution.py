"""Homogeneous evolution, Duhamel operator and Picard iteration.

All evolution happens on Fourier coefficients. The homogeneous solution of a
mode is ``K0(t) u0^ + K1(t) u1^``; the semilinear problem with forcing
``|u|^p`` is solved as a fixed point of

    N u (t) = eps K0(t) u0^ + eps K1(t) u1^ + int_0^t K1(t - s) (|u(s)|^p)^ ds

on a uniform grid of panel endpoints in [0, T].
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Protocol, Sequence, Tuple

import numpy as np
from scipy.interpolate import CubicHermiteSpline, CubicSpline

from ..exceptions import NumericalAbort
from ..spectral.group_spectra import GroupSpec, ModeTable, mode_table
from ..spectral.harmonic import (
    GridField,
    QuadratureGrid,
    SpectralField,
    forward_gft,
    inverse_gft,
    make_grid,
)
from ..spectral.propagator import TAU_SWITCH, propagator_table

logger = logging.getLogger(__name__)

# 4-point Gauss-Legendre rule on [0, 1]
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(4)
_GL_NODES = 0.5 * (_GL_NODES + 1.0)
_GL_WEIGHTS = 0.5 * _GL_WEIGHTS


# ---------------------------------------------------------------------------
# Data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CauchyData:
    """Initial data (eps u0, eps u1) in frequency space."""

    u0: SpectralField
    u1: SpectralField
    epsilon: float = 1.0

    def __post_init__(self):
        if self.u0.spec != self.u1.spec:
            raise ValueError("u0 and u1 must live on the same group spec")
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be nonnegative, got {self.epsilon}")

    @property
    def spec(self) -> GroupSpec:
        return self.u0.spec

    def scaled(self) -> Tuple[SpectralField, SpectralField]:
        return self.u0 * self.epsilon, self.u1 * self.epsilon


@dataclass(frozen=True)
class EvolutionState:
    """Solution coefficients u^(t) and their time derivative at time t."""

    t: float
    u: SpectralField
    du: SpectralField

    def __post_init__(self):
        if self.u.spec != self.du.spec:
            raise ValueError("u and du must live on the same group spec")

    def __sub__(self, other: "EvolutionState") -> "EvolutionState":
        return EvolutionState(self.t, self.u - other.u, self.du - other.du)


@dataclass
class SemilinearConfig:
    """Parameters of the semilinear solve."""

    p: float
    T: float
    n_time_steps: int = 20
    picard_tol: float = 1e-12
    picard_max_iters: int = 50
    oversample: float = 2.0
    amplitude_ceiling: float = 1e6

    def __post_init__(self):
        if not self.p > 1:
            raise ValueError(f"p must be > 1, got {self.p}")
        if not self.T > 0:
            raise ValueError(f"T must be positive, got {self.T}")
        if self.n_time_steps < 1:
            raise ValueError(f"n_time_steps must be >= 1, got {self.n_time_steps}")
        if not self.picard_tol > 0:
            raise ValueError(f"picard_tol must be positive, got {self.picard_tol}")
        if self.picard_max_iters < 1:
            raise ValueError(f"picard_max_iters must be >= 1, got {self.picard_max_iters}")
        if self.oversample < 2:
            raise ValueError(f"oversample must be >= 2 for nonlinear terms, got {self.oversample}")
        if not self.amplitude_ceiling > 0:
            raise ValueError(f"amplitude_ceiling must be positive, got {self.amplitude_ceiling}")

    def check_group(self, spec: GroupSpec) -> None:
        """Enforce the exponent range required by the local existence theory."""
        n = spec.n_topological
        if spec.is_torus:
            if n < 3:
                logger.warning(
                    f"Local existence theory assumes dimension n >= 3; running on a {n}-torus anyway"
                )
            elif self.p > n / (n - 2):
                logger.warning(f"p = {self.p} exceeds n/(n-2) = {n / (n - 2):.4g} on this torus")
            return
        if self.p > n / (n - 2):
            raise ValueError(f"p = {self.p} exceeds n/(n-2) = {n / (n - 2):.4g} for {spec.kind.value}")


@dataclass(frozen=True)
class Theorem1Norms:
    """||u||, ||(-L)^1/2 u||, ||u_t|| and ||(-L)^1/2 u_t|| at one time."""

    l2: float
    grad: float
    dt: float
    dt_grad: float

    @property
    def total(self) -> float:
        return self.l2 + self.grad + self.dt + self.dt_grad

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return self.l2, self.grad, self.dt, self.dt_grad


# ---------------------------------------------------------------------------
# Homogeneous problem and norms
# ---------------------------------------------------------------------------

def evolve_homogeneous(data: CauchyData, t: float, tau_switch: float = TAU_SWITCH) -> EvolutionState:
    """Exact solution of the truncated homogeneous problem at time t."""
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    u0, u1 = data.scaled()
    values = propagator_table(float(t), u0.table, tau_switch=tau_switch)
    u = values.k0 * u0.data + values.k1 * u1.data
    du = values.dk0 * u0.data + values.dk1 * u1.data
    return EvolutionState(float(t), SpectralField(data.spec, u), SpectralField(data.spec, du))


def energy_norms(u: np.ndarray, du: np.ndarray, table: ModeTable) -> np.ndarray:
    """The four energy norms for stacked coefficient rows; returns shape (..., 4)."""
    weights = table.dims
    grad_weights = table.dims * table.lambda2
    au = np.abs(u) ** 2
    adu = np.abs(du) ** 2
    return np.sqrt(np.stack([
        au @ weights,
        au @ grad_weights,
        adu @ weights,
        adu @ grad_weights,
    ], axis=-1))


def theorem1_norms(state: EvolutionState) -> Theorem1Norms:
    """The four energy norms of a state, computed from coefficients by Plancherel."""
    values = energy_norms(state.u.data, state.du.data, state.u.table)
    return Theorem1Norms(*(float(v) for v in values))


def xT_norm(trajectory: Sequence[EvolutionState]) -> float:
    """Maximum over the supplied samples of the summed energy norms."""
    if not trajectory:
        raise ValueError("trajectory must contain at least one state")
    return max(theorem1_norms(state).total for state in trajectory)


# ---------------------------------------------------------------------------
# Nonlinearity and forcing
# ---------------------------------------------------------------------------

def apply_nonlinearity(u: SpectralField, p: float, grid: QuadratureGrid) -> SpectralField:
    """Coefficients of |u|^p, evaluated pseudo-spectrally on ``grid`` and truncated."""
    if grid.spec != u.spec:
        raise ValueError("grid and field belong to different group specs")
    samples = inverse_gft(u, grid).samples
    with np.errstate(over="ignore", invalid="ignore"):
        powered = np.abs(samples) ** p
    return forward_gft(GridField(grid, powered))


class ForcingHistory(Protocol):
    """Time-indexed forcing coefficients."""

    spec: GroupSpec

    def sample(self, times: np.ndarray) -> np.ndarray:
        """Coefficient rows, shape ``(len(times), n_entries)``."""


class SampledForcing:
    """Forcing known at stored times, cubic-spline interpolated in between."""

    def __init__(self, times: Sequence[float], fields: Sequence[SpectralField]):
        if len(times) != len(fields) or not fields:
            raise ValueError("need one forcing field per sample time")
        self.spec = fields[0].spec
        self.times = np.asarray(times, dtype=float)
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("forcing sample times must be strictly increasing")
        self.values = np.stack([f.data for f in fields])
        self._spline = CubicSpline(self.times, self.values, axis=0) if len(fields) > 1 else None

    def sample(self, times: np.ndarray) -> np.ndarray:
        times = np.asarray(times, dtype=float)
        span = 1e-12 * max(1.0, abs(self.times[-1]))
        if times.size and (times.min() < self.times[0] - span or times.max() > self.times[-1] + span):
            raise ValueError(
                f"insufficient forcing samples: requested [{times.min():.6g}, {times.max():.6g}], "
                f"stored [{self.times[0]:.6g}, {self.times[-1]:.6g}]"
            )
        if self._spline is None:
            return np.repeat(self.values, times.size, axis=0)
        return self._spline(times)


class CallableForcing:
    """Forcing evaluated exactly from a function of time."""

    def __init__(self, spec: GroupSpec, fn: Callable[[float], SpectralField]):
        self.spec = spec
        self.fn = fn

    def sample(self, times: np.ndarray) -> np.ndarray:
        return np.stack([self.fn(float(t)).data for t in np.atleast_1d(times)])


def time_quadrature(t: float, n_panels: int) -> Tuple[np.ndarray, np.ndarray]:
    """Composite 4-node Gauss-Legendre rule on [0, t]."""
    if n_panels < 1:
        raise ValueError(f"n_panels must be >= 1, got {n_panels}")
    edges = np.linspace(0.0, t, n_panels + 1)
    widths = np.diff(edges)
    nodes = (edges[:-1, None] + widths[:, None] * _GL_NODES[None, :]).reshape(-1)
    weights = (widths[:, None] * _GL_WEIGHTS[None, :]).reshape(-1)
    return nodes, weights


def duhamel_apply(data: CauchyData, forcing: ForcingHistory, t: float, n_panels: int = 16,
                  tau_switch: float = TAU_SWITCH) -> EvolutionState:
    """Mild-solution formula at time t for a given forcing history.

    Returns the value and the time derivative; the derivative of the integral
    term is ``int_0^t dK1(t - s) F(s) ds`` because K1(0) = 0.
    """
    if forcing.spec != data.spec:
        raise ValueError("forcing and data belong to different group specs")
    homogeneous = evolve_homogeneous(data, t, tau_switch)
    if t == 0:
        return homogeneous
    nodes, weights = time_quadrature(t, n_panels)
    forcing_rows = forcing.sample(nodes)
    values = propagator_table((t - nodes)[:, None], homogeneous.u.table, tau_switch=tau_switch)
    u_int = np.einsum("q,qm,qm->m", weights, values.k1, forcing_rows)
    du_int = np.einsum("q,qm,qm->m", weights, values.dk1, forcing_rows)
    return EvolutionState(
        float(t),
        SpectralField(data.spec, homogeneous.u.data + u_int),
        SpectralField(data.spec, homogeneous.du.data + du_int),
    )


# ---------------------------------------------------------------------------
# Picard iteration
# ---------------------------------------------------------------------------

class DuhamelOperator:
    """The integral operator N discretised on panel endpoints of [0, T].

    Trajectories are arrays of shape ``(n_time_steps + 1, n_entries)`` for u and
    u_t. Between endpoints the iterate is reconstructed by cubic Hermite
    interpolation from values and time derivatives.
    """

    def __init__(self, data: CauchyData, cfg: SemilinearConfig, grid: Optional[QuadratureGrid] = None,
                 tau_switch: float = TAU_SWITCH):
        self.data = data
        self.cfg = cfg
        self.spec = data.spec
        self.table = mode_table(self.spec)
        self.grid = grid or make_grid(self.spec, cfg.oversample)
        self.times = np.linspace(0.0, cfg.T, cfg.n_time_steps + 1)
        self.nodes, self.weights = time_quadrature(cfg.T, cfg.n_time_steps)

        u0, u1 = data.scaled()
        hom = propagator_table(self.times[:, None], self.table, tau_switch=tau_switch)
        self.u_hom = hom.k0 * u0.data[None, :] + hom.k1 * u1.data[None, :]
        self.du_hom = hom.dk0 * u0.data[None, :] + hom.dk1 * u1.data[None, :]

        # kernel weights for every (endpoint, node) pair with node <= endpoint
        lag = self.times[:, None] - self.nodes[None, :]
        active = lag > 0
        values = propagator_table(np.clip(lag, 0.0, None)[:, :, None], self.table, tau_switch=tau_switch)
        mask = (active * self.weights[None, :])[:, :, None]
        self.k1_weights = mask * values.k1
        self.dk1_weights = mask * values.dk1

    def _check_amplitude(self, array: np.ndarray, what: str) -> None:
        if not np.all(np.isfinite(array)):
            raise NumericalAbort(f"non-finite values in {what}: possible blow-up, T too large")
        peak = float(np.max(np.abs(array))) if array.size else 0.0
        if peak > self.cfg.amplitude_ceiling:
            raise NumericalAbort(
                f"{what} reached {peak:.3g} > ceiling {self.cfg.amplitude_ceiling:.3g}: "
                f"possible blow-up, T too large"
            )

    def forcing_at_nodes(self, u: np.ndarray, du: np.ndarray) -> np.ndarray:
        spline = CubicHermiteSpline(self.times, u, du, axis=0)
        at_nodes = spline(self.nodes)
        rows = []
        for row in at_nodes:
            field_ = SpectralField(self.spec, row)
            rows.append(apply_nonlinearity(field_, self.cfg.p, self.grid).data)
        forcing = np.stack(rows)
        self._check_amplitude(forcing, "nonlinear forcing")
        return forcing

    def apply(self, u: np.ndarray, du: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """N applied to a sampled trajectory (u, u_t)."""
        self._check_amplitude(u, "iterate")
        forcing = self.forcing_at_nodes(u, du)
        new_u = self.u_hom + np.einsum("jqm,qm->jm", self.k1_weights, forcing)
        new_du = self.du_hom + np.einsum("jqm,qm->jm", self.dk1_weights, forcing)
        self._check_amplitude(new_u, "iterate")
        return new_u, new_du

    def distance(self, a: Tuple[np.ndarray, np.ndarray], b: Tuple[np.ndarray, np.ndarray]) -> float:
        """X(T) distance between two sampled trajectories."""
        return self.norm(a[0] - b[0], a[1] - b[1])

    def norm(self, u: np.ndarray, du: np.ndarray) -> float:
        return float(np.max(energy_norms(u, du, self.table).sum(axis=-1)))

    def to_states(self, u: np.ndarray, du: np.ndarray) -> List[EvolutionState]:
        return [
            EvolutionState(float(t), SpectralField(self.spec, u[j]), SpectralField(self.spec, du[j]))
            for j, t in enumerate(self.times)
        ]

    def from_states(self, states: Sequence[EvolutionState]) -> Tuple[np.ndarray, np.ndarray]:
        if len(states) != self.times.size:
            raise ValueError(f"expected {self.times.size} states, got {len(states)}")
        return np.stack([s.u.data for s in states]), np.stack([s.du.data for s in states])


@dataclass
class PicardReport:
    """Outcome of a Picard solve."""

    converged: bool
    iterations: int
    distances: List[float]
    contraction_factor: Optional[float]
    diagnostic: str
    trajectory: List[EvolutionState] = field(repr=False)

    @property
    def xT_norm(self) -> float:
        return xT_norm(self.trajectory)


def _contraction_factor(distances: Sequence[float]) -> Optional[float]:
    ratios = [b / a for a, b in zip(distances[:-1], distances[1:]) if a > 0]
    return max(ratios) if ratios else None


def picard_solve(data: CauchyData, cfg: SemilinearConfig, grid: Optional[QuadratureGrid] = None,
                 tau_switch: float = TAU_SWITCH) -> PicardReport:
    """Iterate u^(k+1) = N u^(k) from the homogeneous solution until the X(T) step is below tolerance.

    Non-contraction (a step ratio >= 1) or running out of iterations is reported
    in the result. Non-finite values or amplitudes above the ceiling raise
    ``NumericalAbort``.
    """
    cfg.check_group(data.spec)
    operator = DuhamelOperator(data, cfg, grid, tau_switch)
    current = (operator.u_hom, operator.du_hom)
    distances: List[float] = []
    logger.info(
        f"Picard iteration on {data.spec.describe()}: p={cfg.p}, T={cfg.T}, "
        f"eps={data.epsilon}, {cfg.n_time_steps} panels"
    )
    converged = False
    diagnostic = ""
    for iteration in range(1, cfg.picard_max_iters + 1):
        updated = operator.apply(*current)
        step = operator.distance(updated, current)
        distances.append(step)
        current = updated
        logger.debug(f"Picard iteration {iteration}: X(T) step {step:.3e}")
        if step < cfg.picard_tol:
            converged = True
            diagnostic = f"converged after {iteration} iterations"
            break
        if len(distances) >= 2 and distances[-2] > 0 and step / distances[-2] >= 1.0:
            diagnostic = (
                f"iteration does not contract (step ratio {step / distances[-2]:.3g} >= 1): "
                f"T = {cfg.T} is likely too large for this data"
            )
            break
    else:
        diagnostic = f"no convergence within {cfg.picard_max_iters} iterations (last step {distances[-1]:.3e})"

    factor = _contraction_factor(distances)
    if converged:
        logger.info(f"Picard {diagnostic}; contraction factor {factor}")
    else:
        logger.error(f"Picard failed: {diagnostic}")
    return PicardReport(
        converged=converged,
        iterations=len(distances),
        distances=distances,
        contraction_factor=factor,
        diagnostic=diagnostic,
        trajectory=operator.to_states(*current),
    )


@dataclass(frozen=True)
class DifferenceCheck:
    """Empirical constant of ||Nu - Nv|| <= C ||u - v|| (||u||^(p-1) + ||v||^(p-1))."""

    constant: float
    constant_per_time: float
    lhs: float
    rhs: float


def nonlinear_difference_check(operator: DuhamelOperator, u: Sequence[EvolutionState],
                               v: Sequence[EvolutionState]) -> DifferenceCheck:
    """Measure the Lipschitz-type constant of N between two trajectories."""
    ua, va = operator.from_states(u), operator.from_states(v)
    nu, nv = operator.apply(*ua), operator.apply(*va)
    lhs = operator.distance(nu, nv)
    p = operator.cfg.p
    rhs = operator.distance(ua, va) * (operator.norm(*ua) ** (p - 1) + operator.norm(*va) ** (p - 1))
    constant = lhs / rhs if rhs > 0 else 0.0
    return DifferenceCheck(constant, constant / operator.cfg.T, lhs, rhs)


def lipschitz_estimate(operator: DuhamelOperator, relative_perturbation: float = 1e-2) -> DifferenceCheck:
    """Difference constant of N between the homogeneous trajectory and a rescaled copy.

    For small T the constant grows linearly in T, so the ratio of the values on
    [0, T/2] and [0, T] is close to 1/2. The step ratio of the Picard iterates
    does not measure this: it compounds two applications of the u-to-u part of
    N and falls off like T^2.
    """
    u = operator.to_states(operator.u_hom, operator.du_hom)
    scale = 1.0 + relative_perturbation
    v = operator.to_states(scale * operator.u_hom, scale * operator.du_hom)
    return nonlinear_difference_check(operator, u, v)


def reference_rk4_trajectory(data: CauchyData, cfg: SemilinearConfig, substeps: int = 20,
                             grid: Optional[QuadratureGrid] = None) -> List[EvolutionState]:
    """Classical RK4 on the truncated coefficient system, sampled at the panel endpoints.

    Integrates u'' + (1 + lambda^2) u' + lambda^2 u = (|u|^p)^ as a first-order
    system with ``substeps`` RK4 steps per panel. Test oracle only.
    """
    table = mode_table(data.spec)
    grid = grid or make_grid(data.spec, cfg.oversample)
    lam = table.lambda2

    def rhs(state: np.ndarray) -> np.ndarray:
        u, du = state[0], state[1]
        forcing = apply_nonlinearity(SpectralField(data.spec, u), cfg.p, grid).data
        return np.stack([du, -(1.0 + lam) * du - lam * u + forcing])

    u0, u1 = data.scaled()
    state = np.stack([u0.data, u1.data])
    times = np.linspace(0.0, cfg.T, cfg.n_time_steps + 1)
    h = cfg.T / (cfg.n_time_steps * substeps)
    states = [EvolutionState(0.0, SpectralField(data.spec, state[0]), SpectralField(data.spec, state[1]))]
    for t in times[1:]:
        for _ in range(substeps):
            k1 = rhs(state)
            k2 = rhs(state + 0.5 * h * k1)
            k3 = rhs(state + 0.5 * h * k2)
            k4 = rhs(state + h * k3)
            state = state + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        states.append(EvolutionState(float(t), SpectralField(data.spec, state[0]),
                                     SpectralField(data.spec, state[1])))
    return states
