"""Quadrature grids, group Fourier transforms and norms.

The forward transform realises ``f^(xi) = int_G f(x) xi(x)^* dx`` by quadrature
and the inverse realises ``f(x) = sum_xi d_xi Tr(xi(x) f^(xi))``. On tori the
characters are ``exp(i k . theta)`` with ``theta`` in ``[0, 2 pi)^n``; on SU(2)
and SO(3) the representations are Wigner D matrices in z-y-z Euler angles,
``D^j_{m'm} = exp(-i m' alpha) d^j_{m'm}(beta) exp(-i m gamma)``.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import roots_legendre

from .group_spectra import GroupKind, GroupSpec, ModeTable, Representation, mode_table
from .wigner import magnetic_numbers, wigner_small_d

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Grids
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QuadratureGrid:
    """Product quadrature rule for the normalised Haar measure of a group.

    ``axes`` hold node coordinates (angles) and ``axis_weights`` the matching 1-D
    weights; the full weight of a node is the product of its axis weights and
    all weights sum to one.
    """

    spec: GroupSpec
    oversample: float
    axes: Tuple[np.ndarray, ...]
    axis_weights: Tuple[np.ndarray, ...]

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(a.size for a in self.axes)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    @property
    def weights(self) -> np.ndarray:
        w = self.axis_weights[0]
        for aw in self.axis_weights[1:]:
            w = np.multiply.outer(w, aw)
        return w

    def mesh(self) -> Tuple[np.ndarray, ...]:
        return tuple(np.meshgrid(*self.axes, indexing="ij"))


def _uniform_axis(count: int, period: float) -> Tuple[np.ndarray, np.ndarray]:
    nodes = period * np.arange(count) / count
    weights = np.full(count, 1.0 / count)
    return nodes, weights


@lru_cache(maxsize=64)
def _grid_cached(spec: GroupSpec, oversample: float) -> QuadratureGrid:
    bound = spec.bandlimit
    if spec.kind is GroupKind.TORUS:
        count = math.ceil(oversample * (2 * bound + 1))
        axes, weights = zip(*[_uniform_axis(count, 2 * math.pi) for _ in range(spec.n_topological)])
    else:
        n_beta = math.ceil(oversample * (bound + 1))
        x, w = roots_legendre(n_beta)
        # ascending beta; weights in cos(beta) sum to 2
        beta = np.arccos(x)[::-1]
        w_beta = (w / 2.0)[::-1]
        if spec.kind is GroupKind.SU2:
            alpha, w_alpha = _uniform_axis(math.ceil(oversample * (2 * bound + 1)), 4 * math.pi)
            gamma, w_gamma = _uniform_axis(math.ceil(oversample * (bound + 1)), 2 * math.pi)
        else:
            alpha, w_alpha = _uniform_axis(math.ceil(oversample * (2 * bound + 1)), 2 * math.pi)
            gamma, w_gamma = _uniform_axis(math.ceil(oversample * (2 * bound + 1)), 2 * math.pi)
        axes = (alpha, beta, gamma)
        weights = (w_alpha, w_beta, w_gamma)
    for arr in (*axes, *weights):
        arr.setflags(write=False)
    return QuadratureGrid(spec, float(oversample), tuple(axes), tuple(weights))


def make_grid(spec: GroupSpec, oversample: float = 1.0) -> QuadratureGrid:
    """Build the quadrature grid for ``spec``.

    Tori get a uniform product grid with ``ceil(oversample * (2B+1))`` nodes per
    axis. SU(2)/SO(3) get Euler angles: uniform alpha (period 4 pi on SU(2),
    2 pi on SO(3)), Gauss-Legendre in cos(beta) with ``ceil(oversample*(B+1))``
    nodes, uniform gamma. At ``oversample >= 1`` products of two bandlimited
    functions integrate exactly; ``oversample >= 2`` covers fourth powers.
    """
    if oversample < 1:
        raise ValueError(f"oversample must be >= 1, got {oversample}")
    return _grid_cached(spec, float(oversample))


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GridField:
    """Samples of a function at the nodes of a quadrature grid."""

    grid: QuadratureGrid
    samples: np.ndarray

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=complex)
        if samples.size != self.grid.size:
            raise ValueError(
                f"samples have {samples.size} values but the grid has {self.grid.size} nodes"
            )
        samples = samples.reshape(self.grid.shape)
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def spec(self) -> GroupSpec:
        return self.grid.spec

    @property
    def weights(self) -> np.ndarray:
        return self.grid.weights

    def map(self, fn) -> "GridField":
        return GridField(self.grid, fn(self.samples))


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Fourier coefficients of a bandlimited function, one d x d matrix per representation.

    Coefficients are stored as one flat complex vector following the layout of
    ``mode_table(spec)``.
    """

    spec: GroupSpec
    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=complex).reshape(-1)
        expected = mode_table(self.spec).size
        if data.size != expected:
            raise ValueError(f"expected {expected} coefficients for {self.spec.describe()}, got {data.size}")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @classmethod
    def zeros(cls, spec: GroupSpec) -> "SpectralField":
        return cls(spec, np.zeros(mode_table(spec).size, dtype=complex))

    @classmethod
    def constant(cls, spec: GroupSpec, value: complex = 1.0) -> "SpectralField":
        """The constant function: only the trivial coefficient is nonzero."""
        table = mode_table(spec)
        data = np.zeros(table.size, dtype=complex)
        data[table.trivial_position] = value
        return cls(spec, data)

    @classmethod
    def from_mapping(cls, spec: GroupSpec, coeffs: Dict[Tuple[int, ...], np.ndarray]) -> "SpectralField":
        """Build from ``{index: matrix}``; missing representations get zero matrices."""
        table = mode_table(spec)
        data = np.zeros(table.size, dtype=complex)
        positions = {rep.index: (rep, sl) for rep, sl in zip(table.reps, table.slices)}
        for index, matrix in coeffs.items():
            key = tuple(int(i) for i in np.atleast_1d(index))
            if key not in positions:
                raise ValueError(f"index {key} is outside the bandlimit of {spec.describe()}")
            rep, sl = positions[key]
            block = np.asarray(matrix, dtype=complex).reshape(rep.dim, rep.dim)
            data[sl] = block.reshape(-1)
        return cls(spec, data)

    @property
    def table(self) -> ModeTable:
        return mode_table(self.spec)

    @property
    def coeffs(self) -> Dict[Representation, np.ndarray]:
        """Mapping representation -> d x d coefficient matrix."""
        table = self.table
        return {rep: self.data[sl].reshape(rep.dim, rep.dim) for rep, sl in zip(table.reps, table.slices)}

    def coefficient(self, index: Sequence[int]) -> np.ndarray:
        key = tuple(int(i) for i in np.atleast_1d(index))
        for rep, sl in zip(self.table.reps, self.table.slices):
            if rep.index == key:
                return self.data[sl].reshape(rep.dim, rep.dim)
        raise KeyError(f"no representation with index {key}")

    def scale_entries(self, factors: np.ndarray) -> "SpectralField":
        """Multiply entry ``i`` by ``factors[i]`` (a per-entry multiplier)."""
        return SpectralField(self.spec, self.data * factors)

    def _check_compatible(self, other: "SpectralField") -> None:
        if other.spec != self.spec:
            raise ValueError(f"spec mismatch: {self.spec.describe()} vs {other.spec.describe()}")

    def __add__(self, other: "SpectralField") -> "SpectralField":
        self._check_compatible(other)
        return SpectralField(self.spec, self.data + other.data)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        self._check_compatible(other)
        return SpectralField(self.spec, self.data - other.data)

    def __mul__(self, scalar: complex) -> "SpectralField":
        return SpectralField(self.spec, self.data * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "SpectralField":
        return SpectralField(self.spec, -self.data)

    def max_abs_difference(self, other: "SpectralField") -> float:
        self._check_compatible(other)
        return float(np.max(np.abs(self.data - other.data))) if self.data.size else 0.0


# ---------------------------------------------------------------------------
# Transforms
# ---------------------------------------------------------------------------

class _TorusTransform:
    """Exact DFT evaluation through numpy's FFT."""

    def __init__(self, grid: QuadratureGrid):
        self.grid = grid
        table = mode_table(grid.spec)
        counts = grid.shape
        # position of each k inside the FFT output
        self.positions = tuple(
            np.array([rep.index[axis] % counts[axis] for rep in table.reps])
            for axis in range(len(counts))
        )
        self.norm = float(np.prod(counts))

    def forward(self, samples: np.ndarray) -> np.ndarray:
        spectrum = np.fft.fftn(samples) / self.norm
        return spectrum[self.positions]

    def inverse(self, data: np.ndarray) -> np.ndarray:
        spectrum = np.zeros(self.grid.shape, dtype=complex)
        spectrum[self.positions] = data
        return np.fft.ifftn(spectrum) * self.norm


class _WignerTransform:
    """Dense transform on SU(2)/SO(3) grids, separable in alpha and gamma."""

    def __init__(self, grid: QuadratureGrid, threads: int = 1):
        self.grid = grid
        self.threads = max(1, int(threads))
        self.table = mode_table(grid.spec)
        alpha, beta, gamma = grid.axes
        self.w_alpha, self.w_beta, self.w_gamma = grid.axis_weights
        self.two_js = [self._two_j(rep) for rep in self.table.reps]
        small_d = wigner_small_d(max(self.two_js), beta)
        self.small_d = [small_d[tj] for tj in self.two_js]
        # phase tables exp(i m alpha), exp(i m gamma) per representation
        self.phase_alpha = [np.exp(1j * np.multiply.outer(alpha, magnetic_numbers(tj))) for tj in self.two_js]
        self.phase_gamma = [np.exp(1j * np.multiply.outer(gamma, magnetic_numbers(tj))) for tj in self.two_js]

    def _two_j(self, rep: Representation) -> int:
        if self.grid.spec.kind is GroupKind.SU2:
            return rep.index[0]
        return 2 * rep.index[0]

    def _forward_block(self, position: int, samples: np.ndarray) -> np.ndarray:
        ea = self.phase_alpha[position] * self.w_alpha[:, None]
        eg = self.phase_gamma[position] * self.w_gamma[:, None]
        # g[beta, b, a] = sum_{alpha, gamma} f exp(i m_b alpha) exp(i m_a gamma)
        partial = np.einsum("xyz,xb,za->yba", samples, ea, eg, optimize=True)
        block = np.einsum("y,yba,yba->ab", self.w_beta, self.small_d[position], partial, optimize=True)
        return block.reshape(-1)

    def _inverse_block(self, position: int, data: np.ndarray) -> np.ndarray:
        rep = self.table.reps[position]
        block = data[self.table.slices[position]].reshape(rep.dim, rep.dim)
        h = self.small_d[position] * block.T[None, :, :]
        ea = np.conj(self.phase_alpha[position])
        eg = np.conj(self.phase_gamma[position])
        return rep.dim * np.einsum("xa,yab,zb->xyz", ea, h, eg, optimize=True)

    def _map(self, fn, count: int) -> List[np.ndarray]:
        if self.threads == 1 or count < 2:
            return [fn(i) for i in range(count)]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            # map preserves order, so reductions below stay deterministic
            return list(pool.map(fn, range(count)))

    def forward(self, samples: np.ndarray) -> np.ndarray:
        blocks = self._map(lambda i: self._forward_block(i, samples), len(self.table.reps))
        return np.concatenate(blocks)

    def inverse(self, data: np.ndarray) -> np.ndarray:
        pieces = self._map(lambda i: self._inverse_block(i, data), len(self.table.reps))
        total = np.zeros(self.grid.shape, dtype=complex)
        for piece in pieces:
            total += piece
        return total


def _configured_threads() -> int:
    from ..config.settings import get_settings

    return get_settings().threads


@lru_cache(maxsize=32)
def _engine(spec: GroupSpec, oversample: float, threads: int):
    grid = make_grid(spec, oversample)
    logger.debug(f"Building transform for {spec.describe()} on grid {grid.shape}")
    if spec.kind is GroupKind.TORUS:
        return _TorusTransform(grid)
    return _WignerTransform(grid, threads)


def _engine_for(grid: QuadratureGrid):
    engine = _engine(grid.spec, grid.oversample, _configured_threads())
    if engine.grid is not grid and engine.grid.shape != grid.shape:
        raise ValueError("grid was not produced by make_grid")
    return engine


def forward_gft(f: GridField) -> SpectralField:
    """Group Fourier transform of grid samples, truncated at the spec's bandlimit."""
    engine = _engine_for(f.grid)
    if f.samples.shape != f.grid.shape:
        raise ValueError(f"sample shape {f.samples.shape} does not match grid {f.grid.shape}")
    return SpectralField(f.spec, engine.forward(f.samples))


def inverse_gft(F: SpectralField, grid: QuadratureGrid) -> GridField:
    """Evaluate the Fourier series of ``F`` at the nodes of ``grid``."""
    if F.spec != grid.spec:
        raise ValueError(f"spec mismatch: field {F.spec.describe()} vs grid {grid.spec.describe()}")
    engine = _engine_for(grid)
    return GridField(grid, engine.inverse(F.data))


# ---------------------------------------------------------------------------
# Norms and multipliers
# ---------------------------------------------------------------------------

def plancherel_norm(F: SpectralField) -> float:
    """L2 norm from coefficients: (sum_xi d_xi ||F(xi)||_HS^2)^(1/2)."""
    table = F.table
    return float(math.sqrt(np.sum(table.dims * np.abs(F.data) ** 2)))


def sobolev_apply(F: SpectralField, s: float) -> SpectralField:
    """Apply (-L)^(s/2): multiply the coefficients at xi by lambda_xi^s."""
    if s < 0:
        raise ValueError(f"sobolev order must be nonnegative, got {s}")
    if s == 0:
        return F
    factors = F.table.lambda2 ** (s / 2.0)
    return F.scale_entries(factors)


def sobolev_norm(F: SpectralField, s: float = 1.0) -> float:
    """H^s norm in the convention ||f||_L2 + ||(-L)^(s/2) f||_L2."""
    return plancherel_norm(F) + plancherel_norm(sobolev_apply(F, s))


def linf_dual_norm(F: SpectralField) -> float:
    """sup over representations of d_xi^(-1/2) ||F(xi)||_HS."""
    table = F.table
    best = 0.0
    for rep, sl in zip(table.reps, table.slices):
        hs = float(np.linalg.norm(F.data[sl]))
        best = max(best, hs / math.sqrt(rep.dim))
    return best


def lq_norm(f: GridField, q: float) -> float:
    """L^q norm by quadrature against the normalised Haar measure."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    magnitude = np.abs(f.samples)
    if math.isinf(q):
        return float(np.max(magnitude))
    return float(np.sum(f.weights * magnitude ** q) ** (1.0 / q))


# ---------------------------------------------------------------------------
# Helpers for data generation
# ---------------------------------------------------------------------------

def random_spectral_field(spec: GroupSpec, rng: np.random.Generator, decay: float = 0.0,
                          scale: float = 1.0) -> SpectralField:
    """Complex Gaussian coefficients damped by (1 + lambda^2)^(-decay/2)."""
    table = mode_table(spec)
    raw = rng.standard_normal(table.size) + 1j * rng.standard_normal(table.size)
    damping = (1.0 + table.lambda2) ** (-decay / 2.0)
    return SpectralField(spec, scale * raw * damping / math.sqrt(2.0))


def real_projection(F: SpectralField, grid: Optional[QuadratureGrid] = None) -> SpectralField:
    """Coefficients of Re f; exact because Re f keeps the bandlimit of f."""
    grid = grid or make_grid(F.spec, 1.0)
    samples = inverse_gft(F, grid)
    return forward_gft(samples.map(np.real))


def fundamental_solution(spec: GroupSpec, t: float, which: int,
                         grid: Optional[QuadratureGrid] = None) -> GridField:
    """Samples of the truncated fundamental solution E0(t, .) or E1(t, .).

    Its coefficient at every representation is ``K_which(t, xi)`` times the
    identity, i.e. the truncated delta at the identity propagated in time.
    """
    from .propagator import propagator_table

    if which not in (0, 1):
        raise ValueError(f"which must be 0 or 1, got {which}")
    table = mode_table(spec)
    values = propagator_table(t, table)
    multiplier = values.k0 if which == 0 else values.k1
    data = np.zeros(table.size, dtype=complex)
    for rep, sl in zip(table.reps, table.slices):
        data[sl] = np.eye(rep.dim).reshape(-1)
    grid = grid or make_grid(spec, 1.0)
    return inverse_gft(SpectralField(spec, data * multiplier), grid)
