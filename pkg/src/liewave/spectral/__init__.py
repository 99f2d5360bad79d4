"""Spectral machinery: unitary duals, transforms and propagators."""

from .group_spectra import (
    GroupKind,
    GroupSpec,
    ModeTable,
    Region,
    Representation,
    SpectralGaps,
    basis_size,
    enumerate_dual,
    mode_table,
    region_of,
    spectral_gaps,
)
from .harmonic import (
    GridField,
    QuadratureGrid,
    SpectralField,
    forward_gft,
    fundamental_solution,
    inverse_gft,
    linf_dual_norm,
    lq_norm,
    make_grid,
    plancherel_norm,
    random_spectral_field,
    real_projection,
    sobolev_apply,
    sobolev_norm,
)
from .propagator import (
    MultiplierBoundReport,
    PropagatorValues,
    eval_propagator,
    multiplier_bound_check,
    propagator_ode_oracle,
    propagator_table,
)
from .wigner import wigner_d_explicit, wigner_small_d

__all__ = [
    "GroupKind",
    "GroupSpec",
    "ModeTable",
    "Region",
    "Representation",
    "SpectralGaps",
    "basis_size",
    "enumerate_dual",
    "mode_table",
    "region_of",
    "spectral_gaps",
    "GridField",
    "QuadratureGrid",
    "SpectralField",
    "forward_gft",
    "fundamental_solution",
    "inverse_gft",
    "linf_dual_norm",
    "lq_norm",
    "make_grid",
    "plancherel_norm",
    "random_spectral_field",
    "real_projection",
    "sobolev_apply",
    "sobolev_norm",
    "MultiplierBoundReport",
    "PropagatorValues",
    "eval_propagator",
    "multiplier_bound_check",
    "propagator_ode_oracle",
    "propagator_table",
    "wigner_d_explicit",
    "wigner_small_d",
]
