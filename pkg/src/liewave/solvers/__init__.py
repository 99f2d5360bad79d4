"""Time evolution: homogeneous propagation, Duhamel operator and Picard iteration."""

from .evolution import (
    CallableForcing,
    CauchyData,
    DifferenceCheck,
    DuhamelOperator,
    EvolutionState,
    ForcingHistory,
    PicardReport,
    SampledForcing,
    SemilinearConfig,
    Theorem1Norms,
    apply_nonlinearity,
    duhamel_apply,
    energy_norms,
    evolve_homogeneous,
    lipschitz_estimate,
    nonlinear_difference_check,
    picard_solve,
    reference_rk4_trajectory,
    theorem1_norms,
    time_quadrature,
    xT_norm,
)

__all__ = [
    "CallableForcing",
    "CauchyData",
    "DifferenceCheck",
    "DuhamelOperator",
    "EvolutionState",
    "ForcingHistory",
    "PicardReport",
    "SampledForcing",
    "SemilinearConfig",
    "Theorem1Norms",
    "apply_nonlinearity",
    "duhamel_apply",
    "energy_norms",
    "evolve_homogeneous",
    "lipschitz_estimate",
    "nonlinear_difference_check",
    "picard_solve",
    "reference_rk4_trajectory",
    "theorem1_norms",
    "time_quadrature",
    "xT_norm",
]
