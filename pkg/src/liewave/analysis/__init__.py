"""Verification harnesses built on the solvers."""

from .decay import (
    DECAY_RATES,
    DecayReport,
    EstimateVerdict,
    calibration_window,
    data_norms,
    fit_decay_rate,
    norm_series,
    verify_decay_bounds,
)
from .gagliardo_nirenberg import (
    GNCorpusReport,
    GNRatio,
    GNStabilityReport,
    gn_bandlimit_stability,
    gn_corpus_study,
    gn_ratio_check,
    gn_ratio_from_coefficients,
    gn_theta,
)
from .l1_experiment import (
    ChainCheck,
    L1ExperimentReport,
    l1_no_improvement_experiment,
    l1_norm,
    linf_chain_check,
    lowest_mode_field,
    random_chain_corpus,
)

__all__ = [
    "DECAY_RATES",
    "DecayReport",
    "EstimateVerdict",
    "calibration_window",
    "data_norms",
    "fit_decay_rate",
    "norm_series",
    "verify_decay_bounds",
    "GNCorpusReport",
    "GNRatio",
    "GNStabilityReport",
    "gn_bandlimit_stability",
    "gn_corpus_study",
    "gn_ratio_check",
    "gn_ratio_from_coefficients",
    "gn_theta",
    "ChainCheck",
    "L1ExperimentReport",
    "l1_no_improvement_experiment",
    "l1_norm",
    "linf_chain_check",
    "lowest_mode_field",
    "random_chain_corpus",
]
