"""Spectral solver and decay verification for the viscoelastic damped wave equation.

Solves u_tt - L u_t + u_t - L u = f(u) on tori, SU(2) and SO(3), where L is
the Laplace-Beltrami operator, exactly in frequency space for the linear part
and by Picard iteration of the Duhamel formula for f(u) = |u|^p.

Main components:
- ExperimentPipeline: runs a configured experiment and writes its report
- spectral: unitary duals, group Fourier transforms, propagators
- solvers: homogeneous evolution, Duhamel operator, Picard iteration
- analysis: decay-bound, L1 and Gagliardo-Nirenberg checks

Example usage:
    from liewave import ExperimentPipeline

    pipeline = ExperimentPipeline.from_file("configs/linear_decay_circle.yaml")
    result = pipeline.run()
    print(result.verdicts)
"""

__version__ = "0.1.0"
__author__ = "garcia"
__email__ = "emmanoelgarsia@gmail.com"

from .config.settings import LiewaveSettings, PathConfig, get_paths, get_settings
from .config.run_config import RunConfig, load_run_config
from .exceptions import ConfigurationError, LiewaveError, NumericalAbort
from .pipelines import ExperimentPipeline, ExperimentResult, ReportWriter

__all__ = [
    # Main interfaces
    "ExperimentPipeline",
    "ExperimentResult",
    "ReportWriter",

    # Configuration
    "LiewaveSettings",
    "PathConfig",
    "RunConfig",
    "load_run_config",
    "get_settings",
    "get_paths",

    # Errors
    "LiewaveError",
    "ConfigurationError",
    "NumericalAbort",
]

# Package metadata
__title__ = "liewave"
__description__ = "Spectral solver and decay-bound verification for damped waves on compact Lie groups"
