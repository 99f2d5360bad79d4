"""Initial data: presets, coefficient files and run-configuration checks."""

from .loader import COEFFICIENT_COLUMNS, CoefficientLoader
from .presets import InitialDataBuilder, describe_presets
from .validator import RunConfigValidator

__all__ = [
    "COEFFICIENT_COLUMNS",
    "CoefficientLoader",
    "InitialDataBuilder",
    "describe_presets",
    "RunConfigValidator",
]
