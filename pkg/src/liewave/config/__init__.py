"""Configuration package: process settings and run-configuration schema."""

from .settings import LiewaveSettings, PathConfig, get_paths, get_settings
from .run_config import (
    AnalysisBlock,
    DataBlock,
    DataPreset,
    Experiment,
    GroupBlock,
    OutputBlock,
    RunConfig,
    SolverBlock,
    load_run_config,
    parse_preset,
)

__all__ = [
    "LiewaveSettings",
    "PathConfig",
    "get_settings",
    "get_paths",
    "AnalysisBlock",
    "DataBlock",
    "DataPreset",
    "Experiment",
    "GroupBlock",
    "OutputBlock",
    "RunConfig",
    "SolverBlock",
    "load_run_config",
    "parse_preset",
]
