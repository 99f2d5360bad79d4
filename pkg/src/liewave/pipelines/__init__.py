"""Pipelines that run experiments and persist their reports."""

from .experiments import ExperimentPipeline
from .reporting import ExperimentResult, ReportWriter, coefficient_frame

__all__ = ["ExperimentPipeline", "ExperimentResult", "ReportWriter", "coefficient_frame"]
