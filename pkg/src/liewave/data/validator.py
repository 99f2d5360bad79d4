"""Run configuration validation utilities."""

import os
from pathlib import Path
from typing import List, Tuple

from ..config.run_config import RunConfig, parse_preset
from ..config.settings import LiewaveSettings
from ..exceptions import ConfigurationError
from ..spectral.group_spectra import basis_size
from ..spectral.harmonic import make_grid


class RunConfigValidator:
    """Checks that a parsed run configuration can actually be executed."""

    # above this many grid nodes a run stops being desk-scale
    max_grid_nodes = 5_000_000

    def __init__(self, config: LiewaveSettings):
        """Initialize validator with configuration."""
        self.config = config

    def validate_config(self, run_config: RunConfig, base_dir: Path) -> Tuple[bool, List[str]]:
        """
        Validate data sources and problem size of a run configuration.

        Args:
            run_config: Parsed configuration
            base_dir: Directory relative coefficient files are resolved against

        Returns:
            Tuple of (is_valid, list_of_issues)
        """
        issues = []
        spec = run_config.spec

        for label in ("u0", "u1") if run_config.reads_initial_data else ():
            preset = parse_preset(getattr(run_config.data, label))
            if preset.name == "file":
                path = Path(preset.path)
                if not path.is_absolute():
                    path = base_dir / path
                if not path.is_file():
                    issues.append(f"{label}: coefficient file does not exist: {path}")
                elif path.suffix.lower() != ".csv":
                    issues.append(f"{label}: coefficient file is not a CSV file: {path}")

        oversample = max(run_config.analysis.oversample, run_config.resolved_oversample(self.config))
        try:
            nodes = make_grid(spec, oversample).size
        except ValueError as e:
            issues.append(str(e))
        else:
            if nodes > self.max_grid_nodes:
                issues.append(f"grid with {nodes} nodes exceeds the limit of {self.max_grid_nodes}")

        if basis_size(spec) < 2 and run_config.experiment.value in ("linear_decay", "multiplier_check"):
            issues.append("the truncated dual has only the trivial representation")

        return len(issues) == 0, issues

    def validate_output_directory(self, directory: Path) -> Tuple[bool, List[str]]:
        """
        Validate that results can be written to a directory.

        Args:
            directory: Target directory (created later if missing)

        Returns:
            Tuple of (is_valid, list_of_issues)
        """
        issues = []
        directory = Path(directory)
        existing = directory
        while not existing.exists() and existing != existing.parent:
            existing = existing.parent

        if directory.exists() and not directory.is_dir():
            issues.append(f"Output path is not a directory: {directory}")
        elif not os.access(existing, os.W_OK):
            issues.append(f"Output directory is not writable: {existing}")

        return len(issues) == 0, issues

    def raise_for_issues(self, run_config: RunConfig, base_dir: Path) -> None:
        """Raise ``ConfigurationError`` listing every issue found."""
        ok_config, config_issues = self.validate_config(run_config, base_dir)
        ok_output, output_issues = self.validate_output_directory(run_config.output.directory)
        if not (ok_config and ok_output):
            raise ConfigurationError("; ".join(config_issues + output_issues))
