"""Report persistence: CSV series, coefficient dumps and report.json."""

import json
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from ..config.run_config import OutputBlock
from ..config.settings import LiewaveSettings, get_settings
from ..data.loader import COEFFICIENT_COLUMNS
from ..exceptions import LiewaveError
from ..spectral.harmonic import SpectralField


@dataclass
class ExperimentResult:
    """Everything an experiment produced, before it is written out."""

    experiment: str
    verdicts: Dict[str, bool]
    summary: Dict[str, Any] = field(default_factory=dict)
    series: Dict[str, pd.DataFrame] = field(default_factory=dict)
    coefficients: Dict[str, SpectralField] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.verdicts) and all(self.verdicts.values())

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1


def coefficient_frame(F: SpectralField) -> pd.DataFrame:
    """One row per coefficient entry: rep, k, l, re, im."""
    rows = []
    for rep, sl in zip(F.table.reps, F.table.slices):
        block = F.data[sl].reshape(rep.dim, rep.dim)
        for k in range(rep.dim):
            for l in range(rep.dim):
                rows.append((rep.label, k, l, block[k, l].real, block[k, l].imag))
    return pd.DataFrame(rows, columns=COEFFICIENT_COLUMNS)


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else str(value)
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    return value


class ReportWriter:
    """Writes experiment results with deterministic formatting."""

    def __init__(self, config: Optional[LiewaveSettings] = None, logger: Optional[logging.Logger] = None):
        self.config = config or get_settings()
        self.logger = logger or logging.getLogger(__name__)

    def write_csv(self, df: pd.DataFrame, file_path: Path) -> Path:
        """Write a frame with fixed float formatting and ``\\n`` line endings."""
        df.to_csv(file_path, index=False, float_format=self.config.float_format, lineterminator="\n")
        self.logger.debug(f"Wrote {file_path}")
        return file_path

    def write_report(self, result: ExperimentResult, output: OutputBlock, config_echo: Dict[str, Any],
                     version: str, wall_time: float) -> Dict[str, Path]:
        """
        Write series, coefficient dumps and report.json for one run.

        Args:
            result: Experiment outcome
            output: Output block of the run configuration
            config_echo: JSON-safe dump of the run configuration
            version: Library version string
            wall_time: Elapsed seconds

        Returns:
            Mapping of artifact name to written path

        Raises:
            LiewaveError: if the output directory cannot be written
        """
        directory = Path(output.directory)
        try:
            directory.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise LiewaveError(f"Cannot create output directory {directory}: {e}") from e

        files: Dict[str, Path] = {}
        try:
            if "csv" in output.formats:
                for name, frame in result.series.items():
                    files[name] = self.write_csv(frame, directory / f"{name}.csv")
            if output.dump_coefficients:
                coeff_dir = directory / "coefficients"
                coeff_dir.mkdir(exist_ok=True)
                for name, field_ in result.coefficients.items():
                    files[f"coefficients/{name}"] = self.write_csv(coefficient_frame(field_), coeff_dir / f"{name}.csv")
            if "json" in output.formats:
                report_path = directory / "report.json"
                report = {
                    "experiment": result.experiment,
                    "passed": result.passed,
                    "verdicts": result.verdicts,
                    "summary": result.summary,
                    "config": config_echo,
                    "version": version,
                    "wall_time_seconds": wall_time,
                    "files": sorted(str(p.relative_to(directory)) for p in files.values()),
                }
                with open(report_path, "w", encoding="utf-8", newline="\n") as f:
                    json.dump(_jsonable(report), f, indent=2)
                    f.write("\n")
                files["report"] = report_path
        except OSError as e:
            raise LiewaveError(f"Failed to write results to {directory}: {e}") from e

        self.logger.info(f"Results written to {directory} ({len(files)} files)")
        return files
