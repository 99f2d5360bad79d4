"""Coefficient file loading."""

import logging
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

from ..config.settings import LiewaveSettings, get_settings
from ..exceptions import ConfigurationError
from ..spectral.group_spectra import GroupSpec, mode_table
from ..spectral.harmonic import SpectralField

COEFFICIENT_COLUMNS = ["rep", "k", "l", "re", "im"]


class CoefficientLoader:
    """Reads coefficient CSV files (columns rep, k, l, re, im) into spectral fields."""

    def __init__(self, config: Optional[LiewaveSettings] = None, logger: Optional[logging.Logger] = None):
        """Initialize loader with configuration."""
        self.config = config or get_settings()
        self.logger = logger or logging.getLogger(__name__)

    def load_coefficients(self, file_path: Path, spec: GroupSpec) -> SpectralField:
        """
        Load a coefficient file for ``spec``.

        Rows name a representation by its colon-joined index and an entry (k, l)
        of its block. Entries not listed are zero.

        Args:
            file_path: Path to the CSV file
            spec: Group the coefficients belong to

        Returns:
            SpectralField with the listed entries

        Raises:
            ConfigurationError: if the file is missing or malformed
        """
        file_path = Path(file_path)
        if not file_path.is_file():
            raise ConfigurationError(f"Coefficient file not found: {file_path}")
        try:
            df = pd.read_csv(file_path, dtype={"rep": str}, float_precision="round_trip")
        except Exception as e:
            raise ConfigurationError(f"Failed to read coefficient file {file_path.name}: {e}") from e

        missing = [c for c in COEFFICIENT_COLUMNS if c not in df.columns]
        if missing:
            raise ConfigurationError(f"Coefficient file {file_path.name} lacks columns {missing}")

        values = df[["k", "l", "re", "im"]].apply(pd.to_numeric, errors="coerce").to_numpy(dtype=float)
        finite = np.isfinite(values).all(axis=1)
        integral = finite & (values[:, :2] == np.round(values[:, :2])).all(axis=1)
        if not integral.all():
            line = int(np.flatnonzero(~integral)[0]) + 2
            raise ConfigurationError(
                f"{file_path.name}: line {line} needs finite values with integer k and l"
            )

        table = mode_table(spec)
        positions = {rep.label: (rep, sl) for rep, sl in zip(table.reps, table.slices)}
        data = np.zeros(table.size, dtype=complex)
        for label, (k, l, re, im) in zip(df["rep"], values):
            label = str(label).strip()
            if label not in positions:
                raise ConfigurationError(
                    f"{file_path.name}: representation '{label}' is not in the dual of {spec.describe()}"
                )
            rep, sl = positions[label]
            k, l = int(k), int(l)
            if not (0 <= k < rep.dim and 0 <= l < rep.dim):
                raise ConfigurationError(f"{file_path.name}: entry ({k}, {l}) outside a {rep.dim}x{rep.dim} block")
            data[sl.start + k * rep.dim + l] = complex(re, im)

        self.logger.debug(f"Loaded {len(df)} coefficients from {file_path.name}")
        return SpectralField(spec, data)
