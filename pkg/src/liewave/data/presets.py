"""Initial data built from preset strings."""

import logging
import math
from pathlib import Path
from typing import Optional

import numpy as np

from ..config.run_config import PRESET_HELP, DataBlock, DataPreset, parse_preset
from ..config.settings import LiewaveSettings, get_settings
from ..solvers.evolution import CauchyData
from ..spectral.group_spectra import GroupKind, GroupSpec
from ..spectral.harmonic import SpectralField, plancherel_norm, random_spectral_field, real_projection
from .loader import CoefficientLoader


class InitialDataBuilder:
    """Turns the data block of a run configuration into Cauchy data."""

    def __init__(self, config: Optional[LiewaveSettings] = None, logger: Optional[logging.Logger] = None,
                 base_dir: Optional[Path] = None):
        self.config = config or get_settings()
        self.logger = logger or logging.getLogger(__name__)
        # relative coefficient-file paths are resolved against this directory
        self.base_dir = Path(base_dir) if base_dir else Path.cwd()
        self.loader = CoefficientLoader(self.config, self.logger)

    def build_field(self, preset: DataPreset, spec: GroupSpec) -> SpectralField:
        """Build one field from a parsed preset."""
        if preset.name == "zero":
            return SpectralField.zeros(spec)
        if preset.name == "constant":
            return SpectralField.constant(spec, preset.get_float("c", 1.0))
        if preset.name == "single_mode":
            return self._single_mode(preset, spec)
        if preset.name == "random":
            rng = np.random.default_rng(preset.get_int("seed", 0))
            raw = random_spectral_field(spec, rng, preset.get_float("decay", 1.0), preset.get_float("scale", 1.0))
            return real_projection(raw)
        path = Path(preset.path)
        if not path.is_absolute():
            path = self.base_dir / path
        return self.loader.load_coefficients(path, spec)

    def _single_mode(self, preset: DataPreset, spec: GroupSpec) -> SpectralField:
        if "k" in preset.params:
            k = preset.wave_vector()
            if not any(k):
                return SpectralField.constant(spec)
            # sqrt(2) cos(k . x)
            minus_k = tuple(-c for c in k)
            amplitude = 1.0 / math.sqrt(2.0)
            return SpectralField.from_mapping(spec, {k: [[amplitude]], minus_k: [[amplitude]]})

        two_l = preset.two_l()
        index = (two_l,) if spec.kind is GroupKind.SU2 else (two_l // 2,)
        dim = two_l + 1
        block = np.zeros((dim, dim), dtype=complex)
        block[0, 0] = 1.0 / math.sqrt(dim)
        field_ = real_projection(SpectralField.from_mapping(spec, {index: block}))
        return field_ * (1.0 / plancherel_norm(field_))

    def build_field_from_text(self, text: str, spec: GroupSpec) -> SpectralField:
        return self.build_field(parse_preset(text), spec)

    def build_cauchy(self, block: DataBlock, spec: GroupSpec) -> CauchyData:
        """
        Build (u0, u1, epsilon) from a data block.

        Args:
            block: Data block with preset strings
            spec: Group to build the fields on

        Returns:
            CauchyData ready for evolution
        """
        u0 = self.build_field_from_text(block.u0, spec)
        u1 = self.build_field_from_text(block.u1, spec)
        self.logger.info(f"Initial data on {spec.describe()}: u0='{block.u0}', u1='{block.u1}', eps={block.epsilon}")
        return CauchyData(u0, u1, block.epsilon)


def describe_presets() -> str:
    """Human-readable list of the available presets."""
    width = max(len(name) for name in PRESET_HELP)
    return "\n".join(f"{name:<{width}}  {text}" for name, text in PRESET_HELP.items())
