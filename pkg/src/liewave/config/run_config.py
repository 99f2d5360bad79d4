"""Run configuration: strict YAML schema for a single experiment."""

import shlex
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..exceptions import ConfigurationError
from ..spectral.group_spectra import GroupKind, GroupSpec, Region
from .settings import LiewaveSettings


class Experiment(str, Enum):
    """Experiments the runner knows about."""

    PLANCHEREL_CHECK = "plancherel_check"
    LINEAR_DECAY = "linear_decay"
    L1_EXPERIMENT = "l1_experiment"
    SEMILINEAR = "semilinear"
    GN_CHECK = "gn_check"
    MULTIPLIER_CHECK = "multiplier_check"


# ---------------------------------------------------------------------------
# Initial-data presets
# ---------------------------------------------------------------------------

PRESET_HELP = {
    "zero": "the zero function",
    "constant": "constant function, optional c=<real> (default 1)",
    "single_mode": "one real mode, L2-normalised: k=<int>[,<int>...] on tori, l=<integer or half-integer> on SU(2)/SO(3)",
    "random": "random bandlimited real field: seed=<int> [decay=<real>] [scale=<real>]",
    "file": "coefficient CSV (columns rep, k, l, re, im): file <path>",
}


@dataclass(frozen=True)
class DataPreset:
    """Parsed form of a preset string such as ``"single_mode k=1"``."""

    name: str
    params: Dict[str, str] = field(default_factory=dict)
    path: Optional[str] = None

    def get_float(self, key: str, default: float) -> float:
        return float(self.params[key]) if key in self.params else default

    def get_int(self, key: str, default: int) -> int:
        return int(self.params[key]) if key in self.params else default

    def wave_vector(self) -> Tuple[int, ...]:
        return tuple(int(part) for part in self.params["k"].split(","))

    def two_l(self) -> int:
        """2l for the ``l=`` parameter; accepts 1/2, 0.5 and integers."""
        value = Fraction(self.params["l"])
        doubled = 2 * value
        if doubled.denominator != 1 or doubled < 0:
            raise ValueError(f"l must be a nonnegative integer or half-integer, got {self.params['l']}")
        return int(doubled)


_ALLOWED_PARAMS = {
    "zero": set(),
    "constant": {"c"},
    "single_mode": {"k", "l"},
    "random": {"seed", "decay", "scale"},
    "file": set(),
}


def parse_preset(text: str) -> DataPreset:
    """Parse a preset string; raises ``ValueError`` on anything unrecognised."""
    tokens = shlex.split(text.strip()) if isinstance(text, str) else []
    if not tokens:
        raise ValueError("empty data preset")
    name, rest = tokens[0], tokens[1:]
    if name not in _ALLOWED_PARAMS:
        raise ValueError(f"unknown data preset '{name}', expected one of {sorted(_ALLOWED_PARAMS)}")
    if name == "file":
        if len(rest) != 1:
            raise ValueError("the file preset takes exactly one path")
        return DataPreset(name, {}, rest[0])

    params: Dict[str, str] = {}
    for token in rest:
        key, sep, value = token.partition("=")
        if not sep or not value:
            raise ValueError(f"malformed parameter '{token}' in preset '{text}'")
        if key not in _ALLOWED_PARAMS[name]:
            raise ValueError(f"preset '{name}' does not accept parameter '{key}'")
        params[key] = value
    preset = DataPreset(name, params)

    # type-check the values now so configs fail at load time
    if name == "constant":
        preset.get_float("c", 1.0)
    elif name == "single_mode":
        if len(params) != 1:
            raise ValueError("single_mode needs exactly one of k=... or l=...")
        if "k" in params:
            preset.wave_vector()
        else:
            preset.two_l()
    elif name == "random":
        if "seed" not in params:
            raise ValueError("random preset needs seed=<int>")
        preset.get_int("seed", 0)
        if preset.get_float("decay", 1.0) < 0:
            raise ValueError("decay must be nonnegative")
        preset.get_float("scale", 1.0)
    return preset


# ---------------------------------------------------------------------------
# Configuration blocks
# ---------------------------------------------------------------------------

class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GroupBlock(_Strict):
    """Which group and where to truncate its dual."""

    kind: GroupKind
    bandlimit: int = Field(ge=1, description="Truncation parameter B")
    dims: Optional[int] = Field(default=None, ge=1, description="Torus dimension n; unit radii unless 'radii' is given")
    radii: Optional[List[float]] = Field(default=None, description="Torus radii, one per axis")

    @model_validator(mode="after")
    def check_radii(self):
        if self.kind is GroupKind.TORUS:
            if self.radii is None and self.dims is not None:
                self.radii = [1.0] * self.dims
            if not self.radii:
                raise ValueError("a torus group needs 'dims' or a nonempty 'radii' list")
            if any(r <= 0 for r in self.radii):
                raise ValueError("torus radii must be positive")
            if self.dims is not None and self.dims != len(self.radii):
                raise ValueError(f"dims = {self.dims} does not match {len(self.radii)} radii")
        elif self.radii is not None or self.dims is not None:
            raise ValueError(f"'dims' and 'radii' are only valid for tori, not {self.kind.value}")
        return self

    def to_spec(self) -> GroupSpec:
        if self.kind is GroupKind.TORUS:
            return GroupSpec.torus(self.radii, self.bandlimit)
        if self.kind is GroupKind.SU2:
            return GroupSpec.su2(self.bandlimit)
        return GroupSpec.so3(self.bandlimit)


class DataBlock(_Strict):
    """Initial data as preset strings, scaled by epsilon."""

    u0: str = "single_mode k=1"
    u1: str = "zero"
    epsilon: float = Field(default=1.0, ge=0.0)

    @field_validator("u0", "u1")
    @classmethod
    def check_preset(cls, v: str) -> str:
        parse_preset(v)
        return v


class SolverBlock(_Strict):
    """Semilinear solver parameters."""

    p: float = Field(default=2.0, gt=1.0)
    T: float = Field(default=0.5, gt=0.0)
    n_time_steps: int = Field(default=20, ge=1)
    picard_tol: float = Field(default=1e-12, gt=0.0)
    picard_max_iters: int = Field(default=50, ge=1)
    oversample: Optional[float] = Field(default=None, ge=2.0, description="Grid oversampling (default: settings.default_oversample)")
    amplitude_ceiling: Optional[float] = Field(default=None, gt=0.0)
    rk4_substeps: int = Field(default=20, ge=1, description="RK4 steps per panel for the reference comparison")
    compare_rk4: bool = True
    rk4_tolerance: float = Field(default=1e-6, gt=0.0)
    halve_T_check: bool = Field(default=True, description="Also solve on T/2 and compare Lipschitz constants of N")


class AnalysisBlock(_Strict):
    """Sampling and tolerance knobs shared by the verification experiments."""

    t_max: float = Field(default=30.0, ge=0.0)
    n_times: int = Field(default=301, ge=1)
    window: Optional[float] = Field(
        default=None, gt=0.0,
        description="Calibration window for decay constants (default max(1, 2.5 / delta1))"
    )
    slack: float = Field(default=1.01, ge=1.0)
    fit_window: Tuple[float, float] = (5.0, 30.0)
    random_sets: int = Field(default=20, ge=0, description="Extra random data sets for linear_decay")
    n_fields: int = Field(default=100, ge=1)
    seed: int = 0
    decay: float = Field(default=1.0, ge=0.0, description="Coefficient damping of random fields")
    oversample: float = Field(default=1.0, ge=1.0)
    tolerance: float = Field(default=1e-10, gt=0.0)
    q: float = Field(default=4.0, ge=2.0)
    gn_decay: float = Field(default=4.0, ge=0.0)
    bandlimit_factor: int = Field(default=2, ge=2)
    gn_growth_tolerance: float = Field(default=0.05, gt=0.0)
    chain_samples: int = Field(default=50, ge=0)
    regions: Optional[List[Region]] = None
    multiplier_tolerance: float = Field(default=0.01, gt=0.0)

    @field_validator("fit_window")
    @classmethod
    def check_fit_window(cls, v):
        if not 0 <= v[0] < v[1]:
            raise ValueError("fit_window must satisfy 0 <= start < end")
        return v


class OutputBlock(_Strict):
    """Where and how results are written."""

    directory: Optional[Path] = Field(default=None, description="Default: <results_dir>/<experiment>")
    formats: List[Literal["csv", "json"]] = Field(default_factory=lambda: ["csv", "json"])
    dump_coefficients: bool = False
    coefficient_stride: int = Field(default=1, ge=1, description="Dump every n-th sampled time")


class RunConfig(_Strict):
    """Complete description of one run."""

    experiment: Experiment
    group: GroupBlock
    name: Optional[str] = None
    data: DataBlock = Field(default_factory=DataBlock)
    solver: SolverBlock = Field(default_factory=SolverBlock)
    analysis: AnalysisBlock = Field(default_factory=AnalysisBlock)
    output: OutputBlock = Field(default_factory=OutputBlock)

    @model_validator(mode="after")
    def check_against_group(self):
        spec = self.group.to_spec()
        if self.reads_initial_data:
            for label in ("u0", "u1"):
                _check_preset_fits(parse_preset(getattr(self.data, label)), spec, label)

        n = spec.n_topological
        if self.experiment is Experiment.SEMILINEAR and not spec.is_torus and self.solver.p > n / (n - 2):
            raise ValueError(f"p = {self.solver.p} exceeds n/(n-2) = {n / (n - 2):g} on {spec.kind.value}")
        if self.experiment is Experiment.GN_CHECK:
            if n < 3:
                raise ValueError("gn_check needs a group of dimension n >= 3")
            if self.analysis.q > 2.0 * n / (n - 2):
                raise ValueError(f"q = {self.analysis.q} exceeds 2n/(n-2) = {2.0 * n / (n - 2):g}")
        if self.experiment in (Experiment.LINEAR_DECAY, Experiment.L1_EXPERIMENT) \
                and self.analysis.fit_window[1] > self.analysis.t_max:
            raise ValueError("fit_window must end at or before t_max")
        return self

    @property
    def spec(self) -> GroupSpec:
        return self.group.to_spec()

    @property
    def reads_initial_data(self) -> bool:
        """Whether the experiment evolves the ``data`` block; the others ignore it."""
        return self.experiment in (Experiment.LINEAR_DECAY, Experiment.SEMILINEAR)

    def echo(self) -> dict:
        """JSON-safe dump that validates back to an equal RunConfig."""
        return self.model_dump(mode="json")

    def resolved_amplitude_ceiling(self, settings: LiewaveSettings) -> float:
        return self.solver.amplitude_ceiling or settings.amplitude_ceiling

    def resolved_oversample(self, settings: LiewaveSettings) -> float:
        return self.solver.oversample or settings.default_oversample


def _check_preset_fits(preset: DataPreset, spec: GroupSpec, label: str) -> None:
    if preset.name != "single_mode":
        return
    if "k" in preset.params:
        if not spec.is_torus:
            raise ValueError(f"{label}: k=... modes are for tori, use l=... on {spec.kind.value}")
        k = preset.wave_vector()
        if len(k) != spec.n_topological:
            raise ValueError(f"{label}: wave vector {k} has the wrong length for {spec.describe()}")
        if max(abs(c) for c in k) > spec.bandlimit:
            raise ValueError(f"{label}: wave vector {k} is outside the bandlimit")
        return
    if spec.is_torus:
        raise ValueError(f"{label}: l=... modes are for SU(2)/SO(3), use k=... on tori")
    two_l = preset.two_l()
    if spec.kind is GroupKind.SO3:
        if two_l % 2:
            raise ValueError(f"{label}: SO(3) has no half-integer l")
        if two_l // 2 > spec.bandlimit:
            raise ValueError(f"{label}: l is outside the bandlimit")
    elif two_l > spec.bandlimit:
        raise ValueError(f"{label}: 2l = {two_l} is outside the bandlimit")


def _format_validation_error(exc: ValidationError) -> List[str]:
    issues = []
    for error in exc.errors():
        where = ".".join(str(part) for part in error["loc"]) or "<root>"
        issues.append(f"{where}: {error['msg']}")
    return issues


def load_run_config(config_path: Union[str, Path]) -> RunConfig:
    """Read and validate a YAML run configuration.

    Raises:
        ConfigurationError: the file is missing or unreadable, is not YAML or fails validation.
    """
    config_path = Path(config_path)
    if not config_path.exists():
        raise ConfigurationError(f"Configuration file not found: {config_path}")
    try:
        with open(config_path, "r", encoding="utf-8") as f:
            raw = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Invalid YAML in configuration file {config_path}: {e}") from e
    except UnicodeDecodeError as e:
        raise ConfigurationError(f"Configuration file {config_path} is not UTF-8 text: {e}") from e
    except OSError as e:
        raise ConfigurationError(f"Cannot read configuration file {config_path}: {e}") from e
    if not isinstance(raw, dict):
        raise ConfigurationError(f"Configuration file {config_path} must contain a mapping")
    try:
        return RunConfig.model_validate(raw)
    except ValidationError as e:
        raise ConfigurationError(
            f"Invalid configuration {config_path}:\n  " + "\n  ".join(_format_validation_error(e))
        ) from e
