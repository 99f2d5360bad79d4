"""Process-level settings for liewave runs."""

from functools import lru_cache
from pathlib import Path

from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class LiewaveSettings(BaseSettings):
    """Settings read from the environment (``LIEWAVE_*``) or a ``.env`` file."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="LIEWAVE_",
        case_sensitive=False,
    )

    # Worker parallelism for per-representation transform work
    threads: int = Field(
        default=1,
        ge=1,
        description="Maximum number of worker threads (LIEWAVE_THREADS)"
    )

    enable_logging: bool = Field(
        default=True,
        description="Whether to enable detailed logging"
    )

    log_level: str = Field(
        default="INFO",
        description="Logging level (DEBUG, INFO, WARNING, ERROR)"
    )

    log_filename: str = Field(
        default="liewave.log",
        description="Log file name inside the logs directory"
    )

    # Numerical defaults
    default_oversample: float = Field(
        default=2.0,
        ge=2.0,
        description="Grid oversampling for nonlinear terms when solver.oversample is not set"
    )

    tau_switch: float = Field(
        default=1e-6,
        gt=0.0,
        description="Distance |1 - lambda^2| below which the resonance-stable propagator form is used"
    )

    amplitude_ceiling: float = Field(
        default=1e6,
        gt=0.0,
        description="Coefficient modulus above which Picard iteration aborts as a blow-up"
    )

    # Report formatting
    float_format: str = Field(
        default="%.17g",
        description="printf-style float format for CSV output"
    )

    @field_validator('log_level', mode='before')
    @classmethod
    def normalize_log_level(cls, v):
        """Accept lower-case level names from the environment."""
        if isinstance(v, str):
            return v.strip().upper()
        return v


class PathConfig(BaseModel):
    """Path configuration for run artifacts."""

    results_dir: Path = Field(
        default=Path("results"),
        description="Parent of the per-experiment directory used when output.directory is not set"
    )

    logs_dir: Path = Field(
        default=Path("logs"),
        description="Directory for log files"
    )

    configs_dir: Path = Field(
        default=Path("configs"),
        description="Directory holding YAML run configurations"
    )

    def create_directories(self) -> None:
        """Create the output directories if they don't exist."""
        for path_value in (self.results_dir, self.logs_dir):
            path_value.mkdir(parents=True, exist_ok=True)


@lru_cache(maxsize=1)
def get_settings() -> LiewaveSettings:
    """Process settings, read from the environment on first use."""
    return LiewaveSettings()


@lru_cache(maxsize=1)
def get_paths() -> PathConfig:
    return PathConfig()
