"""
Configuration Management - Centralized settings with environment variable support

Uses Pydantic Settings for type-safe configuration with validation.
Supports .env files and environment variables (prefix MATCOL_, nested
sections separated by __).

Environment Variables:
    # Logging
    MATCOL_LOGGING__LEVEL: Logging level (default: INFO)

    # Completion
    MATCOL_COMPLETION__RANK_TOLERANCE: Relative singular value cutoff for rk(A) (default: 1e-9)
    MATCOL_COMPLETION__REGULARIZATION: Tikhonov term for per-column solves (default: 0)
    MATCOL_COMPLETION__SINGULAR_TOLERANCE: Relative eigenvalue cutoff for singular systems (default: 1e-12)
    MATCOL_COMPLETION__DELTA: Failure probability used for theorem thresholds (default: 0.1)

    # Baseline
    MATCOL_BASELINE__PINV_TOLERANCE: Pseudo-inverse truncation for Nystrom (default: 1e-10)

    # Harness
    MATCOL_JOBS: Worker pool size, mirrors --jobs (default: all cores)
    MATCOL_HARNESS__TRIALS: Trials per searched value (default: 10)

    # Storage
    MATCOL_STORAGE__RESULTS_DIR: Experiment output directory (default: results)
"""
import logging
from pathlib import Path
from typing import Optional

from pydantic import AliasChoices, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from matcol import __version__

logger = logging.getLogger(__name__)


class LoggingConfig(BaseSettings):
    """Logging configuration"""
    level: str = Field(default="INFO", description="Logging level")
    format: str = Field(
        default="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        description="Log record format",
    )

    @field_validator("level")
    @classmethod
    def validate_level(cls, v: str) -> str:
        """Validate log level"""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        v_upper = v.upper()
        if v_upper not in valid_levels:
            raise ValueError(f"level must be one of {valid_levels}")
        return v_upper


class CompletionDefaults(BaseSettings):
    """Numerical defaults for the completion algorithm"""
    rank_tolerance: float = Field(default=1e-9, gt=0.0, lt=1.0, description="sigma_k > tol * sigma_1 counts toward rk(A)")
    regularization: float = Field(default=0.0, ge=0.0, description="Tikhonov term added to every per-column Gram matrix")
    fallback_regularization_scale: float = Field(default=1e-10, gt=0.0, description="Fallback term is scale * s / m")
    singular_tolerance: float = Field(default=1e-12, gt=0.0, lt=1.0, description="lambda_min <= tol * lambda_max is singular")
    delta: float = Field(default=0.1, gt=0.0, lt=1.0, description="Failure probability for theorem thresholds")


class BaselineConfig(BaseSettings):
    """Nystrom baseline configuration"""
    pinv_tolerance: float = Field(default=1e-10, gt=0.0, lt=1.0, description="Drop sigma_k(W) below tol * sigma_1(W)")


class HarnessConfig(BaseSettings):
    """Experiment harness configuration"""
    jobs: Optional[int] = Field(
        default=None,
        description="Worker pool size (None = all cores)",
        validation_alias=AliasChoices("MATCOL_JOBS", "jobs"),
    )
    trials: int = Field(default=10, ge=1, description="Trials per searched value")
    success_threshold: float = Field(default=1e-8, gt=0.0, description="Relative Frobenius error counted as exact")
    fixed_multiplier: float = Field(default=2.0, gt=0.0, description="Non-searched parameter = multiplier * theorem threshold")
    theorem_constant: float = Field(default=7.0, gt=0.0, description="Constant of the exact-recovery thresholds")
    additive_constant: float = Field(default=64.0, gt=0.0, description="Constant of the additive-error column bound")

    @field_validator("jobs")
    @classmethod
    def validate_jobs(cls, v: Optional[int]) -> Optional[int]:
        """Positive worker counts only; -1 keeps the joblib meaning of all cores"""
        if v is not None and (v == 0 or v < -1):
            raise ValueError("jobs must be positive or -1")
        return v


class StorageConfig(BaseSettings):
    """
    Storage paths configuration

    Directory Structure:
        results/
        ├── exact_recovery_<hash>_seed<seed>.json
        ├── exact_recovery_<hash>_seed<seed>.csv
        ├── lowrank_compare_<hash>_seed<seed>.json
        └── ...manifest.json
    """
    results_dir: Path = Field(default=Path("results"), description="Experiment output directory")

    def ensure_directories(self) -> None:
        """Create the results directory on demand"""
        self.results_dir.mkdir(parents=True, exist_ok=True)


class Settings(BaseSettings):
    """Main application settings"""
    app_name: str = Field(default="matcol", description="Application name")
    app_version: str = Field(default=__version__, description="Application version")

    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    completion: CompletionDefaults = Field(default_factory=CompletionDefaults)
    baseline: BaselineConfig = Field(default_factory=BaselineConfig)
    harness: HarnessConfig = Field(default_factory=HarnessConfig)
    storage: StorageConfig = Field(default_factory=StorageConfig)

    model_config = SettingsConfigDict(
        env_prefix="MATCOL_",
        env_file=".env",
        env_file_encoding="utf-8",
        env_nested_delimiter="__",
        case_sensitive=False,
        extra="ignore",
    )


# Global settings instance
_settings: Settings | None = None


def get_settings() -> Settings:
    """
    Get application settings (singleton pattern)

    Returns:
        Settings instance
    """
    global _settings
    if _settings is None:
        _settings = Settings()
        logger.debug(f"Settings loaded: jobs={_settings.harness.jobs}, results_dir={_settings.storage.results_dir}")
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next get_settings() re-reads the environment"""
    global _settings
    _settings = None
