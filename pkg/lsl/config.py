# lsl/config.py
import logging
import sys
from pathlib import Path

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load .env from the working directory if it exists
env_path = Path(".env")
if env_path.exists():
    load_dotenv(env_path)
else:
    load_dotenv()

logger = logging.getLogger(__name__)


class Tolerances(BaseModel):
    """Numerical thresholds shared by every operation."""

    model_config = ConfigDict(frozen=True)

    herm: float = Field(default=1e-9, gt=0)
    unit: float = Field(default=1e-9, gt=0)
    rank: float = Field(default=1e-6, gt=0)
    phase: float = Field(default=1e-7, gt=0)
    kernel: float = Field(default=1e-9, gt=0)
    angle: float = Field(default=1e-7, gt=0)
    limit: float = Field(default=1e-6, gt=0)
    lagrangian: float = Field(default=1e-8, gt=0)


class Settings(BaseSettings):
    app_name: str = "lsl"
    version: str = "v1.0"
    environment: str = Field(default="production")
    debug: bool = Field(default=False)
    log_level: str = Field(default="INFO")

    seed: int = Field(default=0)
    threads: int = Field(default=1, ge=1)

    tol_herm: float = Field(default=1e-9, gt=0)
    tol_unit: float = Field(default=1e-9, gt=0)
    tol_rank: float = Field(default=1e-6, gt=0)
    tol_phase: float = Field(default=1e-7, gt=0)
    tol_kernel: float = Field(default=1e-9, gt=0)
    tol_angle: float = Field(default=1e-7, gt=0)
    tol_limit: float = Field(default=1e-6, gt=0)
    tol_lagrangian: float = Field(default=1e-8, gt=0)

    witness_budget: int = Field(default=64, ge=0)
    witness_magnitude: float = Field(default=2.0, gt=0)
    horizon_factor: float = Field(default=60.0, gt=0)
    overflow_guard: float = Field(default=350.0, gt=0)

    model_config = SettingsConfigDict(
        env_prefix="LSL_",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    @field_validator("threads", mode="before")
    def parse_threads(cls, v):
        """Parse LSL_THREADS; absent or empty means single-threaded."""
        if v is None:
            return 1
        if isinstance(v, str):
            v = v.strip()
            if not v:
                return 1
            try:
                v = int(v)
            except ValueError:
                logger.warning(f"Invalid LSL_THREADS value: {v!r}; using 1")
                return 1
        if not isinstance(v, int) or v < 1:
            logger.warning(f"LSL_THREADS must be a positive integer, got {v!r}; using 1")
            return 1
        return v

    @field_validator("log_level", mode="before")
    def parse_log_level(cls, v):
        if not v:
            return "INFO"
        v = str(v).strip().upper()
        if v not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            logger.warning(f"Unknown LSL_LOG_LEVEL {v!r}; using INFO")
            return "INFO"
        return v

    @property
    def tolerances(self) -> Tolerances:
        return Tolerances(
            herm=self.tol_herm,
            unit=self.tol_unit,
            rank=self.tol_rank,
            phase=self.tol_phase,
            kernel=self.tol_kernel,
            angle=self.tol_angle,
            limit=self.tol_limit,
            lagrangian=self.tol_lagrangian,
        )


def resolve_tolerances(tol: Tolerances | None) -> Tolerances:
    return tol if tol is not None else settings.tolerances


# Create settings instance
try:
    settings = Settings()
    logger.debug(f"Loaded config for {settings.app_name} {settings.version}")
    logger.debug(f"Threads: {settings.threads}, seed: {settings.seed}")
except Exception as e:
    logger.error(f"❌ Failed to load settings: {e}")
    sys.exit(3)
