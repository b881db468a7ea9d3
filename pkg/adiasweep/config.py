import os
from typing import Tuple

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Runtime settings
    THREADS: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    N_STEPS: int = Field(20000, ge=100)

    # Logging settings
    LOG_LEVEL: str = "INFO"
    LOG_DIR: str = "logs"

    # Linear algebra settings
    MAX_DIM: int = 64
    HERMITIAN_TOL: float = 1e-12
    JACOBI_TOL: float = 1e-13
    JACOBI_MAX_SWEEPS: int = 100
    DEGENERACY_TOL: float = 1e-9

    # Gap locator settings
    GAP_GRID_POINTS: int = 2001
    GOLDEN_TOL: float = 1e-6

    # Exponential-like schedule settings
    EXP_OVERFLOW_CAP: float = 700.0
    ALPHA_RESOLUTION: float = 1e-3
    ALPHA_GRID_MIN: float = 0.05
    ALPHA_GRID_MAX: float = 20.0
    ALPHA_GRID_POINTS: int = 40

    # Short-T windows for the fidelity scans
    LZ_T_WINDOW: Tuple[float, float] = (2.0, 20.0)
    AQC1_T_WINDOW: Tuple[float, float] = (0.05, 0.15)
    FACTOR21_T_WINDOW: Tuple[float, float] = (0.005, 0.045)
    T_GRID_POINTS: int = 10

    model_config = SettingsConfigDict(
        env_prefix="ADIASWEEP_", env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )


settings = Settings()
