from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from adiasweep.config import settings
from adiasweep.models import ModelSpec
from adiasweep.schemas.schedule import ScheduleKind

OPTIMIZED_EXP_LIKE_ID = "exp-like-opt"

# Expected crossing-time order, fastest first
CROSSING_ORDER = (OPTIMIZED_EXP_LIKE_ID, ScheduleKind.LINEAR.value, ScheduleKind.QUADRATIC.value)


def default_alpha_grid() -> List[float]:
    return np.geomspace(
        settings.ALPHA_GRID_MIN, settings.ALPHA_GRID_MAX, settings.ALPHA_GRID_POINTS
    ).tolist()


class ScanSpec(BaseModel):
    """Fidelity-versus-T scan over a set of schedules for one model."""

    model: ModelSpec
    schedules: List[ScheduleKind] = Field(..., min_length=1)
    T_values: List[float] = Field(..., min_length=1)
    alpha_grid: List[float] = Field(default_factory=default_alpha_grid, min_length=1)
    fixed_alphas: List[float] = Field(default_factory=list)
    optimize_alpha: bool = True
    n_steps: int = Field(default_factory=lambda: settings.N_STEPS, ge=100)

    model_config = ConfigDict(frozen=True)

    @field_validator("T_values")
    @classmethod
    def check_t_values(cls, values: List[float]) -> List[float]:
        if any(not T > 0 for T in values):
            raise ValueError("T values must be positive")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("T values must be strictly ascending")
        return values

    @field_validator("alpha_grid", "fixed_alphas")
    @classmethod
    def check_alphas(cls, values: List[float]) -> List[float]:
        if any(not a > 0 for a in values):
            raise ValueError("alpha values must be positive")
        return sorted(values)


class FidelityRecord(BaseModel):
    model_id: str
    schedule_id: str
    T: float
    alpha: Optional[float] = None
    fidelity: float = Field(..., ge=0.0, le=1.0 + 1e-12)

    model_config = ConfigDict(frozen=True, protected_namespaces=())


class AlphaOptimum(BaseModel):
    T: float
    alpha_best: float
    fidelity_best: float
    at_boundary: bool = False
    s_c: float


class CrossingOrder(str, Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    UNDETERMINED = "undetermined"
