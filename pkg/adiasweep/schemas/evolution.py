from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from adiasweep.config import settings
from adiasweep.models import ModelSpec
from adiasweep.schemas.schedule import Schedule


class EvolutionSpec(BaseModel):
    model: ModelSpec
    schedule: Schedule
    n_steps: int = Field(default_factory=lambda: settings.N_STEPS, ge=100)
    # record every k steps; 0 keeps the final state only
    record_every: int = Field(0, ge=0)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_pairing(self) -> "EvolutionSpec":
        if self.schedule.kind.sweeps_lz_field and self.model.kind != "lz":
            raise ValueError(
                f"Schedule {self.schedule.kind.value} sweeps omega_z and only drives the lz model"
            )
        return self

    @property
    def T(self) -> float:
        return self.schedule.T


class Trajectory(BaseModel):
    times: np.ndarray
    parameters: np.ndarray
    norms: np.ndarray
    states: Optional[List[np.ndarray]] = None
    initial_state: np.ndarray
    final_state: np.ndarray
    final_fidelity: float = Field(..., ge=0.0, le=1.0 + 1e-12)

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


class GapPoint(BaseModel):
    s: float
    e0: float
    e1: float
    gap: float


class InstantaneousSample(BaseModel):
    """One row of an evolution record: overlap with the ground state of H(t)."""

    t: float
    parameter: float
    fidelity: float
    norm: float
