from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from adiasweep.config import settings
from adiasweep.exceptions import ScheduleError


class ScheduleKind(str, Enum):
    LINEAR_LZ = "linear-lz"
    QUADRATIC_LZ = "quadratic-lz"
    LINEAR = "linear"
    QUADRATIC = "quadratic"
    EXP_LIKE = "exp-like"
    FROZEN = "frozen"

    @property
    def sweeps_lz_field(self) -> bool:
        return self in (ScheduleKind.LINEAR_LZ, ScheduleKind.QUADRATIC_LZ)


class Schedule(BaseModel):
    """A sweep schedule over total evolution time T."""

    kind: ScheduleKind
    T: float = Field(..., gt=0, allow_inf_nan=False, description="Total evolution time")
    alpha: Optional[float] = Field(None, gt=0, allow_inf_nan=False)
    s_c: Optional[float] = Field(None, gt=0, lt=1)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_exp_like(self) -> "Schedule":
        if self.kind is not ScheduleKind.EXP_LIKE:
            if self.alpha is not None or self.s_c is not None:
                raise ValueError(
                    f"alpha and s_c only apply to exp-like schedules, not {self.kind.value}"
                )
            return self
        if self.alpha is None or self.s_c is None:
            raise ValueError("exp-like schedules need both alpha and s_c")
        check_alpha(self.alpha, self.s_c)
        return self

    @property
    def t_c(self) -> Optional[float]:
        if self.kind is ScheduleKind.EXP_LIKE:
            return self.s_c * self.T
        if self.kind is ScheduleKind.QUADRATIC_LZ:
            return self.T / 2
        return None

    @property
    def schedule_id(self) -> str:
        return self.kind.value


def max_alpha(s_c: float) -> float:
    return settings.EXP_OVERFLOW_CAP * s_c


def check_alpha(alpha: float, s_c: float) -> None:
    """exp(alpha / s_c) must stay representable in double precision."""
    if alpha / s_c > settings.EXP_OVERFLOW_CAP:
        limit = max_alpha(s_c)
        raise ScheduleError(
            f"alpha={alpha:.6g} overflows exp(alpha/s_c) for s_c={s_c:.6g}; "
            f"maximum admissible alpha is {limit:.6g}",
            max_alpha=limit,
        )
