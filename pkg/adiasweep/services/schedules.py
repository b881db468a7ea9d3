"""
Sweep schedules and minimal-gap locators.

Landau-Zener kinds return omega_z(t); the others return the normalized
interpolation parameter s(t) in [0, 1]. Every function accepts a scalar or a
numpy array of times and returns the same shape.
"""
import logging
import math
from typing import TYPE_CHECKING, Callable, Optional, Sequence, Tuple, Union

import numpy as np
import numpy.typing as npt

from adiasweep.config import settings
from adiasweep.exceptions import BoundaryMinimumError, ConfigurationError, ScheduleError
from adiasweep.schemas.params import Aqc1Params, LZParams
from adiasweep.schemas.schedule import Schedule, ScheduleKind, check_alpha
from adiasweep.services.search import golden_section_search

if TYPE_CHECKING:
    from adiasweep.models.base import HamiltonianModel

logger = logging.getLogger(__name__)

Times = Union[float, npt.NDArray[np.float64]]


def _check_times(t: Times, T: float) -> np.ndarray:
    times = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(times)) or np.any(times < 0.0) or np.any(times > T):
        raise ScheduleError(f"time must lie in [0, T={T:.12g}], got {t}")
    return times


def _like(t: Times, values: np.ndarray) -> Times:
    return float(values) if np.ndim(t) == 0 else values


def linear_lz(t: Times, p: LZParams, T: float) -> Times:
    """omega_z(t) = -omega0 + v t with v = 2 omega0 / T."""
    times = _check_times(t, T)
    return _like(t, -p.omega0 + 2.0 * p.omega0 * (times / T))


def quadratic_lz(t: Times, p: LZParams, T: float) -> Times:
    """Piecewise parabola with vertex omega_z(t_c) = 0 at t_c = T / 2."""
    times = _check_times(t, T)
    u = 2.0 * (times / T) - 1.0  # t / t_c - 1
    values = np.where(u <= 0.0, -p.omega0 * u**2, p.omega0 * u**2) + 0.0
    return _like(t, values)


def sweep_velocity(t: Times, p: LZParams, T: float) -> Times:
    """|d omega_z / dt| of the quadratic sweep, (2 omega0 / t_c) |t / t_c - 1|.

    The closed form is the exact derivative of `quadratic_lz`; the commonly
    quoted 2 omega0 |t / t_c - 1| omits the 1 / t_c factor.
    """
    times = _check_times(t, T)
    t_c = T / 2.0
    return _like(t, (2.0 * p.omega0 / t_c) * np.abs(times / t_c - 1.0))


def linear_s(t: Times, T: float) -> Times:
    times = _check_times(t, T)
    return _like(t, times / T)


def quadratic_s(t: Times, T: float) -> Times:
    times = _check_times(t, T)
    return _like(t, (times / T) ** 2)


def exp_like_s(t: Times, sched: Schedule) -> Times:
    """Two-branch exponential-like s(t) passing through (t_c, s_c), t_c = s_c T.

    Written with expm1 so that small alpha degrades gracefully to t / T.
    s(0) = 0, s(t_c) = s_c and s(T) = 1 hold exactly.
    """
    if sched.kind is not ScheduleKind.EXP_LIKE:
        raise ScheduleError(f"exp_like_s needs an exp-like schedule, got {sched.kind.value}")
    alpha, s_c, T = sched.alpha, sched.s_c, sched.T
    check_alpha(alpha, s_c)
    times = _check_times(t, T)
    x = times / sched.t_c

    left = s_c * (np.expm1(-alpha * x) / np.expm1(-alpha))
    top = np.expm1(alpha / s_c - alpha)
    right = 1.0 - (1.0 - s_c) * (top - np.expm1(alpha * x - alpha)) / top

    values = np.where(x <= 1.0, left, right)
    values = np.where(times >= T, 1.0, values)
    return _like(t, values)


def sc_analytic(p: Aqc1Params) -> float:
    """Minimal-gap point omega_x^2 / (omega_x^2 + omega_z^2)."""
    return p.omega_x**2 / (p.omega_x**2 + p.omega_z**2)


def gap_analytic(p: Aqc1Params, s: float) -> float:
    return 2.0 * math.sqrt(s**2 * p.omega_z**2 + (1.0 - s) ** 2 * p.omega_x**2)


def sc_numeric(
    gapfn: Callable[[float], float],
    points: Optional[int] = None,
    tol: Optional[float] = None,
    samples: Optional[Sequence[float]] = None,
) -> Tuple[float, float]:
    """Locate the interior minimum of a gap curve on [0, 1].

    A uniform grid scan picks the lowest sample, then golden-section search
    refines within its two neighbours. Assumes a single interior minimum.
    `samples` are gaps already tabulated on the uniform grid; gapfn is then
    only called inside the refined bracket.
    """
    tol = settings.GOLDEN_TOL if tol is None else tol
    if samples is not None:
        gaps = np.asarray(samples, dtype=float)
        points = gaps.shape[0]
        grid = np.linspace(0.0, 1.0, points)
    else:
        points = settings.GAP_GRID_POINTS if points is None else points
        grid = np.linspace(0.0, 1.0, points)
        gaps = np.array([gapfn(float(s)) for s in grid])
    if points < 3:
        raise ConfigurationError(f"gap grid needs at least 3 points, got {points}")

    i = int(np.argmin(gaps))
    if i == 0 or i == points - 1:
        raise BoundaryMinimumError(float(grid[i]), float(gaps[i]))

    lo, hi = golden_section_search(gapfn, float(grid[i - 1]), float(grid[i + 1]), tol)
    s_c = 0.5 * (lo + hi)
    gap_min = gapfn(s_c)
    if gap_min > gaps[i]:
        s_c, gap_min = float(grid[i]), float(gaps[i])

    logger.debug(f"Gap minimum {gap_min:.12g} at s={s_c:.12g} (grid index {i}/{points - 1})")
    return float(s_c), float(gap_min)


def sweep_parameter(schedule: Schedule, model: "HamiltonianModel", t: Times) -> Times:
    """Value of the model's swept parameter at time(s) t under the schedule."""
    kind = schedule.kind
    if kind.sweeps_lz_field:
        if model.kind != "lz":
            raise ScheduleError(f"Schedule {kind.value} only drives the lz model, not {model.kind}")
        if kind is ScheduleKind.LINEAR_LZ:
            return linear_lz(t, model.params, schedule.T)
        return quadratic_lz(t, model.params, schedule.T)

    if kind is ScheduleKind.LINEAR:
        s = linear_s(t, schedule.T)
    elif kind is ScheduleKind.QUADRATIC:
        s = quadratic_s(t, schedule.T)
    elif kind is ScheduleKind.EXP_LIKE:
        s = exp_like_s(t, schedule)
    else:
        s = _like(t, np.zeros_like(_check_times(t, schedule.T)))
    return model.parameter_at(s)
