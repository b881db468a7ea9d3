import asyncio
import logging
import math
from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from adiasweep.config import settings
from adiasweep.exceptions import ConfigurationError, NumericalError, ScanError
from adiasweep.models.base import HamiltonianModel
from adiasweep.schemas.analysis import (
    CROSSING_ORDER,
    OPTIMIZED_EXP_LIKE_ID,
    AlphaOptimum,
    CrossingOrder,
    FidelityRecord,
    ScanSpec,
)
from adiasweep.schemas.evolution import EvolutionSpec
from adiasweep.schemas.schedule import Schedule, ScheduleKind, check_alpha
from adiasweep.services.evolution import evolve
from adiasweep.services.search import golden_section_search

logger = logging.getLogger(__name__)

# Schedule kinds compared in the fidelity scans when none are requested
DEFAULT_SCHEDULES = {
    "lz": [ScheduleKind.LINEAR_LZ, ScheduleKind.QUADRATIC_LZ],
    "aqc1": [ScheduleKind.LINEAR, ScheduleKind.QUADRATIC, ScheduleKind.EXP_LIKE],
    "factor21": [ScheduleKind.LINEAR, ScheduleKind.QUADRATIC, ScheduleKind.EXP_LIKE],
}


def default_t_grid(model: HamiltonianModel, points: Optional[int] = None) -> List[float]:
    """Short-T window where the schedules differ most for this model."""
    windows = {
        "lz": settings.LZ_T_WINDOW,
        "aqc1": settings.AQC1_T_WINDOW,
        "factor21": settings.FACTOR21_T_WINDOW,
    }
    lo, hi = windows[model.kind]
    return np.linspace(lo, hi, points or settings.T_GRID_POINTS).tolist()


def final_fidelity(model: HamiltonianModel, schedule: Schedule, n_steps: int) -> float:
    spec = EvolutionSpec(model=model, schedule=schedule, n_steps=n_steps)
    return evolve(spec).final_fidelity


class ScanService:
    """Runs independent evolutions concurrently and collects fidelity records."""

    def __init__(self, threads: Optional[int] = None, n_steps: Optional[int] = None):
        self.threads = threads or settings.THREADS
        self.n_steps = n_steps or settings.N_STEPS

    async def _evaluate(
        self,
        semaphore: asyncio.Semaphore,
        model: HamiltonianModel,
        schedule: Schedule,
        n_steps: int,
    ) -> float:
        async with semaphore:
            try:
                return await asyncio.to_thread(final_fidelity, model, schedule, n_steps)
            except NumericalError as e:
                logger.error(
                    f"Evolution failed: {e}",
                    extra={"schedule": schedule.schedule_id, "T": schedule.T},
                )
                raise ScanError(schedule.schedule_id, schedule.T, e) from e

    async def _optimize(
        self,
        semaphore: asyncio.Semaphore,
        model: HamiltonianModel,
        T: float,
        alpha_grid: Sequence[float],
        n_steps: int,
        s_c: float,
    ) -> AlphaOptimum:
        alphas = sorted(float(a) for a in alpha_grid)
        if not alphas:
            raise ConfigurationError("alpha grid is empty")
        for alpha in alphas:
            check_alpha(alpha, s_c)

        def schedule_for(alpha: float) -> Schedule:
            return Schedule(kind=ScheduleKind.EXP_LIKE, T=T, alpha=alpha, s_c=s_c)

        fidelities = await asyncio.gather(
            *(self._evaluate(semaphore, model, schedule_for(a), n_steps) for a in alphas)
        )
        # argmax keeps the first maximum, i.e. the smallest alpha on ties
        i = int(np.argmax(fidelities))
        best_alpha, best_F = alphas[i], float(fidelities[i])
        at_boundary = i == 0 or i == len(alphas) - 1

        lo, hi = alphas[max(i - 1, 0)], alphas[min(i + 1, len(alphas) - 1)]
        if hi - lo > settings.ALPHA_RESOLUTION:

            def infidelity(alpha: float) -> float:
                return -final_fidelity(model, schedule_for(alpha), n_steps)

            async with semaphore:
                try:
                    a, b = await asyncio.to_thread(
                        golden_section_search, infidelity, lo, hi, settings.ALPHA_RESOLUTION
                    )
                    refined_alpha = 0.5 * (a + b)
                    refined_F = await asyncio.to_thread(
                        final_fidelity, model, schedule_for(refined_alpha), n_steps
                    )
                except NumericalError as e:
                    raise ScanError(OPTIMIZED_EXP_LIKE_ID, T, e) from e
            if refined_F > best_F:
                best_alpha, best_F = refined_alpha, refined_F

        if at_boundary:
            logger.warning(
                "Optimal alpha sits at the edge of the grid",
                extra={"T": T, "alpha_best": best_alpha, "model": model.model_id},
            )
        logger.debug(f"T={T:.6g}: alpha_best={best_alpha:.6g}, F={best_F:.12g}")
        return AlphaOptimum(
            T=T, alpha_best=best_alpha, fidelity_best=best_F, at_boundary=at_boundary, s_c=s_c
        )

    async def optimize_alpha(
        self,
        model: HamiltonianModel,
        T: float,
        alpha_grid: Sequence[float],
        n_steps: Optional[int] = None,
    ) -> AlphaOptimum:
        """Best exponential-like curvature alpha at fixed T: grid scan plus golden refinement."""
        s_c = await asyncio.to_thread(model.critical_point)
        semaphore = asyncio.Semaphore(self.threads)
        return await self._optimize(semaphore, model, T, alpha_grid, n_steps or self.n_steps, s_c)

    async def optimize_alpha_scan(
        self,
        model: HamiltonianModel,
        T_values: Sequence[float],
        alpha_grid: Sequence[float],
        n_steps: Optional[int] = None,
    ) -> List[AlphaOptimum]:
        s_c = await asyncio.to_thread(model.critical_point)
        semaphore = asyncio.Semaphore(self.threads)
        steps = n_steps or self.n_steps
        return list(
            await asyncio.gather(
                *(self._optimize(semaphore, model, T, alpha_grid, steps, s_c) for T in T_values)
            )
        )

    async def scan_fidelity(self, spec: ScanSpec) -> List[FidelityRecord]:
        """One record per (schedule, T); exp-like adds per-alpha or optimized rows."""
        model = spec.model
        semaphore = asyncio.Semaphore(self.threads)
        logger.info(
            f"Scanning {model.model_id}: {len(spec.schedules)} schedules, "
            f"{len(spec.T_values)} T values",
            extra={"n_steps": spec.n_steps, "threads": self.threads},
        )

        jobs = []  # (schedule_id, alpha, T, awaitable)
        for kind in spec.schedules:
            if kind is not ScheduleKind.EXP_LIKE:
                for T in spec.T_values:
                    schedule = Schedule(kind=kind, T=T)
                    job = self._evaluate(semaphore, model, schedule, spec.n_steps)
                    jobs.append((kind.value, None, T, job))
                continue

            s_c = await asyncio.to_thread(model.critical_point)
            if spec.optimize_alpha:
                for T in spec.T_values:
                    jobs.append(
                        (
                            OPTIMIZED_EXP_LIKE_ID,
                            None,
                            T,
                            self._optimize(semaphore, model, T, spec.alpha_grid, spec.n_steps, s_c),
                        )
                    )
            fixed = spec.fixed_alphas or ([] if spec.optimize_alpha else spec.alpha_grid)
            for alpha in fixed:
                for T in spec.T_values:
                    schedule = Schedule(kind=kind, T=T, alpha=alpha, s_c=s_c)
                    job = self._evaluate(semaphore, model, schedule, spec.n_steps)
                    jobs.append((kind.value, alpha, T, job))

        results = await asyncio.gather(*(job[3] for job in jobs))

        records = []
        for (schedule_id, alpha, T, _), result in zip(jobs, results):
            if isinstance(result, AlphaOptimum):
                alpha, F = result.alpha_best, result.fidelity_best
            else:
                F = result
            records.append(
                FidelityRecord(
                    model_id=model.model_id, schedule_id=schedule_id, T=T, alpha=alpha, fidelity=F
                )
            )
        return sort_records(records)


def sort_records(records: List[FidelityRecord]) -> List[FidelityRecord]:
    """Canonical order: schedule, then alpha (fixed-alpha curves), then T."""
    return sorted(
        records,
        key=lambda r: (
            r.schedule_id,
            r.alpha if r.alpha is not None and r.schedule_id != OPTIMIZED_EXP_LIKE_ID else 0.0,
            r.T,
        ),
    )


def curve_id(record: FidelityRecord) -> str:
    if record.alpha is None or record.schedule_id == OPTIMIZED_EXP_LIKE_ID:
        return record.schedule_id
    return f"{record.schedule_id}[alpha={record.alpha:.12g}]"


def crossing_time(records: List[FidelityRecord], F_target: float) -> Dict[str, Optional[float]]:
    """Smallest T reaching F_target per curve, linearly interpolated between grid points.

    Curves that never reach the target map to None.
    """
    if not records:
        raise ConfigurationError("crossing_time needs at least one fidelity record")

    curves: Dict[str, List[Tuple[float, float]]] = defaultdict(list)
    for record in records:
        curves[curve_id(record)].append((record.T, record.fidelity))

    crossings: Dict[str, Optional[float]] = {}
    for key, points in curves.items():
        points.sort()
        crossings[key] = None
        for i, (T, F) in enumerate(points):
            if F < F_target:
                continue
            if i == 0:
                crossings[key] = T
            else:
                T_prev, F_prev = points[i - 1]
                crossings[key] = T_prev + (F_target - F_prev) * (T - T_prev) / (F - F_prev)
            break
    return crossings


def crossing_order(
    crossings: Dict[str, Optional[float]], order: Sequence[str] = CROSSING_ORDER
) -> CrossingOrder:
    """Check that crossing times are non-decreasing along `order` (fastest curve first).

    Curves that never reach the target count as infinitely slow; curves missing
    from `crossings` are skipped.
    """
    present = [key for key in order if key in crossings]
    times = [math.inf if crossings[key] is None else crossings[key] for key in present]
    if len(present) < 2 or all(math.isinf(T) for T in times):
        return CrossingOrder.UNDETERMINED

    if all(a <= b for a, b in zip(times, times[1:])):
        return CrossingOrder.HOLDS
    logger.warning(
        "Crossing times break the expected schedule order",
        extra={"order": present, "crossings": {key: crossings[key] for key in present}},
    )
    return CrossingOrder.VIOLATED
