"""
Time-dependent Schrodinger propagation.

The propagator is a product of midpoint exponentials
U_k = exp(-i H(t_k + dt/2) dt) with dt = T / n_steps, exactly unitary per step.
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from adiasweep.config import settings
from adiasweep.exceptions import DegenerateGroundStateError, DimensionError, NumericalError
from adiasweep.hermlin import ComplexMatrix, StateVector, eig_hermitian, unitary_steps
from adiasweep.models.base import HamiltonianModel
from adiasweep.schemas.evolution import (
    EvolutionSpec,
    GapPoint,
    InstantaneousSample,
    Trajectory,
)
from adiasweep.schemas.schedule import Schedule
from adiasweep.services.schedules import sc_numeric, sweep_parameter

logger = logging.getLogger(__name__)

NORM_TOL = 1e-10


def ground_state(H: ComplexMatrix) -> StateVector:
    """Lowest eigenvector of H; the ground level must be non-degenerate."""
    es = eig_hermitian(H)
    if es.values.shape[0] > 1 and es.gap < settings.DEGENERACY_TOL:
        raise DegenerateGroundStateError(es.gap, settings.DEGENERACY_TOL)
    return es.vectors[:, 0].copy()


def fidelity(psi: StateVector, phi: StateVector) -> float:
    """Survival probability |<psi|phi>|^2."""
    psi = np.asarray(psi)
    phi = np.asarray(phi)
    if psi.shape != phi.shape:
        raise DimensionError(f"State shapes differ: {psi.shape} vs {phi.shape}")
    return float(abs(np.vdot(psi, phi)) ** 2)


def propagate(
    model: HamiltonianModel,
    schedule: Schedule,
    psi0: StateVector,
    n_steps: int,
    record_every: int = 0,
    reverse: bool = False,
) -> Tuple[StateVector, List[int], List[StateVector]]:
    """Apply the midpoint propagators from t=0 to T, or their inverses from T to 0.

    Returns the final state plus the grid indices and states recorded every
    `record_every` steps (the starting point included).
    """
    T = schedule.T
    dt = T / n_steps
    midpoints = (np.arange(n_steps) + 0.5) * dt
    parameters = np.asarray(sweep_parameter(schedule, model, midpoints), dtype=float)
    if not np.all(np.isfinite(parameters)):
        raise NumericalError(f"Schedule {schedule.schedule_id} produced non-finite values")

    stack = model.hamiltonian_stack(parameters)
    if reverse:
        propagators = unitary_steps(stack[::-1], -dt)
    else:
        propagators = unitary_steps(stack, dt)

    psi = np.array(psi0, dtype=np.complex128)
    start = n_steps if reverse else 0
    direction = -1 if reverse else 1

    indices: List[int] = []
    states: List[StateVector] = []
    if record_every:
        indices.append(start)
        states.append(psi.copy())

    for k, U in enumerate(propagators, start=1):
        psi = U @ psi
        if record_every and (k % record_every == 0 or k == n_steps):
            indices.append(start + direction * k)
            states.append(psi.copy())

    norm_error = abs(float(np.linalg.norm(psi)) - 1.0)
    if norm_error > NORM_TOL:
        logger.warning(
            "Norm drift after propagation",
            extra={"schedule": schedule.schedule_id, "T": T, "norm_error": norm_error},
        )
    return psi, indices, states


def evolve(spec: EvolutionSpec) -> Trajectory:
    """Evolve the ground state of H(0) to T and score it against the ground state of H(T)."""
    model, schedule = spec.model, spec.schedule
    T = schedule.T
    x0 = sweep_parameter(schedule, model, 0.0)
    xT = sweep_parameter(schedule, model, T)

    psi0 = ground_state(model.hamiltonian(x0))
    target = ground_state(model.hamiltonian(xT))

    final_state, indices, states = propagate(
        model, schedule, psi0, spec.n_steps, record_every=spec.record_every
    )

    grid = np.linspace(0.0, T, spec.n_steps + 1)
    if indices:
        times = grid[indices]
        norms = np.array([np.linalg.norm(state) for state in states])
    else:
        times = grid[-1:]
        norms = np.array([np.linalg.norm(final_state)])
    parameters = np.atleast_1d(np.asarray(sweep_parameter(schedule, model, times), dtype=float))

    F = fidelity(final_state, target)
    logger.debug(
        f"Evolved {model.model_id} under {schedule.schedule_id} "
        f"(T={T:.6g}, alpha={schedule.alpha}, n_steps={spec.n_steps}): F={F:.12g}"
    )
    return Trajectory(
        times=times,
        parameters=parameters,
        norms=norms,
        states=states if indices else None,
        initial_state=psi0,
        final_state=final_state,
        final_fidelity=F,
    )


def instantaneous_samples(
    model: HamiltonianModel, trajectory: Trajectory
) -> List[InstantaneousSample]:
    """Overlap of each recorded state with the ground state of H at that time."""
    states = trajectory.states or [trajectory.final_state]
    return [
        InstantaneousSample(
            t=float(t),
            parameter=float(x),
            fidelity=fidelity(state, ground_state(model.hamiltonian(float(x)))),
            norm=float(norm),
        )
        for t, x, state, norm in zip(
            trajectory.times, trajectory.parameters, states, trajectory.norms
        )
    ]


def gap_curve(
    model: HamiltonianModel,
    s_grid: Sequence[float],
    normalized: bool = False,
) -> List[GapPoint]:
    """Two lowest levels and their gap along the swept parameter.

    With `normalized`, grid values are s in [0, 1] and are mapped onto the
    model's parameter range; the reported s stays normalized.
    """
    points = []
    for s in s_grid:
        x = model.parameter_at(float(s)) if normalized else float(s)
        es = eig_hermitian(model.hamiltonian(x))
        e0, e1 = float(es.values[0]), float(es.values[1])
        points.append(GapPoint(s=float(s), e0=e0, e1=e1, gap=e1 - e0))
    return points


def minimal_gap(
    model: HamiltonianModel,
    points: Optional[int] = None,
    curve: Optional[Sequence[GapPoint]] = None,
) -> Tuple[float, float]:
    """Normalized minimal-gap location and value from the eigensolver.

    A `curve` tabulated by `gap_curve(..., normalized=True)` on a uniform grid
    over [0, 1] replaces the coarse scan.
    """
    if curve is None:
        return sc_numeric(model.gap_at, points=points)
    return sc_numeric(model.gap_at, samples=[point.gap for point in curve])

