"""
Dense Hermitian linear algebra for the small (dim <= 64) operators used here.

Conventions: hbar = 1, arrays are complex128, qubit 1 is the most significant
tensor factor and sigma_z |up> = +|up>.
"""
import logging
import math
from typing import Optional

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict

from adiasweep.config import settings
from adiasweep.exceptions import (
    DimensionError,
    EigenSolverError,
    NonHermitianError,
    NumericalError,
)

logger = logging.getLogger(__name__)

ComplexMatrix = npt.NDArray[np.complex128]
StateVector = npt.NDArray[np.complex128]

IDENTITY2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


class EigenSystem(BaseModel):
    """Ascending eigenvalues with eigenvectors as the columns of a unitary matrix."""

    values: np.ndarray
    vectors: np.ndarray

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @property
    def gap(self) -> float:
        """Difference between the two lowest levels."""
        if self.values.shape[0] < 2:
            raise DimensionError("A one-level system has no gap")
        return float(self.values[1] - self.values[0])


def _as_square(H: npt.ArrayLike, name: str = "H") -> ComplexMatrix:
    a = np.array(H, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionError(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    if a.shape[0] > settings.MAX_DIM:
        raise DimensionError(f"{name} has dimension {a.shape[0]} > cap {settings.MAX_DIM}")
    return a


def check_hermitian(H: npt.ArrayLike, tol: Optional[float] = None) -> ComplexMatrix:
    a = _as_square(H)
    tol = settings.HERMITIAN_TOL if tol is None else tol
    deviation = float(np.max(np.abs(a - a.conj().T)))
    if deviation > tol:
        raise NonHermitianError(deviation, tol)
    return a


def _fix_phases(vectors: ComplexMatrix) -> ComplexMatrix:
    # largest-magnitude component real and positive, lowest index on ties
    fixed = vectors.copy()
    for k in range(fixed.shape[1]):
        column = fixed[:, k]
        magnitudes = np.abs(column)
        pivot = int(np.flatnonzero(magnitudes >= magnitudes.max() - 1e-12)[0])
        fixed[:, k] = column * (magnitudes[pivot] / column[pivot])
    return fixed


def eig_hermitian(H: npt.ArrayLike) -> EigenSystem:
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of a[p, q] with a diagonal unitary and
    then applies the real symmetric Jacobi rotation, so W = D R stays unitary.
    Sweeps stop once the off-diagonal Frobenius norm drops below
    JACOBI_TOL * ||H||_F.
    """
    a = check_hermitian(H)
    a = (a + a.conj().T) / 2
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)

    scale = float(np.linalg.norm(a))
    threshold = settings.JACOBI_TOL * scale

    if n > 1 and scale > 0.0:
        for sweep in range(settings.JACOBI_MAX_SWEEPS):
            off = float(np.linalg.norm(a - np.diag(np.diag(a))))
            if off <= threshold:
                logger.debug(f"Jacobi converged after {sweep} sweeps (dim={n}, off={off:.3e})")
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    mag = abs(apq)
                    if mag == 0.0:
                        continue
                    phase = apq / mag
                    cph = phase.conjugate()
                    app = a[p, p].real
                    aqq = a[q, q].real

                    theta = (aqq - app) / (2.0 * mag)
                    t = 1.0 if theta == 0.0 else math.copysign(1.0, theta) / (
                        abs(theta) + math.hypot(theta, 1.0)
                    )
                    c = 1.0 / math.sqrt(t * t + 1.0)
                    s = t * c

                    col_p = a[:, p].copy()
                    col_q = a[:, q].copy()
                    a[:, p] = c * col_p - s * cph * col_q
                    a[:, q] = s * col_p + c * cph * col_q

                    row_p = a[p, :].copy()
                    row_q = a[q, :].copy()
                    a[p, :] = c * row_p - s * phase * row_q
                    a[q, :] = s * row_p + c * phase * row_q

                    a[p, q] = a[q, p] = 0.0
                    a[p, p] = app - t * mag
                    a[q, q] = aqq + t * mag

                    vec_p = v[:, p].copy()
                    vec_q = v[:, q].copy()
                    v[:, p] = c * vec_p - s * cph * vec_q
                    v[:, q] = s * vec_p + c * cph * vec_q
        else:
            off = float(np.linalg.norm(a - np.diag(np.diag(a))))
            if off > threshold:
                raise EigenSolverError(
                    f"Jacobi iteration did not converge after {settings.JACOBI_MAX_SWEEPS} "
                    f"sweeps for {n}x{n} matrix (off-diagonal norm {off:.3e}, "
                    f"diagonal {np.round(np.diag(np.asarray(H)).real, 6).tolist()})"
                )

    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    return EigenSystem(values=values[order], vectors=_fix_phases(v[:, order]))


def unitary_step(H: npt.ArrayLike, dt: float) -> ComplexMatrix:
    """exp(-i H dt) assembled from the eigendecomposition of H."""
    if not math.isfinite(dt):
        raise NumericalError(f"Time step must be finite, got {dt}")
    es = eig_hermitian(H)
    phases = np.exp(-1j * es.values * dt)
    return (es.vectors * phases) @ es.vectors.conj().T


def unitary_steps(H_stack: npt.ArrayLike, dt: float) -> npt.NDArray[np.complex128]:
    """Batched exp(-i H_k dt) for a stack of Hermitian matrices (LAPACK eigh)."""
    if not math.isfinite(dt):
        raise NumericalError(f"Time step must be finite, got {dt}")
    stack = np.asarray(H_stack, dtype=np.complex128)
    if stack.ndim != 3 or stack.shape[1] != stack.shape[2]:
        raise DimensionError(f"Expected a stack of square matrices, got shape {stack.shape}")
    if stack.shape[1] > settings.MAX_DIM:
        raise DimensionError(f"Stack dimension {stack.shape[1]} > cap {settings.MAX_DIM}")
    values, vectors = np.linalg.eigh(stack)
    phases = np.exp(-1j * values * dt)
    return (vectors * phases[:, None, :]) @ np.conj(np.swapaxes(vectors, -1, -2))


def kron(A: npt.ArrayLike, B: npt.ArrayLike) -> ComplexMatrix:
    a = np.asarray(A, dtype=np.complex128)
    b = np.asarray(B, dtype=np.complex128)
    dim = a.shape[0] * b.shape[0]
    if dim > settings.MAX_DIM:
        raise DimensionError(
            f"Tensor product dimension {dim} exceeds cap {settings.MAX_DIM}"
        )
    return np.kron(a, b)


def embed(op: npt.ArrayLike, site: int, n_sites: int) -> ComplexMatrix:
    """Single-qubit operator acting on `site` (1-based) of an n-qubit register."""
    if not 1 <= site <= n_sites:
        raise DimensionError(f"Site {site} outside register of {n_sites} qubits")
    result = np.eye(1, dtype=np.complex128)
    for index in range(1, n_sites + 1):
        result = kron(result, op if index == site else IDENTITY2)
    return result


def apply(U: npt.ArrayLike, psi: npt.ArrayLike) -> StateVector:
    u = np.asarray(U, dtype=np.complex128)
    state = np.asarray(psi, dtype=np.complex128)
    if u.ndim != 2 or state.ndim != 1 or u.shape[1] != state.shape[0]:
        raise DimensionError(f"Cannot apply {u.shape} operator to state of shape {state.shape}")
    return u @ state
