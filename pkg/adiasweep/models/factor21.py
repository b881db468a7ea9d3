"""
Three-spin Hamiltonian whose H_P ground state encodes 21 = 3 x 7.

Basis index b1 b2 b3 with qubit 1 most significant, up -> 0 and down -> 1, so
|down down down> is index 7.
"""
import logging
from functools import lru_cache
from typing import Literal, Tuple

import numpy as np

from adiasweep.hermlin import SIGMA_X, SIGMA_Z, ComplexMatrix, embed
from adiasweep.models.base import HamiltonianModel, check_unit_interval
from adiasweep.schemas.params import Factor21Params
from adiasweep.services.schedules import sc_numeric

logger = logging.getLogger(__name__)

N_FACTORED = 21
N_QUBITS = 3
DIM = 2**N_QUBITS


def factor21_h0(p: Factor21Params) -> ComplexMatrix:
    """g (sigma_1x + sigma_2x + sigma_3x)."""
    return p.g * sum(embed(SIGMA_X, site, N_QUBITS) for site in range(1, N_QUBITS + 1))


def factor21_hp() -> ComplexMatrix:
    """[N - (2I - sigma_1z)(4I - sigma_2z - 2 sigma_3z)]^2, diagonal."""
    identity = np.eye(DIM, dtype=np.complex128)
    first = 2 * identity - embed(SIGMA_Z, 1, N_QUBITS)
    second = 4 * identity - embed(SIGMA_Z, 2, N_QUBITS) - 2 * embed(SIGMA_Z, 3, N_QUBITS)
    residual = N_FACTORED * identity - first @ second
    return residual @ residual


def factor21_hamiltonian(p: Factor21Params, s: float) -> ComplexMatrix:
    check_unit_interval(s)
    return (1.0 - s) * factor21_h0(p) + s * factor21_hp()


@lru_cache(maxsize=32)
def _critical_point(p: Factor21Params) -> float:
    model = Factor21Model(params=p)
    s_c, gap_min = sc_numeric(model.gap_at)
    logger.info(f"Factor21 minimal gap {gap_min:.6g} at s_c={s_c:.6g} (g={p.g:g})")
    return s_c


class Factor21Model(HamiltonianModel):
    kind: Literal["factor21"] = "factor21"
    params: Factor21Params

    @property
    def dim(self) -> int:
        return DIM

    def hamiltonian(self, x: float) -> ComplexMatrix:
        return factor21_hamiltonian(self.params, x)

    def terms(self) -> Tuple[ComplexMatrix, ComplexMatrix]:
        h0 = factor21_h0(self.params)
        return h0, factor21_hp() - h0

    def parameter_range(self) -> Tuple[float, float]:
        return 0.0, 1.0

    def critical_point(self) -> float:
        return _critical_point(self.params)

    def solution_index(self) -> int:
        """Basis index of the H_P ground state."""
        return int(np.argmin(np.diag(factor21_hp()).real))
