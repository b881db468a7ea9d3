import math
from typing import Literal, Tuple

import numpy as np

from adiasweep.exceptions import ParameterRangeError
from adiasweep.hermlin import SIGMA_X, SIGMA_Z, ComplexMatrix
from adiasweep.models.base import HamiltonianModel
from adiasweep.schemas.params import LZParams


def lz_hamiltonian(p: LZParams, omega_z_t: float) -> ComplexMatrix:
    """omega_x sigma_x + omega_z(t) sigma_z."""
    if not math.isfinite(omega_z_t):
        raise ParameterRangeError(f"omega_z must be finite, got {omega_z_t}")
    return p.omega_x * SIGMA_X + omega_z_t * SIGMA_Z


class LZModel(HamiltonianModel):
    kind: Literal["lz"] = "lz"
    params: LZParams

    @property
    def dim(self) -> int:
        return 2

    def hamiltonian(self, x: float) -> ComplexMatrix:
        return lz_hamiltonian(self.params, x)

    def terms(self) -> Tuple[ComplexMatrix, ComplexMatrix]:
        return self.params.omega_x * SIGMA_X, SIGMA_Z.copy()

    def check_parameters(self, xs) -> None:
        if not np.all(np.isfinite(xs)):
            raise ParameterRangeError("omega_z values must be finite")

    def parameter_range(self) -> Tuple[float, float]:
        return -self.params.omega0, self.params.omega0

    def critical_point(self) -> float:
        # levels cross diabatically at omega_z = 0
        return 0.5
