import math
from typing import Literal, Tuple

from adiasweep.hermlin import SIGMA_X, SIGMA_Z, ComplexMatrix
from adiasweep.models.base import HamiltonianModel, check_unit_interval
from adiasweep.schemas.params import Aqc1Params, RotatedFrame
from adiasweep.services.schedules import sc_analytic


def aqc1_hamiltonian(p: Aqc1Params, s: float) -> ComplexMatrix:
    """(1 - s) omega_x sigma_x + s omega_z sigma_z."""
    check_unit_interval(s)
    return (1.0 - s) * p.omega_x * SIGMA_X + s * p.omega_z * SIGMA_Z


def rotated_frame(p: Aqc1Params) -> RotatedFrame:
    theta = math.atan2(p.omega_x, p.omega_z)
    return RotatedFrame(
        theta=theta,
        Omega=math.hypot(p.omega_z, p.omega_x),
        omega_perp=p.omega_x * math.cos(theta),
        omega_x=p.omega_x,
    )


def rotated_omega_n(f: RotatedFrame, s: float) -> float:
    """Swept coefficient of sigma_n; vanishes at the minimal-gap point."""
    check_unit_interval(s)
    return s * f.Omega - f.omega_x * math.sin(f.theta)


def sigma_perp(f: RotatedFrame) -> ComplexMatrix:
    return SIGMA_Z * math.sin(f.theta) + SIGMA_X * math.cos(f.theta)


def sigma_n(f: RotatedFrame) -> ComplexMatrix:
    return SIGMA_Z * math.cos(f.theta) - SIGMA_X * math.sin(f.theta)


def rotated_hamiltonian(f: RotatedFrame, s: float) -> ComplexMatrix:
    return f.omega_perp * sigma_perp(f) + rotated_omega_n(f, s) * sigma_n(f)


class Aqc1Model(HamiltonianModel):
    kind: Literal["aqc1"] = "aqc1"
    params: Aqc1Params

    @property
    def dim(self) -> int:
        return 2

    def hamiltonian(self, x: float) -> ComplexMatrix:
        return aqc1_hamiltonian(self.params, x)

    def terms(self) -> Tuple[ComplexMatrix, ComplexMatrix]:
        h0 = self.params.omega_x * SIGMA_X
        return h0, self.params.omega_z * SIGMA_Z - h0

    def parameter_range(self) -> Tuple[float, float]:
        return 0.0, 1.0

    def critical_point(self) -> float:
        return sc_analytic(self.params)
