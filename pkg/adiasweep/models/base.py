from abc import ABC, abstractmethod
from typing import Tuple, Union

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict

from adiasweep.exceptions import ParameterRangeError
from adiasweep.hermlin import ComplexMatrix, eig_hermitian

ArrayOrFloat = Union[float, npt.NDArray[np.float64]]


def check_unit_interval(s: ArrayOrFloat, name: str = "s") -> None:
    values = np.asarray(s, dtype=float)
    if not np.all(np.isfinite(values)) or np.any(values < 0.0) or np.any(values > 1.0):
        raise ParameterRangeError(f"{name} must lie in [0, 1], got {s}")


class HamiltonianModel(BaseModel, ABC):
    """A Hamiltonian family H(x) = H_const + x H_param over one swept parameter x.

    x is the interpolation parameter s for the AQC models and omega_z for the
    Landau-Zener model; `parameter_at` maps a normalized s in [0, 1] onto x.
    """

    model_config = ConfigDict(frozen=True)

    @property
    def model_id(self) -> str:
        return self.kind

    @property
    @abstractmethod
    def dim(self) -> int:
        ...

    @abstractmethod
    def hamiltonian(self, x: float) -> ComplexMatrix:
        ...

    @abstractmethod
    def terms(self) -> Tuple[ComplexMatrix, ComplexMatrix]:
        """(H_const, H_param) with H(x) = H_const + x H_param."""

    @abstractmethod
    def parameter_range(self) -> Tuple[float, float]:
        ...

    @abstractmethod
    def critical_point(self) -> float:
        """Normalized s of the minimal gap."""

    def check_parameters(self, xs: npt.NDArray[np.float64]) -> None:
        check_unit_interval(xs)

    def hamiltonian_stack(self, xs: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        """H(x_k) for every x_k, shape (len(xs), dim, dim)."""
        xs = np.asarray(xs, dtype=float)
        self.check_parameters(xs)
        const, param = self.terms()
        return const[None] + xs[:, None, None] * param[None]

    def parameter_at(self, s: ArrayOrFloat) -> ArrayOrFloat:
        lo, hi = self.parameter_range()
        return lo + s * (hi - lo)

    def gap_at(self, s: float) -> float:
        return eig_hermitian(self.hamiltonian(self.parameter_at(s))).gap
