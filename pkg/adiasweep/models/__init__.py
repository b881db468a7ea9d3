from typing import Annotated, Optional, Union

from pydantic import Field

from adiasweep.exceptions import ConfigurationError
from adiasweep.models.aqc1 import Aqc1Model
from adiasweep.models.base import HamiltonianModel
from adiasweep.models.factor21 import Factor21Model
from adiasweep.models.lz import LZModel
from adiasweep.schemas.params import Aqc1Params, Factor21Params, LZParams

ModelSpec = Annotated[Union[LZModel, Aqc1Model, Factor21Model], Field(discriminator="kind")]

# Parameter sets of the three published fidelity comparisons
DEFAULT_PARAMS = {
    "lz": {"omega0": 10.0, "omega_x": 1.0},
    "aqc1": {"omega_x": 18.0, "omega_z": 30.0},
    "factor21": {"g": 30.0},
}


def build_model(
    kind: str,
    omega0: Optional[float] = None,
    omega_x: Optional[float] = None,
    omega_z: Optional[float] = None,
    g: Optional[float] = None,
) -> HamiltonianModel:
    if kind not in DEFAULT_PARAMS:
        raise ConfigurationError(
            f"Unknown model '{kind}'; expected one of {sorted(DEFAULT_PARAMS)}"
        )
    given = {"omega0": omega0, "omega_x": omega_x, "omega_z": omega_z, "g": g}
    values = {
        key: given[key] if given[key] is not None else default
        for key, default in DEFAULT_PARAMS[kind].items()
    }
    if kind == "lz":
        return LZModel(params=LZParams(**values))
    if kind == "aqc1":
        return Aqc1Model(params=Aqc1Params(**values))
    return Factor21Model(params=Factor21Params(**values))


__all__ = [
    "HamiltonianModel",
    "LZModel",
    "Aqc1Model",
    "Factor21Model",
    "ModelSpec",
    "DEFAULT_PARAMS",
    "build_model",
]
