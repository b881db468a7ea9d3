from pydantic import BaseModel, ConfigDict, Field


class LZParams(BaseModel):
    """Landau-Zener sweep amplitude and transverse splitting."""

    omega0: float = Field(..., gt=0, allow_inf_nan=False, description="Sweep amplitude")
    omega_x: float = Field(..., gt=0, allow_inf_nan=False, description="Transverse splitting")

    model_config = ConfigDict(frozen=True)


class Aqc1Params(BaseModel):
    """Single-qubit interpolation between omega_x sigma_x and omega_z sigma_z."""

    omega_x: float = Field(..., gt=0, allow_inf_nan=False)
    omega_z: float = Field(..., gt=0, allow_inf_nan=False)

    model_config = ConfigDict(frozen=True)


class Factor21Params(BaseModel):
    """Three-spin factorization of N = 21 with uniform transverse field g."""

    g: float = Field(..., gt=0, allow_inf_nan=False, description="Transverse Zeeman splitting")

    model_config = ConfigDict(frozen=True)


class RotatedFrame(BaseModel):
    """Frame in which only the sigma_n coefficient of the single-qubit model is swept."""

    theta: float
    Omega: float = Field(..., gt=0)
    omega_perp: float
    omega_x: float

    model_config = ConfigDict(frozen=True)
