import numpy as np
import pytest

from adiasweep.config import settings
from adiasweep.models import Aqc1Model, Factor21Model, LZModel
from adiasweep.schemas.params import Aqc1Params, Factor21Params, LZParams


@pytest.fixture(autouse=True)
def log_dir(tmp_path, monkeypatch):
    """Keep rotating log files out of the working tree."""
    monkeypatch.setattr(settings, "LOG_DIR", str(tmp_path / "logs"))
    return tmp_path / "logs"


@pytest.fixture
def lz_model():
    return LZModel(params=LZParams(omega0=10.0, omega_x=1.0))


@pytest.fixture
def aqc1_model():
    return Aqc1Model(params=Aqc1Params(omega_x=18.0, omega_z=30.0))


@pytest.fixture
def factor21_model():
    return Factor21Model(params=Factor21Params(g=30.0))


@pytest.fixture
def rng():
    return np.random.default_rng(20240521)
