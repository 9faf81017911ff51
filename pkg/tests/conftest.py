import pytest

from hurwitzkit.app import HurwitzKitApp
from hurwitzkit.services.group_oracle import GroupOracle
from hurwitzkit.services.hurwitz_engine import HurwitzEngine
from hurwitzkit.services.quantum_curves import QuantumCurveService
from hurwitzkit.utils.config import load_config


@pytest.fixture(scope="session")
def config():
    return load_config()


@pytest.fixture(scope="session")
def engine():
    return HurwitzEngine()


@pytest.fixture(scope="session")
def oracle():
    return GroupOracle(enumeration_limit=7)


@pytest.fixture(scope="session")
def curves(config):
    return QuantumCurveService(config=config)


@pytest.fixture
def app(config):
    return HurwitzKitApp(config)
