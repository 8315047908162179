import pytest

import npqc.config
from npqc.circuit import NpqcSpec, ParamVector

from .factories import NpqcSpecFactory, ParamVectorFactory, YOnlySpecFactory


@pytest.fixture(autouse=True)
def _reset_global_config():
    npqc.config._global_config = None
    yield
    npqc.config._global_config = None


@pytest.fixture()
def spec() -> NpqcSpec:
    return NpqcSpecFactory()


@pytest.fixture()
def y_spec() -> NpqcSpec:
    return YOnlySpecFactory()


@pytest.fixture()
def theta(spec) -> ParamVector:
    return ParamVectorFactory(spec=spec)
