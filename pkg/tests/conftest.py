from hypothesis import settings
import pytest

from opMatrix.models import UnilateralShift, BackwardShift
from perturbation.engine import DiagonalTuple, PerturbationEngine

# exact arrangements have no useful per-example time bound
settings.register_profile('exact', deadline=None)
settings.load_profile('exact')


@pytest.fixture
def engine():
    return PerturbationEngine('WARNING')


@pytest.fixture
def shift_pair():
    return DiagonalTuple((UnilateralShift(), BackwardShift()))
