import random

import pytest

from tropibary.core import TropVector
from tropibary.measures import FiniteSpace, IdemMeasure


@pytest.fixture
def three_space() -> FiniteSpace:
    return FiniteSpace(3, labels=("a", "b", "c"))


@pytest.fixture
def plane_space() -> FiniteSpace:
    pts = (TropVector(("-1", "0")), TropVector(("0", "-2")), TropVector(("-1/2", "-1/2")))
    return FiniteSpace(3, labels=("p", "q", "r"), points=pts)


@pytest.fixture
def simple_measure(three_space) -> IdemMeasure:
    return IdemMeasure([(0, "0"), (1, "-1/2")], space=three_space)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240814)
