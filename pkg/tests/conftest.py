import random

import hypothesis
import pytest

from lsurf.surface import prototype

hypothesis.settings.register_profile(
    "suite", max_examples=60, deadline=None, derandomize=True
)
hypothesis.settings.load_profile("suite")


@pytest.fixture(scope="session")
def L8():
    return prototype(8, 0)


@pytest.fixture(scope="session")
def L5m1():
    return prototype(5, -1)


@pytest.fixture(scope="session")
def L17p1():
    return prototype(17, 1)


@pytest.fixture
def rng():
    return random.Random(20260810)
