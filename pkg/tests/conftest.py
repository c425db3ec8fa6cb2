from fractions import Fraction

import pytest

from scmexplain.lang import load_fixture, parse_model

POOR = {"U1": 75000, "U3": 2500}
RICH = {"U1": 250000, "U3": 50000}


@pytest.fixture(scope="session")
def loan():
    return load_fixture("loan")


@pytest.fixture(scope="session")
def fire():
    return load_fixture("fire")


@pytest.fixture(scope="session")
def hiring():
    return load_fixture("hiring")


@pytest.fixture(scope="session")
def fn9():
    return load_fixture("footnote9")


@pytest.fixture(scope="session")
def identity():
    return parse_model("model Id\nexo U: {0, 1}\nvar X: {0, 1} = U\nvar Y: {0, 1} = X\n")


@pytest.fixture(scope="session")
def constant():
    return parse_model("model K\nexo U: {0, 1}\nvar X: {0, 1} = U\nvar Y: {0, 1} = 1\n")


def F(x):
    return Fraction(x)
