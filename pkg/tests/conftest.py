from fractions import Fraction

import pytest

from toricpack.delzant import (
    make_chopped_simplex,
    make_cube,
    make_product,
    make_simplex,
)


@pytest.fixture(scope="session")
def square():
    return make_cube(2)


@pytest.fixture(scope="session")
def simplex2():
    return make_simplex(2)


@pytest.fixture(scope="session")
def simplex3():
    return make_simplex(3)


@pytest.fixture(scope="session")
def rectangle():
    # [0, 2] x [0, 1]
    return make_product(make_simplex(1, 2), make_simplex(1, 1))


@pytest.fixture(scope="session")
def pentagon():
    return make_chopped_simplex(Fraction(1, 10), Fraction(1, 10))


@pytest.fixture(scope="session")
def prism():
    return make_product(make_simplex(1), make_simplex(2))
