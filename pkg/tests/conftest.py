import pytest

from puritylab.algebra import chain, square_zero, truncated
from puritylab.bounds import Settings


@pytest.fixture(scope="session")
def sz22():
    return square_zero(2, 2)


@pytest.fixture(scope="session")
def sz23():
    return square_zero(2, 3)


@pytest.fixture(scope="session")
def ch22():
    return chain(2, 2)


@pytest.fixture(scope="session")
def ch23():
    return chain(2, 3)


@pytest.fixture(scope="session")
def ch32():
    return chain(3, 2)


@pytest.fixture(scope="session")
def tr222():
    return truncated(2, (2, 2))


@pytest.fixture(scope="session")
def settings():
    return Settings()
