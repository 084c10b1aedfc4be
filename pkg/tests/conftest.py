import pytest

from clusterchar import validate_quiver


@pytest.fixture(scope="session")
def a1():
    return validate_quiver(1, [])


@pytest.fixture(scope="session")
def a2():
    return validate_quiver(2, [(1, 2)])


@pytest.fixture(scope="session")
def a3():
    return validate_quiver(3, [(1, 2), (2, 3)])


@pytest.fixture(scope="session")
def kronecker():
    return validate_quiver(2, [(1, 2), (1, 2)])
