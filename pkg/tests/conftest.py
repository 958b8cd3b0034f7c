import pytest

from kbonacci import kbonacci


@pytest.fixture(scope="session")
def s2():
    return kbonacci(2)


@pytest.fixture(scope="session")
def s3():
    return kbonacci(3)


@pytest.fixture(scope="session")
def s4():
    return kbonacci(4)
