import pytest

from certilin import PrimeField

PRIME_40_BIT = 1_099_511_627_791
PRIME_BIG = 1_000_003


@pytest.fixture(scope="session")
def f7():
    return PrimeField(7)


@pytest.fixture(scope="session")
def f101():
    return PrimeField(101)


@pytest.fixture(scope="session")
def fbig():
    return PrimeField(PRIME_BIG)
