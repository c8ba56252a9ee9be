import pytest

from rmflab.numbercore import build_divisor_tables, build_sieve


@pytest.fixture(scope="session")
def sieve_small():
    return build_sieve(2000)


@pytest.fixture(scope="session")
def tables_small(sieve_small):
    return build_divisor_tables(sieve_small)


@pytest.fixture(scope="session")
def sieve_mid():
    return build_sieve(100_000)


@pytest.fixture(scope="session")
def sieve_large():
    return build_sieve(1_000_000)


@pytest.fixture(scope="session")
def tables_mid(sieve_mid):
    return build_divisor_tables(sieve_mid)
