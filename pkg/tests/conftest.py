import pytest

from wdyn import build_prime_table


@pytest.fixture(scope="session")
def table_x300():
    """Covers parent searches and censuses up to x = 300 (4x = 1200)."""
    return build_prime_table(1201)


@pytest.fixture(scope="session")
def table_10k():
    return build_prime_table(10_000)


@pytest.fixture(scope="session")
def table_x10k():
    """Covers census grids up to x = 10^4 (4x + 1)."""
    return build_prime_table(40_001)


@pytest.fixture(scope="session")
def table_200k():
    """Covers variance sums up to x = 10^5 and orbits of n <= 10^5."""
    return build_prime_table(200_000)


@pytest.fixture(scope="session")
def table_1m():
    return build_prime_table(1_000_000)
