import pytest

from pdckit.sieve import build_table


@pytest.fixture(scope="session")
def table_1e4():
    return build_table(10**4)


@pytest.fixture(scope="session")
def table_1e6():
    return build_table(10**6)
