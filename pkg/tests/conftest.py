import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.arith import sieve
from src.multfn import constant_one, sample


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long full-pipeline runs (deselect with -m 'not slow')")


@pytest.fixture(scope="session")
def table():
    return sieve(20000)


@pytest.fixture(scope="session")
def small_table():
    return sieve(1000)


@pytest.fixture(scope="session")
def one(table):
    return constant_one(table, 20000)


@pytest.fixture(scope="session")
def random_f(table):
    return sample("random_unimodular", 7, 20000, table)
