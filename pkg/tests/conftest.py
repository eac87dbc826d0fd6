import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pntkit import sieve


@pytest.fixture(scope="session")
def table_1e6():
    return sieve.sieve_range(1, 10**6 + 1, workers=2)


@pytest.fixture(scope="session")
def table_1e4():
    return sieve.sieve_range(1, 10**4 + 1)


@pytest.fixture(scope="session")
def pi_table_8e5():
    return sieve.prime_pi_table(8 * 10**5, workers=2)
