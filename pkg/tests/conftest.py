import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from catconj.instances import powerset, set_map_adjunctions

settings.register_profile(
    "ci",
    max_examples=40,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")

SEED = int(os.environ.get("CONJ_SEED", "0"))


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture(scope="session")
def p2():
    return powerset(2)


@pytest.fixture(scope="session")
def p3():
    return powerset(3)


@pytest.fixture(scope="session")
def fmap():
    """f: {0,1,2} -> {a,b} with 0,1 |-> a and 2 |-> b."""
    return set_map_adjunctions({"0": "a", "1": "a", "2": "b"})


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
