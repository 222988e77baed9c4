import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# Filled by the acceptance tests and printed at the end of the session.
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


@pytest.fixture(scope="session")
def two_rebit():
    from gpt_tomo.theories import resolve_theory

    return resolve_theory("two-rebit")


@pytest.fixture(scope="session")
def bct():
    from gpt_tomo.theories import resolve_theory

    return resolve_theory("bct")


@pytest.fixture(scope="session")
def qubit_pair():
    from gpt_tomo.theories import resolve_theory

    return resolve_theory("qubit-pair")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
