import os

import pytest
from hypothesis import HealthCheck, settings

from uqpadic import get_group

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def A1():
    return get_group("A1")


@pytest.fixture(scope="session")
def A2():
    return get_group("A2")


@pytest.fixture(scope="session")
def B2():
    return get_group("B2")


@pytest.fixture(scope="session")
def G2():
    return get_group("G2")


ACCEPTANCE_LINES: list = []


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
