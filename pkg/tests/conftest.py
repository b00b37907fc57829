import functools

import pytest
from hypothesis import HealthCheck, settings

from pcw.platform import by_name

settings.register_profile(
    "pcw",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("pcw")


@functools.lru_cache(maxsize=None)
def platform(name: str):
    return by_name(name)


@pytest.fixture(scope="session")
def heis():
    return platform("heisenberg")


@pytest.fixture(scope="session")
def ut3():
    return platform("ut:3")


@pytest.fixture(scope="session")
def ut4():
    return platform("ut:4")


@pytest.fixture(scope="session")
def zsqrt2():
    return platform("zsqrt2")


# acceptance lines, printed once at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
