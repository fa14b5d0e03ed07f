import pytest

from uavcma import Scenario, to_linear
from uavcma.search import sweep

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def default_scenario():
    return Scenario(num_terminals=10, span=1000.0, altitude=100.0, power_dbm=10.0,
                    ref_snr_db=80.0, speed=30.0, traj_length=500.0)


@pytest.fixture(scope="session")
def params(default_scenario):
    return to_linear(default_scenario)


@pytest.fixture(scope="session")
def sweeps(default_scenario):
    """Default-grid sweeps, computed once per session."""
    cache = {}

    def get(scheme="optimal", span=1000.0):
        key = (scheme, span)
        if key not in cache:
            sc = Scenario(10, span, traj_length=0.0)
            cache[key] = sweep(sc, scheme, n_jobs=1)
        return cache[key]

    return get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
