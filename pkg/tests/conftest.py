import warnings

import pytest
from hypothesis import HealthCheck, settings

from qapsp.params import DegenerateParameterWarning

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list = []


@pytest.fixture
def quiet():
    """Silence degenerate-parameter warnings for tests that force tiny parameters."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateParameterWarning)
        yield


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
