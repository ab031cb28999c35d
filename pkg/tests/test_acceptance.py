"""Acceptance criteria, each at the tolerance recorded in the packaged acceptance.json."""
import pytest

from qapsp.acceptance import CRITERIA, exact_ceil_power, exact_ceil_scaled_sqrt, failure_threshold, load_config, run_criterion

from conftest import ACCEPTANCE_LINES


@pytest.fixture(scope="module")
def config():
    return load_config()


def test_charge_oracles_are_exact():
    assert exact_ceil_power(100, "1.5") == 1000
    assert exact_ceil_power(49, "1.5") == 343
    assert exact_ceil_power(2, "0.5") == 2
    assert exact_ceil_scaled_sqrt(100, 1) == 10
    assert exact_ceil_scaled_sqrt(2, 1) == 2
    assert failure_threshold(200, 0.95, 0.05) <= 200


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, config):
    res = run_criterion(number, config)
    line = res.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert res.passed, line
