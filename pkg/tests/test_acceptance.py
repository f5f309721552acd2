"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line."""
import pytest

import conftest
from symmetra import acceptance


def test_settings_recorded():
    print(acceptance.header())
    assert acceptance.SEED == 20240531


@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA))
def test_criterion(number):
    res = acceptance.run_criterion(number)
    line = res.line()
    print(line)
    for name, ok in res.checks.items():
        if not ok:
            print(f"    violated: {name}")
    conftest.ACCEPTANCE_LINES.append(line)
    assert res.passed, line


def test_negative_control_detected():
    res = acceptance.criterion_1(corrupt=True)
    print(res.line())
    assert not res.passed
