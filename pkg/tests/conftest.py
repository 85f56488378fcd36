import sys

import pytest

from qharmonic.exactalg import RatFuncQ


@pytest.fixture
def q():
    return RatFuncQ.q()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.LINES):
        terminalreporter.write_line(line)
