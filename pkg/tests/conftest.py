from fractions import Fraction as F

import pytest

from ibifsa.group import cyclic
from ibifsa.ifs import validate_ifs
from ibifsa.machine import build_machine


@pytest.fixture
def e3():
    """One-letter machine on cyclic(2) used throughout the examples."""
    return build_machine(cyclic(2), ["u"],
                         [[["1/2", "1/4"], ["1/4", "1/2"]]],
                         [[["1/4", "1/2"], ["1/2", "1/4"]]])


@pytest.fixture
def crisp0():
    return validate_ifs(2, [1, 0], [0, 1])


@pytest.fixture
def e1():
    return validate_ifs(2, [F(1, 2), F(9, 10)], [F(2, 5), 0])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
