import numpy as np
import pytest

from framescale import Frame, ScalarField
from golden import EX1, EX2, EX3, MERCEDES, NONSCALABLE


@pytest.fixture
def ex1():
    return Frame(np.array(EX1, dtype=complex), ScalarField.COMPLEX)


@pytest.fixture
def ex2():
    return Frame(np.array(EX2, dtype=complex), ScalarField.COMPLEX)


@pytest.fixture
def ex3():
    return Frame(np.array(EX3, dtype=complex), ScalarField.COMPLEX)


@pytest.fixture
def mercedes():
    return Frame(np.array(MERCEDES), ScalarField.REAL)


@pytest.fixture
def nonscalable():
    return Frame(np.array(NONSCALABLE), ScalarField.REAL)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, text in sorted(RESULTS):
        terminalreporter.write_line(f"[{number}] {'PASS' if ok else 'FAIL'}  {text}")
