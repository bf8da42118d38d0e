import numpy as np
import pytest

from varietybounds.parser import parse


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def circle():
    return parse("x^2 + y^2 - 1")


def rel_err(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


ACCEPTANCE_LINES = []


def record(criterion, passed, detail):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
