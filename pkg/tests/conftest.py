import math
from pathlib import Path

import numpy as np
import pytest

from paramcat.core import Param, ParamSpace
from paramcat.matrix import MatrixBackend

SAMPLES = Path(__file__).resolve().parent.parent / "samples"

IX = np.array([[0, 1j], [1j, 0]])
HALF_PI = (math.pi / 2, 0.0)

_acceptance = []


@pytest.fixture
def cat2():
    return Param(ParamSpace(2), MatrixBackend())


@pytest.fixture
def cat1():
    return Param(ParamSpace(1), MatrixBackend())


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def samples_dir():
    return SAMPLES


@pytest.fixture
def criterion():
    """Record an acceptance line; printed in the terminal summary."""
    def record(number, title, passed, detail=""):
        _acceptance.append((number, title, passed, detail))
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(_acceptance):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number}. {title} {detail}")
