import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

KINDS = ["rational", "arctangent", "logarithmic"]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=KINDS)
def kind(request):
    return request.param


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
