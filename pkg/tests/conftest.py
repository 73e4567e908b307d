import numpy as np
import pytest

from fraclap import Params


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def half_laplacian():
    """s = 1/2, p = 2: the linear case with m = 2 and sp = 1."""
    return Params(0.5, 2.0)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
