import numpy as np
import pytest

THETA_GRID = np.round(np.linspace(0.0, 1.0, 21), 10)


@pytest.fixture(params=["ss", "ws"])
def model(request) -> str:
    return request.param


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
