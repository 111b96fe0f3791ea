import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)


ACCEPTANCE_LINES = []


@pytest.fixture
def record():
    """Log one pass/fail line for an acceptance criterion."""

    def _record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
