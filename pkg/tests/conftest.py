import numpy as np
import pytest

from modgeo import sampling

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def criterion():
    """Record a pass/fail line for the acceptance summary, then assert."""
    def record(number, text, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] criterion {number:>2}: {text}  ({detail})")
        assert ok, f"criterion {number} failed: {text} ({detail})"
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)


def random_pair(rng, n):
    return sampling.random_density(rng, n), sampling.random_density(rng, n)
