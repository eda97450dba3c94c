import time

import mpmath
import pytest

from seczeta.generator import generate_zeros


@pytest.fixture(autouse=True)
def _reset_mp():
    # tests that touch mp.dps directly must not leak into others
    prec = mpmath.mp.prec
    yield
    mpmath.mp.prec = prec


@pytest.fixture(scope="session")
def zeros_extended():
    """10001 zeros at 12 digits; the extra one places a midpoint cutoff after zero 10000."""
    t0 = time.perf_counter()
    table = generate_zeros(10001, 12)
    table_seconds = time.perf_counter() - t0
    return table, table_seconds


@pytest.fixture(scope="session")
def zeros_10k(zeros_extended):
    return zeros_extended[0].head(10000)


@pytest.fixture(scope="session")
def zeros_1k(zeros_extended):
    return zeros_extended[0].head(1000)


@pytest.fixture(scope="session")
def zeros_small():
    """First 40 zeros at 25 digits (every one polished with mpmath)."""
    return generate_zeros(40, 25)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda x: int(x.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
