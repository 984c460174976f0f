import numpy as np
import pytest

from qcomb.bases import haar_random_su2, muub_basis, standard_basis

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def std():
    return standard_basis()


@pytest.fixture(scope="session")
def muub():
    return muub_basis()


@pytest.fixture(scope="session")
def a2(muub):
    return muub[0]


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def haar_200():
    gen = np.random.default_rng(20240327)
    return [haar_random_su2(gen) for _ in range(200)]


@pytest.fixture
def report():
    """Record one pass/fail line per acceptance criterion."""

    def _report(criterion: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {criterion}  {detail}".rstrip())

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
