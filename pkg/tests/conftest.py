import pytest

from hausdyn.model import TaxPolicy, default_calibration
from hausdyn.simulation import solve_model


@pytest.fixture
def cal():
    return default_calibration()


@pytest.fixture
def solved(cal):
    return solve_model(cal, TaxPolicy())


ACCEPTANCE = {}


@pytest.fixture
def record(request):
    """Store one acceptance line per criterion; printed in the terminal summary."""

    def _record(number, title, passed, detail):
        ACCEPTANCE[number] = (title, bool(passed), detail)
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(
            f"[{'PASS' if passed else 'FAIL'}] {number:>2}. {title}: {detail}"
        )
