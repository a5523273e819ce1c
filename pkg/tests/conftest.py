import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from stieltjes_kit.numerics import PrecisionContext  # noqa: E402
from stieltjes_kit.stieltjes import zeta_table  # noqa: E402


@pytest.fixture(scope="session")
def ctx50():
    return PrecisionContext(50)


@pytest.fixture(scope="session")
def ctx30():
    return PrecisionContext(30)


@pytest.fixture(scope="session")
def table50(ctx50):
    return zeta_table(11, ctx50)


@pytest.fixture(scope="session")
def table40():
    return zeta_table(40, PrecisionContext(40))


CRITERIA_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Call with (number, passed, detail); prints and records one status line."""

    def report(number: int, passed: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
        print(line)
        CRITERIA_LINES.append(line)

    return report


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA_LINES:
            terminalreporter.write_line(line)
