import numpy as np
import pytest

from helixpair.geometry import HelicoidParams


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)


@pytest.fixture
def symmetric_screw():
    return HelicoidParams(-1.0, 1.0, 2.0)


@pytest.fixture
def thin_ribbon():
    return HelicoidParams(0.001, 0.002, 37.0)


_CRITERIA: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion's verdict; asserts on failure."""

    def record(label: str, passed: bool, detail: str = ""):
        _CRITERIA[label] = (bool(passed), detail)
        print(f"{label}: {'PASS' if passed else 'FAIL'}  {detail}")
        assert passed, f"{label}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_CRITERIA, key=lambda s: int(s.split()[0][2:])):
        passed, detail = _CRITERIA[label]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
