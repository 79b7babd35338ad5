import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# -- acceptance summary --------------------------------------------------

_criteria = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = _criterion_of(report)
    if marker is not None:
        _criteria[marker] = ("PASS" if report.passed else "FAIL", report.nodeid)


def _criterion_of(report):
    for key, value in getattr(report, "user_properties", []):
        if key == "criterion":
            return value
    return None


@pytest.fixture
def criterion(request):
    def _tag(number, text):
        request.node.user_properties.append(("criterion", (number, text)))
    return _tag


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (number, text), (status, _) in sorted(_criteria.items()):
        terminalreporter.write_line(f"[{status}] AC{number:02d} {text}")
