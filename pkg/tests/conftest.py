import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    number = int(name.split("_")[2])
    if report.when == "call" or report.outcome != "passed":
        prior = _CRITERIA.get(number, (name, "PASS"))[1]
        status = "PASS" if report.outcome == "passed" and prior == "PASS" else "FAIL"
        _CRITERIA[number] = (name, status)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        name, status = _CRITERIA[number]
        terminalreporter.write_line(f"{status} criterion {number:2d}: {name.split('_', 3)[3]}")
