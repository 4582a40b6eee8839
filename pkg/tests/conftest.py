"""Prints one PASS/FAIL line per acceptance criterion at the end of the run."""

import pytest

_results: dict = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        prev = _results.get(report.nodeid)
        if prev != "FAIL":
            _results[report.nodeid] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in _results.items():
        name = nodeid.split("::", 1)[1]
        terminalreporter.write_line(f"{outcome}  {name}")
