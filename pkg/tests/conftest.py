"""Collects one pass/fail line per acceptance criterion and prints them at
the end of the run."""

import pytest

_RESULTS = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    failed_setup = report.when == "setup" and not report.passed
    if report.when != "call" and not failed_setup:
        return
    if hasattr(report, "wasxfail"):
        status = "FAIL (expected: " + report.wasxfail + ")"
    elif report.skipped:
        status = "SKIP"
    else:
        status = "PASS" if report.passed else "FAIL"
    _RESULTS[item.nodeid] = (marker.args[0], marker.kwargs.get("title", item.name), status, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, title, status, duration in _RESULTS.values():
        terminalreporter.write_line(f"criterion {label:<11} {status:<5} {title} [{duration:.1f}s]")
