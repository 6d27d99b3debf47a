"""Prints one PASS/FAIL line per acceptance criterion at the end of the run."""

import pytest

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    title = getattr(item.function, "criterion", None)
    if title is None:
        return
    if report.when == "call" or report.failed:
        previous = _criteria.get(title, "PASS")
        _criteria[title] = "FAIL" if report.failed or previous == "FAIL" else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for title, verdict in sorted(_criteria.items()):
        terminalreporter.write_line(f"{verdict}  {title}")
