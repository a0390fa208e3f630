from __future__ import annotations

import pytest

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, limit): acceptance criterion with a runtime limit in seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call" and report.passed:
        return
    number, title, limit = mark.args
    entry = _criteria.setdefault(number, {"title": title, "limit": limit, "ok": True, "seconds": 0.0})
    if report.failed:
        entry["ok"] = False
    if report.when == "call":
        entry["seconds"] += report.duration


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        e = _criteria[number]
        verdict = "PASS" if e["ok"] else "FAIL"
        terminalreporter.write_line(
            f"{verdict} criterion {number:2d}: {e['title']} ({e['seconds']:.2f}s, limit {e['limit']}s)")
