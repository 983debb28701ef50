"""Aggregate acceptance tests into one PASS/FAIL line per criterion.

Tests tagged ``@pytest.mark.criterion(n, "title")`` are grouped by ``n``; a
criterion passes when every test tagged with it passes.
"""

from collections import OrderedDict

import pytest

_TITLES: dict = {}
_OUTCOMES: "OrderedDict[int, list]" = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is None:
            continue
        n = mark.args[0]
        if len(mark.args) > 1:
            _TITLES.setdefault(n, mark.args[1])
        item.user_properties.append(("criterion", n))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _OUTCOMES.setdefault(crit, []).append((report.nodeid.split("::")[-1], report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_OUTCOMES):
        results = _OUTCOMES[n]
        failed = [name for name, ok in results if not ok]
        status = "FAIL" if failed else "PASS"
        line = f"criterion {n:>2} {status}: {_TITLES.get(n, '')} ({len(results) - len(failed)}/{len(results)} checks)"
        if failed:
            line += " failing: " + ", ".join(failed)
        tr.write_line(line)
