"""Collects acceptance outcomes and prints one PASS/FAIL line per criterion."""

from collections import OrderedDict

import pytest

_OUTCOMES: "OrderedDict[int, dict]" = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    number, title = marker.args
    entry = _OUTCOMES.setdefault(number, {"title": title, "parts": []})
    entry["parts"].append((item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_OUTCOMES):
        entry = _OUTCOMES[number]
        ok = all(passed for _, passed in entry["parts"])
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {entry['title']}"
        if len(entry["parts"]) > 1:
            line += " [" + ", ".join(f"{n}={'PASS' if p else 'FAIL'}" for n, p in entry["parts"]) + "]"
        terminalreporter.write_line(line)
