"""Shared fixtures and the acceptance summary.

Tests marked ``@pytest.mark.criterion(k, "title")`` are collected into a
table printed at the end of the run, one PASS/FAIL line per criterion.  A
test can attach the measured quantity behind its verdict with
``record_property("detail", ...)``.
"""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_RESULTS: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by this test")
    config.addinivalue_line("markers", "slow: takes more than a few seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _RESULTS.setdefault(number, {"title": title, "ok": True, "details": [], "ran": False})
    if report.when == "call":
        entry["ran"] = True
    if report.failed or (report.when == "call" and report.skipped):
        entry["ok"] = False
        if report.longrepr is not None:
            last = str(report.longrepr).strip().splitlines()[-1]
            entry["details"].append(last[:160])
    if report.when == "call":
        entry["details"].extend(str(v) for k, v in item.user_properties if k == "detail")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        entry = _RESULTS[number]
        ok = entry["ok"] and entry["ran"]
        verdict = "PASS" if ok else "FAIL"
        detail = "; ".join(entry["details"])
        line = f"criterion {number:>2} {verdict}  {entry['title']}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
