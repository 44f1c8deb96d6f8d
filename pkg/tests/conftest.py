"""Shared fixtures, plus a one-line-per-criterion acceptance summary."""

from __future__ import annotations

import re
from pathlib import Path

import pytest

from helpers import CORPUS

_ACCEPT = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")
_results: dict = {}


def pytest_runtest_logreport(report):
    m = _ACCEPT.search(report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.outcome != "passed":
        prev = _results.get(key, "PASS")
        _results[key] = "PASS" if report.passed and prev == "PASS" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), outcome in sorted(_results.items()):
        terminalreporter.write_line(f"criterion {num} ({name.replace('_', ' ')}): {outcome}")


@pytest.fixture(scope="session")
def corpus() -> Path:
    return CORPUS
