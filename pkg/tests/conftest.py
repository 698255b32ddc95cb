"""Shared fixtures and the acceptance-criterion tally.

Tests tagged with ``@pytest.mark.criterion(n, "text")`` are grouped, and the
terminal summary prints one PASS/FAIL line per criterion.
"""
from functools import lru_cache

import numpy as np
import pytest

from weakhopf.fixtures import standard_contexts

_MARKED = {}  # nodeid -> criterion number
_TEXT = {}  # criterion number -> text
_OUTCOME = {}  # criterion number -> [passed, failed]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): test belongs to acceptance criterion n")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            n = m.args[0]
            _MARKED[item.nodeid] = n
            _TEXT.setdefault(n, m.args[1] if len(m.args) > 1 else "")
            _OUTCOME.setdefault(n, [0, 0])


def pytest_runtest_logreport(report):
    n = _MARKED.get(report.nodeid)
    if n is None:
        return
    if report.failed:
        _OUTCOME[n][1] += 1
    elif report.when == "call" and report.passed:
        _OUTCOME[n][0] += 1


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOME:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(_OUTCOME):
        ok, bad = _OUTCOME[n]
        status = "FAIL" if bad else ("PASS" if ok else "NOT RUN")
        terminalreporter.write_line(f"criterion {n}: {status} ({ok} passed, {bad} failed) {_TEXT[n]}")


@lru_cache(maxsize=None)
def context(name):
    """One shared instance per named context, so per-context caches are reused across tests."""
    return standard_contexts()[name]()


@pytest.fixture
def ctx():
    return context


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
