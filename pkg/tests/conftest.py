from __future__ import annotations

import pytest

from inquest.fixtures import load_case

_acceptance_results: dict[str, str] = {}


@pytest.fixture(scope="session")
def case_a():
    return load_case("case_a")


@pytest.fixture(scope="session")
def case_b():
    return load_case("case_b")


@pytest.fixture(scope="session")
def case_c():
    return load_case("case_c")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    label = getattr(getattr(item, "function", None), "criterion_label", None)
    if label:
        _acceptance_results[label] = report.outcome


def pytest_terminal_summary(terminalreporter):
    # One status line per acceptance criterion, printed after the run.
    if not _acceptance_results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for label, outcome in _acceptance_results.items():
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {label}")
