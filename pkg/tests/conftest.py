from __future__ import annotations

_RESULTS: dict = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance" in report.nodeid and name.startswith("test_criterion_"):
        if report.when == "call" or report.outcome != "passed":
            _RESULTS[int(name.rsplit("_", 1)[-1])] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        outcome = _RESULTS.get(n)
        status = {"passed": "PASS", None: "NOT RUN"}.get(outcome, "FAIL")
        terminalreporter.write_line(f"criterion {n}: {status}  {CRITERIA[n]}")
