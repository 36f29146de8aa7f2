"""Prints the acceptance scoreboard at the end of every run."""

ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = "test_acceptance.py::test_criterion_"
    if marker not in report.nodeid:
        return
    number = int(report.nodeid.split(marker)[1].split("_")[0])
    ACCEPTANCE[number] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number:2d}: {ACCEPTANCE[number]}  {CRITERIA[number]}")
