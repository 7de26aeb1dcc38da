import re

_CRITERION = re.compile(r"test_criterion_(\d+)_")
_outcomes: dict = {}


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if not match:
        return
    key = int(match.group(1))
    if report.failed:
        _outcomes[key] = False
    elif report.when == "call":
        _outcomes.setdefault(key, True)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_outcomes):
        terminalreporter.write_line(f"criterion {key:02d}: {'PASS' if _outcomes[key] else 'FAIL'}")
