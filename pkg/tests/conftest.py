import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture
def report_line():
    """Record a PASS/FAIL line printed in the terminal summary."""
    def record(name, ok, detail=""):
        _ACCEPTANCE_LINES.append("%s  %s  %s" % ("PASS" if ok else "FAIL", name, detail))
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
