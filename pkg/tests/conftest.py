"""Shared pytest wiring: replay acceptance-criterion lines at the end."""

from acceptance_log import LINES


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
