"""Shared pytest hooks.

The acceptance tests record one pass/fail line per criterion; replaying them
in the terminal summary guarantees they appear in the run log even though
pytest captures per-test output.
"""

ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
