import os

from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None, derandomize="CGK_SEED" not in os.environ)
settings.load_profile("default")

from helpers import ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
