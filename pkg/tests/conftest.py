import pytest

from bkp.instance import Instance

# lines collected by the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES = []


@pytest.fixture
def tiny():
    """The three-item instance used throughout the examples."""
    return Instance([4, 5, 3], [3, 4, 3], [2, 2, 2], 3, 6)


@pytest.fixture
def acceptance_log():
    def log(line):
        print(line)
        ACCEPTANCE_LINES.append(line)
    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
