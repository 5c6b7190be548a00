import pytest

from dgatool import catalog as cat

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_lines():
    return ACCEPTANCE_LINES


@pytest.fixture(scope="session")
def heis1():
    return cat.build("heis1")


@pytest.fixture(scope="session")
def link2():
    return cat.build("link2")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
