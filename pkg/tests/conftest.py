import pytest

from acceptance_log import LINES


def pytest_terminal_summary(terminalreporter):
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def corpus():
    from posetchains import gallery
    from posetchains.gallery import list_entries

    return {name: gallery(name) for name in list_entries()}
