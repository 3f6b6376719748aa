import pytest

from signed_toric.graph import from_edges


# filled by test_acceptance.py; reported once at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def c4():
    return from_edges(4, [(1, 2), (2, 3), (3, 4), (4, 1)])


@pytest.fixture
def c3():
    return from_edges(3, [(1, 2), (2, 3), (3, 1)])
