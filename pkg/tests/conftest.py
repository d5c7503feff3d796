import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import N1, N2  # noqa: E402
from hmnet.graph import Graph  # noqa: E402


@pytest.fixture
def n1():
    return Graph.from_edges(8, N1)


@pytest.fixture
def n2():
    return Graph.from_edges(8, N2)


def pytest_terminal_summary(terminalreporter):
    from helpers import VERDICTS

    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
