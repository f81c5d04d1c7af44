import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from digitop import graph as gc  # noqa: E402
from digitop.graph import Graph  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def octahedron() -> Graph:
    # 0-1, 2-3, 4-5 are the antipodal pairs
    s0 = gc.zero_sphere()
    return gc.join_all([s0, s0, s0])


@pytest.fixture
def wheel() -> Graph:
    # 4-cycle 0..3 with apex 4
    return Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4), (2, 4), (3, 4)])


@pytest.fixture
def triangle() -> Graph:
    return gc.complete_graph(3)
