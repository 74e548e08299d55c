import numpy as np
import pytest

from walklocal.ensembles import complete_graph, cycle_graph, path_graph
from walklocal.graph import Graph

ACCEPTANCE_KEY = pytest.StashKey[list]()

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)


def pytest_terminal_summary(terminalreporter):
    lines = terminalreporter.config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance(request):
    """Collects one pass/fail line per acceptance criterion for the summary."""
    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, [])
    return lines.append


@pytest.fixture
def triangle():
    return complete_graph(3)


@pytest.fixture
def path3():
    return path_graph(3)


@pytest.fixture
def edge2():
    return Graph.from_edges(2, [(1, 2)])


@pytest.fixture
def square_with_tail():
    return Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 1), (5, 1)])


@pytest.fixture
def cycle5():
    return cycle_graph(5)
