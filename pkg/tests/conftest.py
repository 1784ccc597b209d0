import numpy as np
import pytest

from edgewave.datasets import random_graph, sioux_falls_graph
from edgewave.graph import build_graph, line_graph
from edgewave.spectral import gft_basis

ACCEPTANCE_LINES = []


@pytest.fixture
def p3():
    return build_graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def k3():
    return build_graph(3, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def star():
    return build_graph(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture(scope="session")
def sioux():
    return sioux_falls_graph()


@pytest.fixture(scope="session")
def sioux_basis(sioux):
    return gft_basis(line_graph(sioux).laplacian())


@pytest.fixture
def p3_dual_basis(p3):
    return gft_basis(line_graph(p3).laplacian())


def small_random_graphs(count, max_nodes=12, p=0.5, min_edges=1):
    """Seeded random graphs with 3..max_nodes nodes and at least ``min_edges`` edges."""
    out = []
    seed = 0
    while len(out) < count:
        n = 3 + seed % (max_nodes - 2)
        g = random_graph(n, p, seed=seed)
        seed += 1
        if g.num_edges >= min_edges:
            out.append(g)
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
