import pytest

from anttrack.topology import NetworkTopology


def path_topology(n: int) -> NetworkTopology:
    return NetworkTopology.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_topology(n: int) -> NetworkTopology:
    return NetworkTopology.from_edges(n, [(0, i) for i in range(1, n)])


def grid_topology(rows: int, cols: int) -> NetworkTopology:
    edges = []
    for r in range(rows):
        for c in range(cols):
            node = r * cols + c
            if c + 1 < cols:
                edges.append((node, node + 1))
            if r + 1 < rows:
                edges.append((node, node + cols))
    return NetworkTopology.from_edges(rows * cols, edges)


@pytest.fixture
def path3():
    return path_topology(3)


@pytest.fixture
def path10():
    return path_topology(10)


@pytest.fixture
def star10():
    return star_topology(10)


@pytest.fixture
def grid4x4():
    return grid_topology(4, 4)
