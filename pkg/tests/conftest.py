import pytest

from domtree.graph import GroupFamily, WeightedGraph
from domtree.oracle_config import OracleGuards


def path_graph(n, weights=None):
    weights = weights or [1] * (n - 1)
    return WeightedGraph.from_edges(n, [(i, i + 1, w) for i, w in enumerate(weights)])


@pytest.fixture
def guards():
    return OracleGuards()


@pytest.fixture
def k3():
    return WeightedGraph.from_edges(3, [(0, 1, 1), (1, 2, 2), (0, 2, 3)])


@pytest.fixture
def p4():
    """a-b-c-d with weights 1, 2, 3"""
    return path_graph(4, [1, 2, 3])


@pytest.fixture
def p5():
    return path_graph(5)


@pytest.fixture
def p7():
    return path_graph(7)


@pytest.fixture
def claw():
    """K1,3 with the hub at 0"""
    return WeightedGraph.from_edges(4, [(0, 1, 4), (0, 2, 5), (0, 3, 6)])


@pytest.fixture
def c5():
    return WeightedGraph.unweighted(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])


@pytest.fixture
def spider():
    """Three legs of length 3 around vertex 0"""
    edges = []
    for leg in range(3):
        first = 1 + 3 * leg
        edges += [(0, first), (first, first + 1), (first + 1, first + 2)]
    return WeightedGraph.unweighted(10, edges)


@pytest.fixture
def pentagon():
    """Group Steiner instance: unit weights, groups {0,1}, {0,4}, {2,3}"""
    g = WeightedGraph.unweighted(5, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 0)])
    groups = GroupFamily(5, (frozenset({0, 1}), frozenset({0, 4}), frozenset({2, 3})))
    return g, groups


@pytest.fixture
def hp_seven():
    """Hamiltonian path instance with seven vertices"""
    return WeightedGraph.unweighted(
        7,
        [
            (0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 5),
            (2, 6), (3, 4), (3, 6), (4, 6), (5, 6),
        ],
    )
