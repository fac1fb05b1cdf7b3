from itertools import combinations

from hypothesis import strategies as st

from domtree.graph import GroupFamily, WeightedGraph
from domtree.weights import ExtWeight


@st.composite
def weighted_graphs(draw, min_n=1, max_n=6, max_weight=10, connected=False, min_weight=1):
    n = draw(st.integers(min_n, max_n))
    chosen = set()
    if connected:
        for v in range(1, n):
            chosen.add((draw(st.integers(0, v - 1)), v))
    for pair in combinations(range(n), 2):
        if draw(st.booleans()):
            chosen.add(pair)
    edges = [
        (u, v, ExtWeight(draw(st.integers(min_weight, max_weight)))) for u, v in sorted(chosen)
    ]
    return WeightedGraph(n, tuple(edges))


@st.composite
def gst_instances(draw, min_n=1, max_n=6, max_groups=3):
    g = draw(weighted_graphs(min_n=min_n, max_n=max_n))
    groups = draw(
        st.lists(
            st.frozensets(st.integers(0, g.n - 1), min_size=1, max_size=3),
            min_size=1,
            max_size=max_groups,
        )
    )
    return g, GroupFamily(g.n, tuple(groups))


@st.composite
def trees(draw, min_n=1, max_n=8, max_weight=10):
    n = draw(st.integers(min_n, max_n))
    edges = [
        (draw(st.integers(0, v - 1)), v, ExtWeight(draw(st.integers(1, max_weight))))
        for v in range(1, n)
    ]
    return WeightedGraph(n, tuple(edges))
