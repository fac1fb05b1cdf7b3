import pytest
from hypothesis import given, settings, strategies as st

from domtree.graph import (
    GroupFamily,
    SolutionStructureError,
    SubgraphSolution,
    WeightedGraph,
    check_solution,
    closed_neighborhood,
    dominates,
    is_connected_induced,
    max_degree,
    mst_induced,
    spanning_trees,
    undominated,
    unit_weight_copy,
    validate_gst,
    validate_solution,
)
from domtree.weights import INFINITE, ExtWeight

from strategies import weighted_graphs


def test_closed_neighborhood(p4):
    assert closed_neighborhood(p4, 1) == {0, 1, 2}
    isolated = WeightedGraph(2)
    assert closed_neighborhood(isolated, 1) == {1}
    k4 = WeightedGraph.unweighted(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert closed_neighborhood(k4, 2) == {0, 1, 2, 3}


def test_dominates(k3, p4):
    assert dominates(k3, {0})
    assert not dominates(p4, {1})
    assert dominates(p4, {1, 2})
    assert undominated(p4, {1}) == [3]


def test_domination_ignores_infinite_weights():
    g = WeightedGraph.from_edges(2, [(0, 1, None)])
    assert dominates(g, {0})


def test_empty_set_dominates_only_the_empty_graph(p4):
    assert dominates(WeightedGraph(0), set())
    assert not dominates(p4, set())


def test_invalid_vertices_are_rejected(p4):
    with pytest.raises(ValueError):
        dominates(p4, {4})


def test_connectivity_of_induced_subgraphs(p4):
    assert is_connected_induced(p4, {0, 1})
    assert not is_connected_induced(p4, {0, 2})
    assert is_connected_induced(p4, {3})
    with pytest.raises(ValueError):
        is_connected_induced(p4, set())


def test_mst_of_the_triangle(k3):
    tree = mst_induced(k3, {0, 1, 2})
    assert tree.edges == ((0, 1), (1, 2))
    assert tree.weight == ExtWeight(3)


def test_mst_of_a_singleton_and_an_edge():
    g = WeightedGraph.from_edges(2, [(0, 1, 5)])
    assert mst_induced(g, {0}).weight == ExtWeight(0)
    assert mst_induced(g, {0}).edges == ()
    assert mst_induced(g, {0, 1}).edges == ((0, 1),)
    assert mst_induced(g, {0, 1}).weight == ExtWeight(5)


def test_mst_of_a_disconnected_set_fails(p4):
    with pytest.raises(ValueError):
        mst_induced(p4, {0, 3})


def test_mst_ignores_infinite_edges_outside_the_set(p4):
    extended = WeightedGraph(p4.n, p4.edge_list + ((0, 3, INFINITE),))
    assert mst_induced(extended, {1, 2}).weight == mst_induced(p4, {1, 2}).weight


@settings(max_examples=60, deadline=None)
@given(weighted_graphs(max_n=6, connected=True))
def test_mst_matches_brute_force(g):
    best = min(t.weight for t in spanning_trees(g, g.vertices))
    assert mst_induced(g, g.vertices).weight == best


def test_graph_validation():
    with pytest.raises(ValueError):
        WeightedGraph.from_edges(2, [(0, 0, 1)])
    with pytest.raises(ValueError):
        WeightedGraph.from_edges(2, [(0, 2, 1)])
    with pytest.raises(ValueError):
        WeightedGraph.from_edges(2, [(0, 1, 1), (1, 0, 2)])
    with pytest.raises(TypeError):
        WeightedGraph(2, ((0, 1, 1),))


def test_edges_are_normalized():
    g = WeightedGraph.from_edges(3, [(2, 1, 4), (1, 0, 3)])
    assert g.edges() == [(0, 1), (1, 2)]
    assert g.weight(2, 1) == ExtWeight(4)
    with pytest.raises(KeyError):
        g.weight(0, 2)


def test_max_degree_and_unit_copy(claw):
    assert max_degree(claw) == 3
    assert max_degree(WeightedGraph(0)) == 0
    unit = unit_weight_copy(claw)
    assert all(w == ExtWeight(1) for _, _, w in unit.edge_list)
    assert unit.edges() == claw.edges()


def test_valid_dominating_tree(p4):
    tree = SubgraphSolution.build(p4, "tree", {1, 2}, [(1, 2)])
    assert tree.weight == ExtWeight(2)
    assert validate_solution(p4, tree, "mdt")


def test_star_that_misses_a_vertex(p5):
    star = SubgraphSolution.build(p5, "star", {0, 1, 2}, [(0, 1), (1, 2)])
    check = check_solution(p5, star, "mds")
    assert check.kind_ok
    assert not check.feasible
    assert check.undominated == (4,)
    assert "undominated vertices: 4" in check.describe()


def test_group_steiner_tree_on_the_triangle(k3):
    groups = GroupFamily(3, (frozenset({0}), frozenset({1})))
    tree = SubgraphSolution.build(k3, "tree", {0, 1}, [(0, 1)])
    assert validate_gst(k3, groups, tree)
    miss = GroupFamily(3, (frozenset({2}),))
    assert check_solution(k3, tree, "gst", miss).unhit_groups == (0,)


def test_kind_violations_are_reported_apart_from_feasibility(k3, p5):
    cycle = SubgraphSolution.build(k3, "tree", {0, 1, 2}, [(0, 1), (1, 2), (0, 2)])
    check = check_solution(k3, cycle, "mdt")
    assert not check.kind_ok
    assert check.undominated == ()

    long_path = SubgraphSolution.build(p5, "tree", {1, 2, 3}, [(1, 2), (2, 3)])
    assert check_solution(p5, long_path, "mds").kind_ok

    claw_like = SubgraphSolution.build(p5, "star", {0, 1, 2, 3}, [(0, 1), (1, 2), (2, 3)])
    assert not check_solution(p5, claw_like, "mds").kind_ok


def test_path_kind_rejects_branching(claw):
    branching = SubgraphSolution.build(claw, "path", {0, 1, 2, 3}, [(0, 1), (0, 2), (0, 3)])
    assert "degree" in check_solution(claw, branching, "mdp").kind_error
    assert check_solution(claw, branching.with_kind("star"), "mds").feasible


def test_kinds_are_judged_by_shape(p5, claw):
    short_path = SubgraphSolution.build(p5, "path", {1, 2, 3}, [(1, 2), (2, 3)])
    assert check_solution(p5, short_path, "mds").feasible
    assert check_solution(p5, short_path.with_kind("star"), "mdp").feasible
    long_path = SubgraphSolution.build(p5, "path", {0, 1, 2, 3}, [(0, 1), (1, 2), (2, 3)])
    assert "diameter" in check_solution(p5, long_path, "mds").kind_error
    hub = SubgraphSolution.build(claw, "star", {0, 1, 2, 3}, [(0, 1), (0, 2), (0, 3)])
    assert "degree" in check_solution(claw, hub, "mdp").kind_error


def test_declared_weight_is_rechecked(p4):
    lying = SubgraphSolution("tree", frozenset({1, 2}), ((1, 2),), ExtWeight(1))
    check = check_solution(p4, lying, "mdt")
    assert check.weight_mismatch
    assert not check.feasible


def test_solutions_outside_the_graph_are_structural_errors(p4):
    with pytest.raises(SolutionStructureError):
        SubgraphSolution.build(p4, "tree", {0, 2}, [(0, 2)])
    ghost = SubgraphSolution("tree", frozenset({0, 7}), (), ExtWeight(0))
    with pytest.raises(SolutionStructureError):
        check_solution(p4, ghost, "mdt")


@st.composite
def shaped_solutions(draw):
    g = draw(weighted_graphs(min_n=1, max_n=6))
    order = draw(st.permutations(list(g.vertices)))
    k = draw(st.integers(1, g.n))
    walk = [order[0]]
    for v in order[1:k]:
        if not g.has_edge(walk[-1], v):
            break
        walk.append(v)
    path = SubgraphSolution.build(g, "path", walk, zip(walk, walk[1:]))
    center = order[0]
    leaves = [v for v in order[1:k] if g.has_edge(center, v)]
    star = SubgraphSolution.build(g, "star", {center, *leaves}, [(center, v) for v in leaves])
    return g, path, star


@settings(max_examples=100, deadline=None)
@given(shaped_solutions())
def test_stars_and_paths_are_trees(instance):
    g, path, star = instance
    for solution, problem in ((path, "mdp"), (star, "mds")):
        check = check_solution(g, solution, problem)
        assert check.kind_ok
        as_tree = check_solution(g, solution.with_kind("tree"), "mdt")
        assert as_tree.kind_ok
        if check.feasible:
            assert as_tree.feasible
