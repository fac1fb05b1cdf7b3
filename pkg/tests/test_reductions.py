import pytest
from hypothesis import given, settings

from domtree.exact import (
    SolveOutcome,
    exact_dominating_set,
    exact_gst,
    exact_mdp,
    exact_mds,
    exact_mdt,
    exact_set_cover,
    find_hamiltonian_path,
)
from domtree.graph import GroupFamily, SubgraphSolution, WeightedGraph, max_degree, validate_solution
from domtree.reductions import (
    IsolatedVertexError,
    LiftError,
    cover_from_star,
    decide_hp_via_mdp,
    embed_gst_solution,
    embed_mdt_solution,
    lift_gst_to_mdt_solution,
    lift_mds_to_dom_solution,
    lift_mdt_to_gst_solution,
    lift_sc_to_mds_solution,
    path_from_hamiltonian,
    path_order,
    reduce_dom_to_mds,
    reduce_gst_to_mdt,
    reduce_hp_to_mdp,
    reduce_mds_to_sc,
    reduce_mdt_to_gst,
    star_from_dominating_set,
)
from domtree.weights import INFINITE, ExtWeight, ZERO

from strategies import gst_instances, weighted_graphs


class TestTreeToGroupSteiner:
    def test_groups_are_closed_neighbourhoods(self, p4):
        art = reduce_mdt_to_gst(p4)
        assert art.output.graph == p4
        assert list(art.output.groups) == [{0, 1}, {0, 1, 2}, {1, 2, 3}, {2, 3}]

    def test_triangle_and_isolated_vertex(self, k3):
        assert list(reduce_mdt_to_gst(k3).output.groups) == [{0, 1, 2}] * 3
        lonely = WeightedGraph.unweighted(3, [(0, 1)])
        assert reduce_mdt_to_gst(lonely).output.groups[2] == {2}

    def test_largest_group_is_max_degree_plus_one(self, claw):
        groups = reduce_mdt_to_gst(claw).output.groups
        assert max(len(g) for g in groups) == max_degree(claw) + 1

    def test_lift_keeps_the_tree(self, p4, k3):
        art = reduce_mdt_to_gst(p4)
        tree = SubgraphSolution.build(p4, "tree", {1, 2}, [(1, 2)])
        assert lift_gst_to_mdt_solution(art, tree).weight == ExtWeight(2)
        single = SubgraphSolution.singleton("tree", 0)
        assert lift_gst_to_mdt_solution(reduce_mdt_to_gst(k3), single).weight == ZERO

    def test_lift_rejects_trees_missing_a_group(self, p4):
        art = reduce_mdt_to_gst(p4)
        with pytest.raises(LiftError):
            lift_gst_to_mdt_solution(art, SubgraphSolution.singleton("tree", 0))

    @settings(max_examples=40, deadline=None)
    @given(weighted_graphs(min_n=1, max_n=7, connected=True))
    def test_optima_agree(self, g):
        art = reduce_mdt_to_gst(g)
        source = exact_mdt(g)
        target = exact_gst(art.output.graph, art.output.groups)
        assert source.weight == target.weight
        assert lift_gst_to_mdt_solution(art, target.solution).weight == target.weight
        assert embed_mdt_solution(art, source.solution).weight == source.weight


class TestGroupSteinerToTree:
    def test_pentagon_layout(self, pentagon):
        g, groups = pentagon
        art = reduce_gst_to_mdt(g, groups)
        out = art.output
        assert out.n == 8
        assert out.neighbors(5) == {0, 1}
        assert all(out.has_edge(u, v) for u in range(5) for v in range(u + 1, 5))
        assert not any(out.has_edge(a, b) for a in range(5, 8) for b in range(5, 8) if a < b)
        finite = {(u, v) for u, v, w in out.edge_list if w.is_finite}
        assert finite == set(g.edges())
        assert art.gadget_vertices() == {5, 6, 7}

    def test_single_group_on_an_edge(self):
        g = WeightedGraph.from_edges(2, [(0, 1, 4)])
        art = reduce_gst_to_mdt(g, GroupFamily(2, (frozenset({0}),)))
        assert art.output.n == 3
        assert art.output.neighbors(2) == {0}
        assert art.output.weight(0, 2) == INFINITE

    def test_pentagon_round_trip(self, pentagon):
        g, groups = pentagon
        art = reduce_gst_to_mdt(g, groups)
        gst = exact_gst(g, groups)
        mdt = exact_mdt(art.output)
        assert mdt.weight == gst.weight == ExtWeight(1)
        assert lift_mdt_to_gst_solution(art, mdt.solution).weight == gst.weight
        edge = SubgraphSolution.build(g, "tree", {0, 1}, [(0, 1)])
        with pytest.raises(LiftError):
            embed_gst_solution(art, edge)
        assert embed_gst_solution(art, gst.solution).weight == ExtWeight(1)

    def test_lone_gadget_vertex_lifts_to_a_group_member(self):
        g = WeightedGraph.from_edges(2, [(0, 1, 3)])
        art = reduce_gst_to_mdt(g, GroupFamily(2, (frozenset({0, 1}),)))
        lifted = lift_mdt_to_gst_solution(art, SubgraphSolution.singleton("tree", 2))
        assert lifted.vertices == {0}
        assert lifted.weight == ZERO

    def test_infinite_trees_are_not_lifted(self, pentagon):
        g, groups = pentagon
        art = reduce_gst_to_mdt(g, groups)
        tree = SubgraphSolution.build(art.output, "tree", {0, 2, 5}, [(0, 2), (0, 5)])
        with pytest.raises(LiftError):
            lift_mdt_to_gst_solution(art, tree)

    def test_empty_family_is_rejected(self, p4):
        with pytest.raises(ValueError):
            reduce_gst_to_mdt(p4, GroupFamily(4, ()))

    @settings(max_examples=40, deadline=None)
    @given(gst_instances(max_n=6))
    def test_optima_and_infeasibility_agree(self, instance):
        g, groups = instance
        art = reduce_gst_to_mdt(g, groups)
        source = exact_gst(g, groups)
        target = exact_mdt(art.output)
        assert source.feasible == target.feasible
        if source.feasible:
            assert source.weight == target.weight
            assert lift_mdt_to_gst_solution(art, target.solution).weight == target.weight


class TestDominatingSetToStar:
    def test_cycle_layout(self, c5):
        art = reduce_dom_to_mds(c5)
        out = art.output
        assert out.n == 11
        assert art.center == 10
        infinite = [(u, v) for u, v, w in out.edge_list if w.is_infinite]
        unit = [(u, v) for u, v, w in out.edge_list if w == ExtWeight(1)]
        assert len(infinite) == 2 * 5 + 5
        assert sorted(unit) == [(v, 10) for v in range(5)]
        assert out.has_edge(0, 6) and out.has_edge(1, 5) and out.has_edge(0, 5)

    def test_edge_layout(self):
        art = reduce_dom_to_mds(WeightedGraph.unweighted(2, [(0, 1)]))
        assert art.output.neighbors(4) == {0, 1}
        assert art.output.weight(0, 3) == INFINITE
        assert art.output.weight(1, 2) == INFINITE

    def test_isolated_vertices_are_rejected(self):
        with pytest.raises(IsolatedVertexError):
            reduce_dom_to_mds(WeightedGraph.unweighted(3, [(0, 1)]))

    def test_lifts_on_the_cycle(self, c5):
        art = reduce_dom_to_mds(c5)
        everything = SubgraphSolution.build(
            art.output, "star", {10, *range(5)}, [(10, v) for v in range(5)]
        )
        assert lift_mds_to_dom_solution(art, everything) == {0, 1, 2, 3, 4}
        pair = SubgraphSolution.build(art.output, "star", {10, 0, 2}, [(10, 0), (10, 2)])
        assert lift_mds_to_dom_solution(art, pair) == {0, 2}
        star = star_from_dominating_set(art, {0, 2})
        assert star.weight == ExtWeight(2)
        assert validate_solution(art.output, star, "mds")

    def test_star_from_a_non_dominating_set_fails(self, c5):
        with pytest.raises(LiftError):
            star_from_dominating_set(reduce_dom_to_mds(c5), {0})

    def test_scale_multiplies_gadget_weights(self, c5):
        art = reduce_dom_to_mds(c5, scale=100)
        assert exact_mds(art.output).weight == ExtWeight(200)
        assert star_from_dominating_set(art, {1, 3}).weight == ExtWeight(200)

    @settings(max_examples=40, deadline=None)
    @given(weighted_graphs(min_n=2, max_n=6, connected=True))
    def test_optima_agree(self, g):
        art = reduce_dom_to_mds(g)
        dom_set = exact_dominating_set(g)
        star = exact_mds(art.output)
        assert star.weight == ExtWeight(len(dom_set))
        assert len(lift_mds_to_dom_solution(art, star.solution)) == len(dom_set)


class TestStarToSetCover:
    def test_center_of_p5(self, p5):
        art = reduce_mds_to_sc(p5, 2)
        assert art.element_map == (0, 4)
        assert art.set_map == (1, 3)
        assert art.output.sets == ((frozenset({0}), ExtWeight(1)), (frozenset({1}), ExtWeight(1)))

    def test_hub_of_the_claw(self, claw):
        art = reduce_mds_to_sc(claw, 0)
        assert art.output.universe_size == 0
        cover = exact_set_cover(art.output)
        assert cover.solution == frozenset()
        star = lift_sc_to_mds_solution(art, cover.solution)
        assert star.vertices == {0}
        assert star.weight == ZERO

    def test_off_center_is_infeasible(self, p5):
        art = reduce_mds_to_sc(p5, 1)
        assert art.element_map == (3, 4)
        assert art.output.sets[0][0] == frozenset()
        assert art.output.sets[1][0] == {0}
        assert not exact_set_cover(art.output).feasible

    def test_lift_and_back(self, p5):
        art = reduce_mds_to_sc(p5, 2)
        star = lift_sc_to_mds_solution(art, {0, 1})
        assert star.weight == ExtWeight(2)
        assert validate_solution(p5, star, "mds")
        assert cover_from_star(art, star) == {0, 1}
        with pytest.raises(LiftError):
            lift_sc_to_mds_solution(art, {0})

    def test_infinite_neighbours_are_not_candidates(self):
        g = WeightedGraph.from_edges(3, [(0, 1, None), (0, 2, 2)])
        art = reduce_mds_to_sc(g, 0)
        assert art.set_map == (2,)

    def test_invalid_center(self, p5):
        with pytest.raises(ValueError):
            reduce_mds_to_sc(p5, 5)

    @settings(max_examples=40, deadline=None)
    @given(weighted_graphs(min_n=1, max_n=6))
    def test_per_center_optima_agree(self, g):
        for c in g.vertices:
            art = reduce_mds_to_sc(g, c)
            star = exact_mds(g, centers=[c])
            cover = exact_set_cover(art.output)
            assert star.feasible == cover.feasible
            if cover.feasible:
                assert star.weight == cover.weight
                assert lift_sc_to_mds_solution(art, cover.solution).weight == cover.weight
                assert art.output.cover_weight(cover_from_star(art, star.solution)) == star.weight


class TestHamiltonianPathToDominatingPath:
    def test_triangle_layout(self, k3):
        art = reduce_hp_to_mdp(k3)
        out = art.output
        assert out.n == 6
        assert sorted(w.units for _, _, w in out.edge_list if w.is_finite) == [0, 0, 0]
        assert [(u, v) for u, v, w in out.edge_list if w.is_infinite] == [(0, 3), (1, 4), (2, 5)]

    def test_seven_vertex_instance(self, hp_seven):
        art = reduce_hp_to_mdp(hp_seven)
        assert art.output.n == 14
        assert sum(w.is_infinite for _, _, w in art.output.edge_list) == 7
        outcome = exact_mdp(art.output)
        assert decide_hp_via_mdp(art, outcome)

    def test_decisions(self, k3, claw, p4):
        for g, expected in ((k3, True), (claw, False), (p4, True)):
            art = reduce_hp_to_mdp(g)
            assert decide_hp_via_mdp(art, exact_mdp(art.output)) is expected

    def test_witness_order(self, p4):
        art = reduce_hp_to_mdp(p4)
        outcome = exact_mdp(art.output)
        assert path_order(outcome.solution) == (0, 1, 2, 3)
        assert path_from_hamiltonian(art, (3, 2, 1, 0)).weight == ZERO

    def test_infeasible_outcome_decides_no(self, claw):
        assert not decide_hp_via_mdp(reduce_hp_to_mdp(claw), SolveOutcome.infeasible())

    def test_non_hamiltonian_order_is_rejected(self, claw):
        with pytest.raises(LiftError):
            path_from_hamiltonian(reduce_hp_to_mdp(claw), (1, 0, 2, 3))

    @settings(max_examples=40, deadline=None)
    @given(weighted_graphs(min_n=1, max_n=6))
    def test_decision_agrees_with_search(self, g):
        art = reduce_hp_to_mdp(g)
        assert decide_hp_via_mdp(art, exact_mdp(art.output)) == (find_hamiltonian_path(g) is not None)
