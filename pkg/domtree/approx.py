"""
Greedy weighted set cover, the dominating star approximation built on it, and
the dominating tree pipeline through the group Steiner tree reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, FrozenSet, List, Optional, Set, Tuple

import networkx as nx

from .exact import SetCoverInstance, SolveOutcome
from .graph import GroupFamily, SubgraphSolution, WeightedGraph, check_solution
from .oracle_config import OracleGuards, default_oracle_guards
from .reductions import (
    LiftError,
    lift_gst_to_mdt_solution,
    lift_sc_to_mds_solution,
    reduce_mdt_to_gst,
    reduce_mds_to_sc,
)
from .weights import ExtWeight


def harmonic_number(m: int) -> Fraction:
    """H(m) = 1 + 1/2 + ... + 1/m, exactly; H(0) = 0."""
    return sum((Fraction(1, k) for k in range(1, m + 1)), Fraction(0))


@dataclass(frozen=True)
class ApproxReport:
    """
    Approximate solution next to the oracle value, when one is known.
    The ratio is only defined for a positive oracle weight.
    """

    solution: Any
    weight: ExtWeight
    oracle_weight: Optional[ExtWeight] = None
    ratio: Optional[Fraction] = field(init=False, default=None)

    def __post_init__(self):
        if self.oracle_weight is not None:
            object.__setattr__(self, "ratio", self.weight.ratio_to(self.oracle_weight))

    def within(self, bound: Fraction) -> bool:
        """True when weight <= bound * oracle; with a zero optimum only an exact zero passes."""
        if self.oracle_weight is None:
            raise ValueError("No oracle weight to compare against")
        if self.oracle_weight.units == 0:
            return self.weight.units == 0
        return self.ratio <= bound


def approx_report(
    outcome: SolveOutcome, oracle: Optional[SolveOutcome] = None
) -> Optional[ApproxReport]:
    if not outcome.feasible:
        return None
    oracle_weight = oracle.weight if oracle is not None and oracle.feasible else None
    return ApproxReport(outcome.solution, outcome.weight, oracle_weight)


def greedy_set_cover(inst: SetCoverInstance) -> SolveOutcome[FrozenSet[int]]:
    """
    Classical greedy: repeatedly take the set with the lowest weight per newly
    covered element (lowest index on ties). Weight is at most H(m) times the
    optimum for a universe of m elements.
    """
    if inst.covered_mask(range(inst.num_sets)) != inst.full_mask:
        return SolveOutcome.infeasible()
    covered, chosen = 0, []
    while covered != inst.full_mask:
        best: Optional[Tuple[Fraction, int]] = None
        for i, mask in enumerate(inst.masks):
            fresh = bin(mask & ~covered).count("1")
            if fresh == 0:
                continue
            ratio = Fraction(inst.sets[i][1].units, fresh)
            if best is None or ratio < best[0]:
                best = (ratio, i)
        chosen.append(best[1])
        covered |= inst.masks[best[1]]
    cover = frozenset(chosen)
    return SolveOutcome.found(cover, inst.cover_weight(cover))


def approx_mds(
    g: WeightedGraph, guards: Optional[OracleGuards] = None
) -> SolveOutcome[SubgraphSolution]:
    """Greedy set cover for every possible center; the lightest lifted star wins."""
    best: Optional[SubgraphSolution] = None
    for c in g.vertices:
        art = reduce_mds_to_sc(g, c)
        outcome = greedy_set_cover(art.output)
        if not outcome.feasible:
            continue
        star = lift_sc_to_mds_solution(art, outcome.solution)
        if best is None or star.canonical_key < best.canonical_key:
            best = star
    if best is None:
        return SolveOutcome.infeasible()
    return SolveOutcome.found(best, best.weight)


def candidate_roots(n: int, max_roots: int) -> List[int]:
    """All vertices for small graphs, otherwise max_roots evenly spaced indices."""
    if n <= max_roots:
        return list(range(n))
    return sorted({(i * n) // max_roots for i in range(max_roots)})


def _grow_tree(
    finite: nx.Graph, groups: GroupFamily, root: int
) -> Optional[Tuple[Set[int], List[Tuple[int, int]]]]:
    in_tree, tree_edges = {root}, []
    unhit = groups.unhit(in_tree)
    while unhit:
        dist, paths = nx.multi_source_dijkstra(finite, sorted(in_tree), weight="weight")
        targets = [
            (d, v)
            for v, d in dist.items()
            if v not in in_tree and any(v in groups[i] for i in unhit)
        ]
        if not targets:
            return None
        _, target = min(targets)
        path = paths[target]
        for a, b in zip(path, path[1:]):
            tree_edges.append((a, b))
            in_tree.add(b)
        unhit = groups.unhit(in_tree)
    return in_tree, tree_edges


def _prune_leaves(
    groups: GroupFamily, vertices: Set[int], edges: List[Tuple[int, int]]
) -> Tuple[Set[int], List[Tuple[int, int]]]:
    vertices, edges = set(vertices), list(edges)
    pruned = True
    while pruned and len(vertices) > 1:
        pruned = False
        degree = {v: 0 for v in vertices}
        for a, b in edges:
            degree[a] += 1
            degree[b] += 1
        for leaf in sorted(v for v, d in degree.items() if d == 1):
            if not groups.unhit(vertices - {leaf}):
                vertices.discard(leaf)
                edges = [e for e in edges if leaf not in e]
                pruned = True
                break
    return vertices, edges


def heuristic_gst(
    g: WeightedGraph, groups: GroupFamily, guards: Optional[OracleGuards] = None
) -> SolveOutcome[SubgraphSolution]:
    """
    Shortest-path greedy for group Steiner trees. From each candidate root the
    tree repeatedly absorbs the finite shortest path to the closest vertex of a
    group it does not hit yet (lowest index on ties); redundant leaves are then
    pruned. No approximation guarantee is claimed.
    """
    guards = guards or default_oracle_guards()
    if groups.n != g.n:
        raise ValueError("Group family was built for a different graph")
    finite = g.finite_nx_graph
    best: Optional[SubgraphSolution] = None
    for root in candidate_roots(g.n, guards.max_roots):
        grown = _grow_tree(finite, groups, root)
        if grown is None:
            continue
        vertices, edges = _prune_leaves(groups, *grown)
        tree = SubgraphSolution.build(g, "tree", vertices, edges)
        if best is None or tree.canonical_key < best.canonical_key:
            best = tree
    if best is None:
        return SolveOutcome.infeasible()
    return SolveOutcome.found(best, best.weight)


def approx_mdt(
    g: WeightedGraph, guards: Optional[OracleGuards] = None
) -> SolveOutcome[SubgraphSolution]:
    """Reduce to group Steiner tree, run the heuristic and lift the tree back."""
    art = reduce_mdt_to_gst(g)
    outcome = heuristic_gst(art.output.graph, art.output.groups, guards)
    if not outcome.feasible:
        return SolveOutcome.infeasible()
    tree = lift_gst_to_mdt_solution(art, outcome.solution)
    if not check_solution(g, tree, "mdt").feasible:
        raise LiftError("Pipeline produced an invalid dominating tree")
    return SolveOutcome.found(tree, tree.weight)
