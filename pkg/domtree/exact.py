"""
Brute-force exact solvers used as ground truth at desk scale.

Every oracle enumerates candidates in a fixed order (vertex subsets by
increasing size, then lexicographically) and keeps the first optimum, so equal
inputs always produce equal solutions. Size guards fail loudly instead of
running for hours.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import (
    Callable,
    FrozenSet,
    Generic,
    Iterable,
    List,
    Optional,
    Sequence,
    Tuple,
    TypeVar,
)

from .graph import (
    SubgraphSolution,
    GroupFamily,
    WeightedGraph,
    is_connected_induced,
    mst_induced,
    unit_weight_copy,
    vertex_mask,
)
from .oracle_config import OracleGuards, default_oracle_guards
from .weights import ExtWeight, ZERO, total_weight

S = TypeVar("S")


class GuardExceededError(RuntimeError):
    """An oracle was asked to solve an instance beyond its size guard."""


@dataclass(frozen=True)
class SolveOutcome(Generic[S]):
    """
    Either a feasible solution with its finite weight, or Infeasible
    (both fields None).
    """

    solution: Optional[S] = None
    weight: Optional[ExtWeight] = None

    def __post_init__(self):
        if (self.solution is None) != (self.weight is None):
            raise ValueError("A feasible outcome needs both a solution and a weight")
        if self.weight is not None and self.weight.is_infinite:
            raise ValueError("Feasible outcomes must have finite weight")

    @classmethod
    def found(cls, solution: S, weight: ExtWeight) -> SolveOutcome[S]:
        return cls(solution, weight)

    @classmethod
    def infeasible(cls) -> SolveOutcome[S]:
        return cls()

    @property
    def feasible(self) -> bool:
        return self.solution is not None

    def __str__(self):
        return f"Feasible(weight={self.weight})" if self.feasible else "Infeasible"


@dataclass(frozen=True)
class SetCoverInstance:
    """
    Weighted set cover over the universe ``0..universe_size-1``.

    Args:
        universe_size: Number of elements
        sets: Ordered (elements, weight) pairs; weights must be finite
    """

    universe_size: int
    sets: Tuple[Tuple[FrozenSet[int], ExtWeight], ...] = ()

    def __post_init__(self):
        if self.universe_size < 0:
            raise ValueError("Universe size must be non-negative")
        normalized = []
        for i, (elements, weight) in enumerate(self.sets):
            elements = frozenset(elements)
            bad = [e for e in elements if not 0 <= e < self.universe_size]
            if bad:
                raise ValueError(f"Set {i} contains elements {bad} outside the universe")
            if not isinstance(weight, ExtWeight):
                weight = ExtWeight(weight)
            if weight.is_infinite:
                raise ValueError(f"Set {i} has infinite weight")
            normalized.append((elements, weight))
        object.__setattr__(self, "sets", tuple(normalized))

    @property
    def num_sets(self) -> int:
        return len(self.sets)

    @cached_property
    def masks(self) -> Tuple[int, ...]:
        return tuple(vertex_mask(elements) for elements, _ in self.sets)

    @property
    def full_mask(self) -> int:
        return (1 << self.universe_size) - 1

    def covered_mask(self, indices: Iterable[int]) -> int:
        m = 0
        for i in indices:
            m |= self.masks[i]
        return m

    def is_cover(self, indices: Iterable[int]) -> bool:
        return self.covered_mask(indices) == self.full_mask

    def uncovered(self, indices: Iterable[int]) -> List[int]:
        m = self.covered_mask(indices)
        return [e for e in range(self.universe_size) if not m >> e & 1]

    def cover_weight(self, indices: Iterable[int]) -> ExtWeight:
        return total_weight(self.sets[i][1] for i in indices)


def _check_guard(size: int, limit: int, what: str):
    if size > limit:
        raise GuardExceededError(f"{what} {size} exceeds the oracle guard of {limit}")


def _check_non_empty(g: WeightedGraph):
    if g.n == 0:
        raise ValueError("The graph must have at least one vertex")


def _best_tree_over_subsets(
    g: WeightedGraph, accept: Callable[[int], bool], guards: OracleGuards
) -> SolveOutcome[SubgraphSolution]:
    _check_non_empty(g)
    _check_guard(g.n, guards.max_vertices, "Vertex count")
    best: Optional[SubgraphSolution] = None
    for size in range(1, g.n + 1):
        for subset in combinations(range(g.n), size):
            if not accept(vertex_mask(subset)):
                continue
            if not is_connected_induced(g, subset):
                continue
            tree = mst_induced(g, subset)
            if tree.weight.is_infinite:
                continue
            if best is None or tree.weight < best.weight:
                best = tree
                if best.weight == ZERO:
                    return SolveOutcome.found(best, best.weight)
    if best is None:
        return SolveOutcome.infeasible()
    return SolveOutcome.found(best, best.weight)


def exact_mdt(
    g: WeightedGraph, guards: Optional[OracleGuards] = None
) -> SolveOutcome[SubgraphSolution]:
    """
    Minimum finite-weight dominating tree: every connected dominating vertex set
    is spanned by its minimum spanning tree.
    """
    guards = guards or default_oracle_guards()
    full = (1 << g.n) - 1

    def dominating(mask: int) -> bool:
        m = 0
        for v in range(g.n):
            if mask >> v & 1:
                m |= g.closed_masks[v]
        return m == full

    return _best_tree_over_subsets(g, dominating, guards)


def exact_gst(
    g: WeightedGraph, groups: GroupFamily, guards: Optional[OracleGuards] = None
) -> SolveOutcome[SubgraphSolution]:
    """Minimum finite-weight tree whose vertex set intersects every group."""
    guards = guards or default_oracle_guards()
    if groups.n != g.n:
        raise ValueError("Group family was built for a different graph")
    group_masks = groups.masks
    return _best_tree_over_subsets(
        g, lambda mask: all(mask & gm for gm in group_masks), guards
    )


def exact_mds(
    g: WeightedGraph,
    guards: Optional[OracleGuards] = None,
    centers: Optional[Sequence[int]] = None,
) -> SolveOutcome[SubgraphSolution]:
    """
    Minimum dominating star. Each center c is tried with every subset of its
    finite-weight neighbors as leaves, the empty subset included.

    Args:
        g: Host graph
        guards: Oracle size limits
        centers: Restrict the search to stars centered at these vertices
    """
    guards = guards or default_oracle_guards()
    _check_non_empty(g)
    _check_guard(g.n, guards.max_vertices, "Vertex count")
    full = (1 << g.n) - 1
    centers = range(g.n) if centers is None else sorted(set(centers))
    best: Optional[SubgraphSolution] = None
    for c in centers:
        g._check_vertex(c)
        pool = sorted(v for v in g.adjacency[c] if g.weight(c, v).is_finite)
        for size in range(len(pool) + 1):
            for leaves in combinations(pool, size):
                mask = g.closed_masks[c]
                for leaf in leaves:
                    mask |= g.closed_masks[leaf]
                if mask != full:
                    continue
                star = SubgraphSolution.build(
                    g, "star", (c, *leaves), [(c, leaf) for leaf in leaves]
                )
                if best is None or star.canonical_key < best.canonical_key:
                    best = star
    if best is None:
        return SolveOutcome.infeasible()
    return SolveOutcome.found(best, best.weight)


def exact_mdp(
    g: WeightedGraph, guards: Optional[OracleGuards] = None
) -> SolveOutcome[SubgraphSolution]:
    """
    Minimum dominating path by depth-first enumeration of simple paths over
    finite edges. A path is recorded only from its smaller endpoint so each
    undirected path is seen once.
    """
    guards = guards or default_oracle_guards()
    _check_non_empty(g)
    _check_guard(g.n, guards.max_path_vertices, "Vertex count")
    full = (1 << g.n) - 1
    finite_adj = [
        sorted(v for v in g.adjacency[u] if g.weight(u, v).is_finite) for u in g.vertices
    ]
    best: List[Optional[SubgraphSolution]] = [None]

    def extend(path: List[int], on_path: int, covered: int, weight: ExtWeight):
        if covered == full and path[0] <= path[-1]:
            candidate = SubgraphSolution.build(g, "path", path, zip(path, path[1:]))
            if best[0] is None or candidate.canonical_key < best[0].canonical_key:
                best[0] = candidate
        last = path[-1]
        for nxt in finite_adj[last]:
            if on_path >> nxt & 1:
                continue
            new_weight = weight + g.weight(last, nxt)
            if best[0] is not None and best[0].weight < new_weight:
                continue
            path.append(nxt)
            extend(path, on_path | 1 << nxt, covered | g.closed_masks[nxt], new_weight)
            path.pop()

    for start in g.vertices:
        extend([start], 1 << start, g.closed_masks[start], ZERO)
    if best[0] is None:
        return SolveOutcome.infeasible()
    return SolveOutcome.found(best[0], best[0].weight)


def exact_set_cover(
    inst: SetCoverInstance, guards: Optional[OracleGuards] = None
) -> SolveOutcome[FrozenSet[int]]:
    """Minimum-weight sub-collection covering the universe."""
    guards = guards or default_oracle_guards()
    _check_guard(inst.num_sets, guards.max_sets, "Set count")
    if inst.covered_mask(range(inst.num_sets)) != inst.full_mask:
        return SolveOutcome.infeasible()
    best: Optional[Tuple[ExtWeight, Tuple[int, ...]]] = None
    for size in range(inst.num_sets + 1):
        for chosen in combinations(range(inst.num_sets), size):
            if not inst.is_cover(chosen):
                continue
            weight = inst.cover_weight(chosen)
            if best is None or weight < best[0]:
                best = (weight, chosen)
                if weight == ZERO:
                    return SolveOutcome.found(frozenset(chosen), weight)
    return SolveOutcome.found(frozenset(best[1]), best[0])


def exact_dominating_set(
    g: WeightedGraph, guards: Optional[OracleGuards] = None
) -> FrozenSet[int]:
    """Minimum-cardinality dominating set; edge weights are ignored."""
    guards = guards or default_oracle_guards()
    _check_guard(g.n, guards.max_vertices, "Vertex count")
    full = (1 << g.n) - 1
    for size in range(g.n + 1):
        for subset in combinations(range(g.n), size):
            mask = 0
            for v in subset:
                mask |= g.closed_masks[v]
            if mask == full:
                return frozenset(subset)
    raise AssertionError("the full vertex set always dominates")


def find_hamiltonian_path(
    g: WeightedGraph, guards: Optional[OracleGuards] = None
) -> Optional[Tuple[int, ...]]:
    """Backtracking search for a simple path through every vertex; None if there is none."""
    guards = guards or default_oracle_guards()
    _check_non_empty(g)
    _check_guard(g.n, guards.max_hp_vertices, "Vertex count")
    full = (1 << g.n) - 1
    neighbors = [sorted(a) for a in g.adjacency]
    if g.n > 1 and any(not a for a in neighbors):
        return None

    def backtrack(path: List[int], visited: int) -> bool:
        if visited == full:
            return True
        for nxt in neighbors[path[-1]]:
            if visited >> nxt & 1:
                continue
            path.append(nxt)
            if backtrack(path, visited | 1 << nxt):
                return True
            path.pop()
        return False

    for start in g.vertices:
        path = [start]
        if backtrack(path, 1 << start):
            return tuple(path)
    return None


def has_hamiltonian_path(g: WeightedGraph, guards: Optional[OracleGuards] = None) -> bool:
    return find_hamiltonian_path(g, guards) is not None


def exact_mdt_on_tree(g: WeightedGraph) -> SolveOutcome[SubgraphSolution]:
    """
    Polynomial dominating tree for inputs that are trees themselves.

    With at least three vertices every connected dominating set contains all
    non-leaf vertices, and those already dominate the leaves.
    """
    _check_non_empty(g)
    if g.num_edges != g.n - 1 or not is_connected_induced(g, g.vertices):
        raise ValueError("Input graph is not a tree")
    if g.n <= 2:
        single = SubgraphSolution.singleton("tree", 0)
        return SolveOutcome.found(single, single.weight)
    internal = frozenset(v for v in g.vertices if len(g.adjacency[v]) >= 2)
    tree = SubgraphSolution.build(
        g, "tree", internal, [(a, b) for a, b in g.edges() if a in internal and b in internal]
    )
    if tree.weight.is_infinite:
        return SolveOutcome.infeasible()
    return SolveOutcome.found(tree, tree.weight)


def exact_cds(
    g: WeightedGraph, guards: Optional[OracleGuards] = None
) -> Optional[FrozenSet[int]]:
    """Minimum connected dominating set (the uniform-weight dominating tree); None if g is disconnected."""
    outcome = exact_mdt(unit_weight_copy(g), guards)
    return outcome.solution.vertices if outcome.feasible else None
