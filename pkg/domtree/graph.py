"""
Weighted undirected graphs, group families, subgraph solutions and the
structural predicates every solver and reduction relies on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    List,
    Literal,
    Optional,
    Sequence,
    Tuple,
)

import networkx as nx
from networkx.utils import UnionFind

from .weights import ExtWeight, ONE, total_weight

SolutionKind = Literal["tree", "star", "path"]
Problem = Literal["mdt", "gst", "mds", "mdp", "sc", "dom", "hp"]
Edge = Tuple[int, int]


class SolutionStructureError(ValueError):
    """A solution refers to vertices or edges that are not part of its host graph."""


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class WeightedGraph:
    """
    Undirected simple graph on vertices ``0..n-1`` with ExtWeight edge weights.

    Args:
        n: Number of vertices
        edge_list: Triples (u, v, weight); normalized to u < v and sorted
    """

    n: int
    edge_list: Tuple[Tuple[int, int, ExtWeight], ...] = ()

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"Vertex count must be a non-negative integer, got {self.n!r}")
        seen = set()
        normalized = []
        for u, v, w in self.edge_list:
            if u == v:
                raise ValueError(f"Self-loop on vertex {u} is not allowed")
            for x in (u, v):
                if not 0 <= x < self.n:
                    raise ValueError(f"Vertex {x} out of range for n={self.n}")
            if not isinstance(w, ExtWeight):
                raise TypeError(f"Edge ({u}, {v}) weight must be an ExtWeight")
            e = normalize_edge(u, v)
            if e in seen:
                raise ValueError(f"Duplicate edge {e}")
            seen.add(e)
            normalized.append((e[0], e[1], w))
        object.__setattr__(self, "edge_list", tuple(sorted(normalized, key=lambda t: t[:2])))

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[Tuple[int, int, int | ExtWeight | None]]
    ) -> WeightedGraph:
        """Build a graph from (u, v, w) triples where w may be an int, None (Infinite) or ExtWeight."""
        triples = []
        for u, v, w in edges:
            if not isinstance(w, ExtWeight):
                w = ExtWeight(w)
            triples.append((u, v, w))
        return cls(n, tuple(triples))

    @classmethod
    def unweighted(cls, n: int, edges: Iterable[Edge]) -> WeightedGraph:
        return cls(n, tuple((u, v, ONE) for u, v in edges))

    @cached_property
    def weights(self) -> Dict[Edge, ExtWeight]:
        return {(u, v): w for u, v, w in self.edge_list}

    @cached_property
    def adjacency(self) -> Tuple[FrozenSet[int], ...]:
        adj: List[set] = [set() for _ in range(self.n)]
        for u, v, _ in self.edge_list:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def closed_masks(self) -> Tuple[int, ...]:
        """Bitmask of N[v] for every vertex v."""
        masks = []
        for v in range(self.n):
            m = 1 << v
            for u in self.adjacency[v]:
                m |= 1 << u
            masks.append(m)
        return tuple(masks)

    @cached_property
    def nx_graph(self) -> nx.Graph:
        """networkx view; nodes and edges inserted in index order, weight in units (None if Infinite)."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        for u, v, w in self.edge_list:
            graph.add_edge(u, v, weight=w.units)
        return graph

    @cached_property
    def finite_nx_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        for u, v, w in self.edge_list:
            if w.is_finite:
                graph.add_edge(u, v, weight=w.units)
        return graph

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def num_edges(self) -> int:
        return len(self.edge_list)

    def edges(self) -> List[Edge]:
        return [(u, v) for u, v, _ in self.edge_list]

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.weights

    def weight(self, u: int, v: int) -> ExtWeight:
        try:
            return self.weights[normalize_edge(u, v)]
        except KeyError:
            raise KeyError(f"No edge between {u} and {v}")

    def neighbors(self, v: int) -> FrozenSet[int]:
        self._check_vertex(v)
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def _check_vertex(self, v: int):
        if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < self.n:
            raise ValueError(f"Vertex {v!r} out of range for n={self.n}")

    def _check_vertex_set(self, u: Iterable[int]) -> FrozenSet[int]:
        u = frozenset(u)
        for v in u:
            self._check_vertex(v)
        return u


@dataclass(frozen=True)
class GroupFamily:
    """
    Ordered family of non-empty vertex groups over a host graph of ``n`` vertices.
    Groups may overlap.
    """

    n: int
    groups: Tuple[FrozenSet[int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        groups = tuple(frozenset(g) for g in self.groups)
        for i, g in enumerate(groups):
            if not g:
                raise ValueError(f"Group {i} is empty")
            for v in g:
                if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < self.n:
                    raise ValueError(f"Group {i} contains invalid vertex {v!r}")
        object.__setattr__(self, "groups", groups)

    def __len__(self) -> int:
        return len(self.groups)

    def __iter__(self):
        return iter(self.groups)

    def __getitem__(self, i: int) -> FrozenSet[int]:
        return self.groups[i]

    @cached_property
    def masks(self) -> Tuple[int, ...]:
        return tuple(sum(1 << v for v in g) for g in self.groups)

    def unhit(self, u: Iterable[int]) -> List[int]:
        """Indices of groups not intersecting u."""
        u = frozenset(u)
        return [i for i, g in enumerate(self.groups) if not g & u]


@dataclass(frozen=True)
class SubgraphSolution:
    """
    Vertex set U and edge list F claimed to form a tree, star or path,
    together with the total weight of F.
    """

    kind: SolutionKind
    vertices: FrozenSet[int]
    edges: Tuple[Edge, ...]
    weight: ExtWeight

    def __post_init__(self):
        if self.kind not in ("tree", "star", "path"):
            raise ValueError(f"Unknown solution kind {self.kind!r}")
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(
            self, "edges", tuple(sorted(normalize_edge(u, v) for u, v in self.edges))
        )

    @classmethod
    def build(
        cls,
        g: WeightedGraph,
        kind: SolutionKind,
        vertices: Iterable[int],
        edges: Iterable[Edge],
    ) -> SubgraphSolution:
        """Create a solution on g, summing its weight from the host graph."""
        edges = [normalize_edge(u, v) for u, v in edges]
        missing = [e for e in edges if not g.has_edge(*e)]
        if missing:
            raise SolutionStructureError(f"Edges {missing} are not in the graph")
        return cls(kind, frozenset(vertices), tuple(edges), total_weight(g.weight(*e) for e in edges))

    @classmethod
    def singleton(cls, kind: SolutionKind, v: int) -> SubgraphSolution:
        return cls(kind, frozenset([v]), (), ExtWeight(0))

    def with_kind(self, kind: SolutionKind) -> SubgraphSolution:
        return SubgraphSolution(kind, self.vertices, self.edges, self.weight)

    @property
    def canonical_key(self):
        """Total order used for every tie-break: weight, size, sorted vertices, sorted edges."""
        return (self.weight, len(self.vertices), tuple(sorted(self.vertices)), self.edges)


@dataclass(frozen=True)
class SolutionCheck:
    """
    Outcome of checking a solution against a problem. Kind-invariant violations
    are kept apart from feasibility failures.
    """

    kind_error: Optional[str] = None
    weight_mismatch: bool = False
    undominated: Tuple[int, ...] = ()
    unhit_groups: Tuple[int, ...] = ()

    @property
    def kind_ok(self) -> bool:
        return self.kind_error is None

    @property
    def feasible(self) -> bool:
        return (
            self.kind_ok
            and not self.weight_mismatch
            and not self.undominated
            and not self.unhit_groups
        )

    def describe(self) -> str:
        if self.kind_error is not None:
            return f"kind invariant violated: {self.kind_error}"
        msgs = []
        if self.weight_mismatch:
            msgs.append("declared weight does not match the edge weights")
        if self.undominated:
            msgs.append("undominated vertices: " + " ".join(map(str, self.undominated)))
        if self.unhit_groups:
            msgs.append("groups not hit: " + " ".join(map(str, self.unhit_groups)))
        return "; ".join(msgs) if msgs else "feasible"


def closed_neighborhood(g: WeightedGraph, v: int) -> FrozenSet[int]:
    return g.neighbors(v) | {v}


def max_degree(g: WeightedGraph) -> int:
    return max((len(a) for a in g.adjacency), default=0)


def vertex_mask(u: Iterable[int]) -> int:
    m = 0
    for v in u:
        m |= 1 << v
    return m


def dominated_mask(g: WeightedGraph, u: Iterable[int]) -> int:
    m = 0
    for v in u:
        m |= g.closed_masks[v]
    return m


def dominates(g: WeightedGraph, u: Iterable[int]) -> bool:
    """True iff every vertex outside u has a neighbor in u. Edge weights are ignored."""
    u = g._check_vertex_set(u)
    return dominated_mask(g, u) == (1 << g.n) - 1


def undominated(g: WeightedGraph, u: Iterable[int]) -> List[int]:
    u = g._check_vertex_set(u)
    mask = dominated_mask(g, u)
    return [v for v in g.vertices if not mask >> v & 1]


def is_connected_induced(g: WeightedGraph, u: Iterable[int]) -> bool:
    u = g._check_vertex_set(u)
    if not u:
        raise ValueError("Connectivity of an empty vertex set is undefined")
    if len(u) == 1:
        return True
    return nx.is_connected(g.nx_graph.subgraph(u))


def mst_induced(g: WeightedGraph, u: Iterable[int]) -> SubgraphSolution:
    """
    Minimum spanning tree of the subgraph induced by u (Kruskal).

    Edges are scanned by (weight, min endpoint, max endpoint), which makes the
    result deterministic under ties. Infinite edges are used only when nothing
    finite connects the components.
    """
    u = g._check_vertex_set(u)
    if not u:
        raise ValueError("Spanning tree of an empty vertex set is undefined")
    candidates = sorted(
        ((w, a, b) for a, b, w in g.edge_list if a in u and b in u),
    )
    forest = UnionFind(u)
    chosen = []
    for w, a, b in candidates:
        if forest[a] != forest[b]:
            forest.union(a, b)
            chosen.append((a, b))
            if len(chosen) == len(u) - 1:
                break
    if len(chosen) != len(u) - 1:
        raise ValueError(f"Induced subgraph on {sorted(u)} is disconnected")
    return SubgraphSolution.build(g, "tree", u, chosen)


def unit_weight_copy(g: WeightedGraph) -> WeightedGraph:
    return WeightedGraph.unweighted(g.n, g.edges())


def _kind_error(s: SubgraphSolution) -> Optional[str]:
    u, f = s.vertices, s.edges
    if not u:
        return "empty vertex set"
    if len(f) != len(u) - 1:
        return f"{len(f)} edges on {len(u)} vertices cannot form a tree"
    forest = UnionFind(u)
    for a, b in f:
        if forest[a] == forest[b]:
            return f"edge ({a}, {b}) closes a cycle"
        forest.union(a, b)
    degree = {v: 0 for v in u}
    for a, b in f:
        degree[a] += 1
        degree[b] += 1
    if s.kind == "star" and len(u) > 2 and max(degree.values()) != len(u) - 1:
        return "tree has diameter larger than 2"
    if s.kind == "path" and max(degree.values()) > 2:
        return "a vertex has degree larger than 2"
    return None


def check_solution(
    g: WeightedGraph,
    s: SubgraphSolution,
    problem: Problem,
    groups: Optional[GroupFamily] = None,
) -> SolutionCheck:
    """
    Check s against its kind invariant and the feasibility condition of problem.

    MDT, MDS and MDP require domination of g; GST requires every group of
    ``groups`` to be hit. A solution declared with another kind is accepted
    when its shape satisfies the kind the problem needs. The declared weight
    is recomputed.

    Raises:
        SolutionStructureError: s uses a vertex or an edge that g lacks, or an
            edge with an endpoint outside s.vertices
    """
    for v in s.vertices:
        if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < g.n:
            raise SolutionStructureError(f"Vertex {v!r} is not in the graph")
    for a, b in s.edges:
        if not g.has_edge(a, b):
            raise SolutionStructureError(f"Edge ({a}, {b}) is not in the graph")
        if a not in s.vertices or b not in s.vertices:
            raise SolutionStructureError(f"Edge ({a}, {b}) leaves the solution's vertex set")
    kind_error = _kind_error(s)
    if kind_error is not None:
        return SolutionCheck(kind_error=kind_error)
    mismatch = total_weight(g.weight(a, b) for a, b in s.edges) != s.weight
    if problem == "gst":
        if groups is None:
            raise ValueError("GST validation needs a GroupFamily")
        return SolutionCheck(weight_mismatch=mismatch, unhit_groups=tuple(groups.unhit(s.vertices)))
    if problem not in ("mdt", "mds", "mdp"):
        raise ValueError(f"Problem {problem!r} has no subgraph solutions")
    expected_kind = {"mdt": "tree", "mds": "star", "mdp": "path"}[problem]
    if s.kind != expected_kind:
        # judged by shape: a three-vertex path is also a star
        shape_error = _kind_error(s.with_kind(expected_kind))
        if shape_error is not None:
            return SolutionCheck(kind_error=shape_error)
    return SolutionCheck(weight_mismatch=mismatch, undominated=tuple(undominated(g, s.vertices)))


def validate_solution(g: WeightedGraph, s: SubgraphSolution, problem: Problem) -> bool:
    return check_solution(g, s, problem).feasible


def validate_gst(g: WeightedGraph, groups: GroupFamily, s: SubgraphSolution) -> bool:
    return check_solution(g, s, "gst", groups).feasible


def spanning_trees(g: WeightedGraph, u: Sequence[int]) -> Iterable[SubgraphSolution]:
    """Every spanning tree of the subgraph induced by u, by brute force over edge subsets."""
    u = frozenset(u)
    inner = [(a, b) for a, b in g.edges() if a in u and b in u]
    for chosen in combinations(inner, len(u) - 1):
        s = SubgraphSolution.build(g, "tree", u, chosen)
        if _kind_error(s) is None:
            yield s
