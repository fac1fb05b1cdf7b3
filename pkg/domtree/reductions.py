"""
Instance transformations between dominating-tree problems and their
neighbours, each returned as a ReductionArtifact carrying the correspondence
needed to move solutions in both directions.

Index layout is fixed so every lift is index arithmetic:

* MDT -> GST: same graph, group i is N[i].
* GST -> MDT: original vertices keep 0..n-1, group vertex g_i is n+i.
* DOM -> MDS: v_l is v, v_r is n+v, the center is 2n.
* MDS -> SC: elements and sets are listed in increasing source-vertex order.
* HP -> MDP: original vertices keep 0..n-1, pendant v' is n+v.

All five reductions preserve weight exactly; gadget edges carry the explicit
Infinite weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import (
    FrozenSet,
    Generic,
    Iterable,
    Literal,
    Optional,
    Sequence,
    Tuple,
    TypeVar,
    Union,
)

from .exact import SetCoverInstance, SolveOutcome
from .graph import (
    GroupFamily,
    Problem,
    SubgraphSolution,
    WeightedGraph,
    check_solution,
    closed_neighborhood,
    dominates,
    undominated,
)
from .weights import INFINITE, ZERO, ExtWeight

VertexTag = Literal["orig", "group", "lcopy", "rcopy", "center", "pendant"]
VERTEX_TAGS = ("orig", "group", "lcopy", "rcopy", "center", "pendant")
REDUCTIONS = {
    ("mdt", "gst"),
    ("gst", "mdt"),
    ("dom", "mds"),
    ("mds", "sc"),
    ("hp", "mdp"),
}

O = TypeVar("O")


class LiftError(ValueError):
    """A solution could not be carried across a reduction with its guarantees intact."""


class IsolatedVertexError(ValueError):
    """The dominating-set to dominating-star reduction needs a graph without isolated vertices."""


@dataclass(frozen=True)
class GstInstance:
    graph: WeightedGraph
    groups: GroupFamily

    def __post_init__(self):
        if self.groups.n != self.graph.n:
            raise ValueError("Group family was built for a different graph")


@dataclass(frozen=True)
class ReductionArtifact(Generic[O]):
    """
    Reduced instance plus the map from its entities back to the source.

    Args:
        source_kind: Problem the source instance belongs to
        target_kind: Problem the output instance belongs to
        source: Source instance (WeightedGraph or GstInstance)
        output: Reduced instance
        vertex_map: For graph outputs, (tag, source index) for every output vertex;
            gadget vertices point at their defining object (group index, source vertex)
        scale: Fixed-point scale at which unit gadget weights were written
        center: Star center (MDS -> SC only)
        element_map: Source vertex of every set-cover element (MDS -> SC only)
        set_map: Candidate leaf behind every set (MDS -> SC only)
    """

    source_kind: Problem
    target_kind: Problem
    source: Union[WeightedGraph, GstInstance]
    output: O
    vertex_map: Tuple[Tuple[VertexTag, int], ...] = ()
    scale: int = 1
    center: Optional[int] = None
    element_map: Tuple[int, ...] = ()
    set_map: Tuple[int, ...] = ()

    @property
    def scale_note(self) -> str:
        return "identity"

    @property
    def source_graph(self) -> WeightedGraph:
        return self.source.graph if isinstance(self.source, GstInstance) else self.source

    def gadget_vertices(self) -> FrozenSet[int]:
        return frozenset(i for i, (tag, _) in enumerate(self.vertex_map) if tag != "orig")


def _require_feasible(g: WeightedGraph, s: SubgraphSolution, problem: Problem, groups=None, what=""):
    check = check_solution(g, s, problem, groups)
    if not check.feasible:
        raise LiftError(f"{what}: {check.describe()}")


# MDT -> GST


def reduce_mdt_to_gst(g: WeightedGraph) -> ReductionArtifact[GstInstance]:
    """Same weighted graph; one group N[v] per vertex v."""
    if g.n == 0:
        raise ValueError("The graph must have at least one vertex")
    groups = GroupFamily(g.n, tuple(closed_neighborhood(g, v) for v in g.vertices))
    return ReductionArtifact(
        source_kind="mdt",
        target_kind="gst",
        source=g,
        output=GstInstance(g, groups),
        vertex_map=tuple(("orig", v) for v in g.vertices),
    )


def embed_mdt_solution(
    art: ReductionArtifact[GstInstance], s: SubgraphSolution
) -> SubgraphSolution:
    """A dominating tree of the source is a group Steiner tree of the output."""
    _require_feasible(art.source, s, "mdt", what="input is not a dominating tree")
    tree = s.with_kind("tree")
    _require_feasible(art.output.graph, tree, "gst", art.output.groups, "embedded tree misses a group")
    return tree


def lift_gst_to_mdt_solution(
    art: ReductionArtifact[GstInstance], s: SubgraphSolution
) -> SubgraphSolution:
    """A group Steiner tree of the output is a dominating tree of the source."""
    _require_feasible(art.output.graph, s, "gst", art.output.groups, "input is not a group Steiner tree")
    _require_feasible(art.source, s, "mdt", what="lifted tree does not dominate")
    return s


# GST -> MDT


def reduce_gst_to_mdt(
    g: WeightedGraph, groups: GroupFamily
) -> ReductionArtifact[WeightedGraph]:
    """
    Add a vertex per group joined to its members by Infinite edges, and close V
    into a clique with Infinite edges.
    """
    if len(groups) == 0:
        raise ValueError("The group family must not be empty")
    source = GstInstance(g, groups)
    n = g.n
    edges = list(g.edge_list)
    for i, group in enumerate(groups):
        edges.extend((v, n + i, INFINITE) for v in sorted(group))
    edges.extend(
        (u, v, INFINITE) for u, v in combinations(range(n), 2) if not g.has_edge(u, v)
    )
    vertex_map = tuple(("orig", v) for v in range(n)) + tuple(
        ("group", i) for i in range(len(groups))
    )
    return ReductionArtifact(
        source_kind="gst",
        target_kind="mdt",
        source=source,
        output=WeightedGraph(n + len(groups), tuple(edges)),
        vertex_map=vertex_map,
    )


def lift_mdt_to_gst_solution(
    art: ReductionArtifact[WeightedGraph], s: SubgraphSolution
) -> SubgraphSolution:
    """
    A finite dominating tree of the output is a group Steiner tree of the
    source. The lone exception is the weight-0 tree made of a single group
    vertex, which can only dominate when that group is all of V and the only
    group; it maps to the group's smallest member.
    """
    source: GstInstance = art.source
    if s.weight.is_infinite:
        raise LiftError("Only finite-weight dominating trees can be lifted")
    _require_feasible(art.output, s, "mdt", what="input is not a dominating tree")
    n = source.graph.n
    gadgets = sorted(v for v in s.vertices if v >= n)
    if gadgets:
        if len(s.vertices) != 1:
            raise LiftError(f"Tree touches group vertices {gadgets}")
        group = source.groups[gadgets[0] - n]
        s = SubgraphSolution.singleton("tree", min(group))
    _require_feasible(source.graph, s, "gst", source.groups, "lifted tree misses a group")
    return s


def embed_gst_solution(
    art: ReductionArtifact[WeightedGraph], s: SubgraphSolution
) -> SubgraphSolution:
    """A group Steiner tree of the source is a dominating tree of the output."""
    source: GstInstance = art.source
    _require_feasible(source.graph, s, "gst", source.groups, "input is not a group Steiner tree")
    _require_feasible(art.output, s, "mdt", what="embedded tree does not dominate")
    return s


# DOM -> MDS


def reduce_dom_to_mds(g: WeightedGraph, scale: int = 1) -> ReductionArtifact[WeightedGraph]:
    """
    Double cover L x R with an Infinite edge u_l v_r for every u in N[v], plus
    a center joined to every L copy by an edge of weight 1 (``scale`` units).

    The u_l v_r edges follow closed neighbourhoods: with open ones a star
    would encode a total dominating set instead of a dominating set.
    """
    isolated = [v for v in g.vertices if not g.adjacency[v]]
    if isolated:
        raise IsolatedVertexError(f"Vertices {isolated} are isolated")
    n = g.n
    center = 2 * n
    edges = [(v, n + v, INFINITE) for v in range(n)]
    for u, v in g.edges():
        edges.append((u, n + v, INFINITE))
        edges.append((v, n + u, INFINITE))
    edges.extend((center, v, ExtWeight(scale)) for v in range(n))
    vertex_map = (
        tuple(("lcopy", v) for v in range(n))
        + tuple(("rcopy", v) for v in range(n))
        + (("center", -1),)
    )
    return ReductionArtifact(
        source_kind="dom",
        target_kind="mds",
        source=g,
        output=WeightedGraph(2 * n + 1, tuple(edges)),
        vertex_map=vertex_map,
        scale=scale,
        center=center,
    )


def lift_mds_to_dom_solution(
    art: ReductionArtifact[WeightedGraph], s: SubgraphSolution
) -> FrozenSet[int]:
    """Left copies of a finite dominating star form a dominating set of the same size."""
    if s.weight.is_infinite:
        raise LiftError("Only finite-weight dominating stars can be lifted")
    _require_feasible(art.output, s, "mds", what="input is not a dominating star")
    n = art.source.n
    dom_set = frozenset(v for v in s.vertices if v < n)
    missed = undominated(art.source, dom_set)
    if missed:
        raise LiftError(f"Lifted set leaves vertices {missed} undominated")
    if len(dom_set) * art.scale != s.weight.units:
        raise LiftError(
            f"Lifted set has {len(dom_set)} vertices but the star weighs {s.weight} units"
        )
    return dom_set


def star_from_dominating_set(
    art: ReductionArtifact[WeightedGraph], dom_set: Iterable[int]
) -> SubgraphSolution:
    """The center plus the left copies of D is a dominating star weighing |D|."""
    dom_set = frozenset(dom_set)
    if not dominates(art.source, dom_set):
        raise LiftError("Input is not a dominating set")
    c = art.center
    star = SubgraphSolution.build(art.output, "star", {c, *dom_set}, [(c, v) for v in dom_set])
    _require_feasible(art.output, star, "mds", what="mapped star does not dominate")
    if star.weight.units != len(dom_set) * art.scale:
        raise LiftError("Mapped star weight differs from the dominating set size")
    return star


# MDS -> SC


def reduce_mds_to_sc(g: WeightedGraph, c: int) -> ReductionArtifact[SetCoverInstance]:
    """
    Set cover whose universe is V minus N[c] and whose sets are S_v = N(v) cap U,
    one per finite-weight neighbor v of c, weighted w(c, v).
    """
    g._check_vertex(c)
    covered_by_center = closed_neighborhood(g, c)
    elements = tuple(v for v in g.vertices if v not in covered_by_center)
    element_index = {v: i for i, v in enumerate(elements)}
    leaves = tuple(sorted(v for v in g.adjacency[c] if g.weight(c, v).is_finite))
    sets = tuple(
        (
            frozenset(element_index[u] for u in g.adjacency[v] if u in element_index),
            g.weight(c, v),
        )
        for v in leaves
    )
    return ReductionArtifact(
        source_kind="mds",
        target_kind="sc",
        source=g,
        output=SetCoverInstance(len(elements), sets),
        center=c,
        element_map=elements,
        set_map=leaves,
    )


def lift_sc_to_mds_solution(
    art: ReductionArtifact[SetCoverInstance], cover: Iterable[int]
) -> SubgraphSolution:
    """The center with the leaves behind the chosen sets is a dominating star of equal weight."""
    cover = frozenset(cover)
    inst = art.output
    bad = [i for i in cover if not 0 <= i < inst.num_sets]
    if bad:
        raise LiftError(f"Set indices {bad} do not exist")
    missing = inst.uncovered(cover)
    if missing:
        raise LiftError(f"Elements {missing} are not covered")
    c = art.center
    leaves = [art.set_map[i] for i in sorted(cover)]
    star = SubgraphSolution.build(art.source, "star", {c, *leaves}, [(c, v) for v in leaves])
    _require_feasible(art.source, star, "mds", what="lifted star does not dominate")
    if star.weight != inst.cover_weight(cover):
        raise LiftError("Lifted star weight differs from the cover weight")
    return star


def cover_from_star(
    art: ReductionArtifact[SetCoverInstance], s: SubgraphSolution
) -> FrozenSet[int]:
    """A dominating star centered at c maps to the cover of its leaves' sets, of equal weight."""
    c = art.center
    if c not in s.vertices or any(c not in e for e in s.edges):
        raise LiftError(f"Star is not centered at vertex {c}")
    _require_feasible(art.source, s, "mds", what="input is not a dominating star")
    set_index = {v: i for i, v in enumerate(art.set_map)}
    leaves = sorted(s.vertices - {c})
    unusable = [v for v in leaves if v not in set_index]
    if unusable:
        raise LiftError(f"Leaves {unusable} hang on infinite edges")
    cover = frozenset(set_index[v] for v in leaves)
    if not art.output.is_cover(cover):
        raise LiftError("Mapped sets do not cover the universe")
    if art.output.cover_weight(cover) != s.weight:
        raise LiftError("Mapped cover weight differs from the star weight")
    return cover


# HP -> MDP


def reduce_hp_to_mdp(g: WeightedGraph) -> ReductionArtifact[WeightedGraph]:
    """Zero-weight original edges plus one pendant per vertex on an Infinite edge."""
    if g.n == 0:
        raise ValueError("The graph must have at least one vertex")
    n = g.n
    edges = [(u, v, ZERO) for u, v in g.edges()]
    edges.extend((v, n + v, INFINITE) for v in range(n))
    vertex_map = tuple(("orig", v) for v in range(n)) + tuple(("pendant", v) for v in range(n))
    return ReductionArtifact(
        source_kind="hp",
        target_kind="mdp",
        source=g,
        output=WeightedGraph(2 * n, tuple(edges)),
        vertex_map=vertex_map,
    )


def decide_hp_via_mdp(
    art: ReductionArtifact[WeightedGraph], outcome: SolveOutcome[SubgraphSolution]
) -> bool:
    """
    A dominating path of value 0 exists exactly when the source has a
    Hamiltonian path; any solver's output decides the question.
    """
    if not outcome.feasible or outcome.weight != ZERO:
        return False
    path = outcome.solution
    _require_feasible(art.output, path, "mdp", what="outcome is not a dominating path")
    if path.vertices != frozenset(range(art.source.n)):
        raise LiftError("Zero-weight dominating path does not span the original vertices")
    return True


def path_from_hamiltonian(
    art: ReductionArtifact[WeightedGraph], order: Sequence[int]
) -> SubgraphSolution:
    """A Hamiltonian path of the source is a zero-weight dominating path of the output."""
    g = art.source
    if sorted(order) != list(g.vertices) or any(
        not g.has_edge(a, b) for a, b in zip(order, order[1:])
    ):
        raise LiftError("Input is not a Hamiltonian path")
    path = SubgraphSolution.build(art.output, "path", order, zip(order, order[1:]))
    _require_feasible(art.output, path, "mdp", what="mapped path does not dominate")
    return path


def path_order(s: SubgraphSolution) -> Tuple[int, ...]:
    """Vertices of a path solution in walking order, starting from its smaller endpoint."""
    if len(s.vertices) == 1:
        return tuple(s.vertices)
    adj = {v: [] for v in s.vertices}
    for a, b in s.edges:
        adj[a].append(b)
        adj[b].append(a)
    start = min(v for v, nbrs in adj.items() if len(nbrs) == 1)
    order, prev = [start], None
    while len(order) < len(s.vertices):
        nxt = next(v for v in adj[order[-1]] if v != prev)
        prev = order[-1]
        order.append(nxt)
    return tuple(order)
