"""
Line-oriented text formats: problem instances, solutions and reduction
sidecar maps.

Instance grammar (``c`` lines are comments)::

    p <kind> <n> <m> <scale>
    e <u> <v> <w>          one per edge (graph kinds)
    g <v1> <v2> ...        one per group (gst)
    s <w> <e1> <e2> ...    one per set (sc; n is the universe size, m the set count)

Weights are non-negative decimals read at the declared scale (a weight ``w``
stands for ``w * scale`` integer units) or the token ``inf``.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Dict, FrozenSet, List, Literal, Optional, Tuple

from .exact import SetCoverInstance
from .graph import Edge, GroupFamily, SubgraphSolution, WeightedGraph, normalize_edge
from .reductions import VERTEX_TAGS, ReductionArtifact
from .weights import MAX_UNITS, ExtWeight, INFINITE

InstanceKind = Literal["mdt", "gst", "mds", "mdp", "dom", "hp", "sc"]
INSTANCE_KINDS = ("mdt", "gst", "mds", "mdp", "dom", "hp", "sc")
GRAPH_KINDS = ("mdt", "gst", "mds", "mdp", "dom", "hp")


class InstanceFormatError(ValueError):
    """Malformed instance, solution or sidecar text; carries the 1-based line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Instance:
    """
    A parsed instance file.

    Args:
        kind: Problem kind from the header
        scale: Fixed-point denominator of every weight
        graph: Host graph (all kinds but sc)
        groups: Group family (gst)
        set_cover: Set cover instance (sc)
    """

    kind: InstanceKind
    scale: int = 1
    graph: Optional[WeightedGraph] = None
    groups: Optional[GroupFamily] = None
    set_cover: Optional[SetCoverInstance] = None

    def __post_init__(self):
        if self.kind not in INSTANCE_KINDS:
            raise ValueError(f"Unknown instance kind {self.kind!r}")
        if isinstance(self.scale, bool) or not isinstance(self.scale, int) or self.scale <= 0:
            raise ValueError("Scale must be a positive integer")
        if self.kind == "sc":
            if self.set_cover is None:
                raise ValueError("sc instances need a set cover")
        elif self.graph is None:
            raise ValueError(f"{self.kind} instances need a graph")
        if self.kind == "gst" and self.groups is None:
            raise ValueError("gst instances need a group family")


# weights


def parse_weight(token: str, scale: int, line: Optional[int] = None) -> ExtWeight:
    if token == "inf":
        return INFINITE
    try:
        value = Decimal(token)
    except InvalidOperation:
        raise InstanceFormatError(f"malformed weight {token!r}", line)
    if not value.is_finite():
        raise InstanceFormatError(f"malformed weight {token!r}", line)
    if value < 0:
        raise InstanceFormatError(f"negative weight {token}", line)
    units = Fraction(value) * scale
    if units.denominator != 1:
        raise InstanceFormatError(f"weight {token} is not a whole number of 1/{scale} units", line)
    if units > MAX_UNITS:
        raise InstanceFormatError(f"weight {token} overflows {MAX_UNITS} units", line)
    return ExtWeight(int(units))


def format_weight(weight: ExtWeight, scale: int = 1) -> str:
    """Shortest decimal spelling of units / scale, or ``inf``."""
    if weight.is_infinite:
        return "inf"
    value = Fraction(weight.units, scale)
    whole, rest = divmod(value.numerator, value.denominator)
    if rest == 0:
        return str(whole)
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        raise ValueError(f"{weight.units}/{scale} has no finite decimal expansion")
    digits = max(twos, fives)
    scaled = value * 10**digits
    text = str(scaled.numerator).rjust(digits + 1, "0")
    return f"{text[:-digits]}.{text[-digits:]}"


def _ints(tokens: List[str], line: int) -> List[int]:
    try:
        values = [int(t) for t in tokens]
    except ValueError:
        raise InstanceFormatError(f"expected integers, got {' '.join(tokens)!r}", line)
    if any(v < 0 for v in values):
        raise InstanceFormatError("indices must be non-negative", line)
    return values


def _data_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        yield number, tokens


# instances


def parse_instance(text: str) -> Instance:
    """
    Parse instance text.

    Raises:
        InstanceFormatError: with the offending line for unknown kinds, negative
            weights, self-loops, duplicate edges, out-of-range indices and count
            mismatches
    """
    header = None
    edges: List[Tuple[int, int, ExtWeight]] = []
    seen_edges: Dict[Edge, int] = {}
    groups: List[FrozenSet[int]] = []
    sets: List[Tuple[FrozenSet[int], ExtWeight]] = []
    for number, tokens in _data_lines(text):
        tag = tokens[0]
        if header is None:
            if tag != "p":
                raise InstanceFormatError("the first line must be the 'p' header", number)
            if len(tokens) != 5:
                raise InstanceFormatError("header must read 'p <kind> <n> <m> <scale>'", number)
            kind = tokens[1]
            if kind not in INSTANCE_KINDS:
                raise InstanceFormatError(f"unknown kind {kind!r}", number)
            n, m, scale = _ints(tokens[2:], number)
            if scale == 0:
                raise InstanceFormatError("scale must be positive", number)
            header = (kind, n, m, scale, number)
            continue
        kind, n, m, scale, _ = header
        if tag == "p":
            raise InstanceFormatError("duplicate header", number)
        if tag == "e" and kind != "sc":
            if len(tokens) != 4:
                raise InstanceFormatError("edge lines read 'e <u> <v> <w>'", number)
            u, v = _ints(tokens[1:3], number)
            for x in (u, v):
                if x >= n:
                    raise InstanceFormatError(f"vertex {x} out of range for n={n}", number)
            if u == v:
                raise InstanceFormatError(f"self-loop on vertex {u}", number)
            e = normalize_edge(u, v)
            if e in seen_edges:
                raise InstanceFormatError(
                    f"duplicate edge {e[0]} {e[1]} (first on line {seen_edges[e]})", number
                )
            seen_edges[e] = number
            edges.append((u, v, parse_weight(tokens[3], scale, number)))
        elif tag == "g" and kind == "gst":
            members = _ints(tokens[1:], number)
            if not members:
                raise InstanceFormatError("empty group", number)
            bad = [x for x in members if x >= n]
            if bad:
                raise InstanceFormatError(f"vertex {bad[0]} out of range for n={n}", number)
            groups.append(frozenset(members))
        elif tag == "s" and kind == "sc":
            if len(tokens) < 2:
                raise InstanceFormatError("set lines read 's <w> <e1> <e2> ...'", number)
            weight = parse_weight(tokens[1], scale, number)
            if weight.is_infinite:
                raise InstanceFormatError("set weights must be finite", number)
            elements = _ints(tokens[2:], number)
            bad = [x for x in elements if x >= n]
            if bad:
                raise InstanceFormatError(f"element {bad[0]} out of range for universe size {n}", number)
            sets.append((frozenset(elements), weight))
        else:
            raise InstanceFormatError(f"unexpected {tag!r} line in a {kind} instance", number)
    if header is None:
        raise InstanceFormatError("missing 'p' header")
    kind, n, m, scale, header_line = header
    if kind == "sc":
        if len(sets) != m:
            raise InstanceFormatError(f"header announces {m} sets, found {len(sets)}", header_line)
        return Instance(kind, scale, set_cover=SetCoverInstance(n, tuple(sets)))
    if len(edges) != m:
        raise InstanceFormatError(f"header announces {m} edges, found {len(edges)}", header_line)
    graph = WeightedGraph(n, tuple(edges))
    family = GroupFamily(n, tuple(groups)) if kind == "gst" else None
    return Instance(kind, scale, graph=graph, groups=family)


def serialize_instance(inst: Instance) -> str:
    """Canonical text: sorted edges with u < v, groups and sets with sorted members."""
    lines = []
    if inst.kind == "sc":
        sc = inst.set_cover
        lines.append(f"p sc {sc.universe_size} {sc.num_sets} {inst.scale}")
        for elements, weight in sc.sets:
            lines.append(" ".join(["s", format_weight(weight, inst.scale), *map(str, sorted(elements))]))
    else:
        g = inst.graph
        lines.append(f"p {inst.kind} {g.n} {g.num_edges} {inst.scale}")
        lines.extend(f"e {u} {v} {format_weight(w, inst.scale)}" for u, v, w in g.edge_list)
        if inst.kind == "gst":
            lines.extend(" ".join(["g", *map(str, sorted(group))]) for group in inst.groups)
    return "\n".join(lines) + "\n"


# solutions


@dataclass(frozen=True)
class SolutionFile:
    """
    A solution as written by ``solve`` and read by ``lift`` / ``verify``.

    Args:
        form: "subgraph", "cover", "domset" or "hamiltonian"
        subgraph: Tree, star or path (form "subgraph")
        indices: Set indices (cover) or vertices (domset, hamiltonian witness in order)
        weight: Declared weight (cover) in units
        answer: Decision (hamiltonian)
    """

    form: Literal["subgraph", "cover", "domset", "hamiltonian"]
    subgraph: Optional[SubgraphSolution] = None
    indices: Tuple[int, ...] = ()
    weight: Optional[ExtWeight] = None
    answer: Optional[bool] = None


def serialize_solution(sol: SolutionFile, scale: int = 1) -> str:
    if sol.form == "subgraph":
        s = sol.subgraph
        lines = [f"k {s.kind} {format_weight(s.weight, scale)}"]
        lines.append(" ".join(["u", *map(str, sorted(s.vertices))]))
        lines.extend(f"f {a} {b}" for a, b in s.edges)
    elif sol.form == "cover":
        lines = [" ".join(["x", format_weight(sol.weight, scale), *map(str, sorted(sol.indices))])]
    elif sol.form == "domset":
        lines = [" ".join(["d", *map(str, sorted(sol.indices))])]
    else:
        lines = [" ".join(["h", "yes" if sol.answer else "no", *map(str, sol.indices)])]
    return "\n".join(lines) + "\n"


def parse_solution(text: str, scale: int = 1) -> SolutionFile:
    kind = weight = None
    vertices: List[int] = []
    edges: List[Edge] = []
    for number, tokens in _data_lines(text):
        tag = tokens[0]
        if tag == "k":
            if len(tokens) != 3 or tokens[1] not in ("tree", "star", "path"):
                raise InstanceFormatError("solution header reads 'k <tree|star|path> <weight>'", number)
            kind, weight = tokens[1], parse_weight(tokens[2], scale, number)
        elif tag == "u":
            vertices.extend(_ints(tokens[1:], number))
        elif tag == "f":
            if len(tokens) != 3:
                raise InstanceFormatError("edge lines read 'f <u> <v>'", number)
            edges.append(tuple(_ints(tokens[1:], number)))
        elif tag == "x":
            if len(tokens) < 2:
                raise InstanceFormatError("cover lines read 'x <w> <s1> <s2> ...'", number)
            return SolutionFile(
                "cover",
                indices=tuple(_ints(tokens[2:], number)),
                weight=parse_weight(tokens[1], scale, number),
            )
        elif tag == "d":
            return SolutionFile("domset", indices=tuple(_ints(tokens[1:], number)))
        elif tag == "h":
            if len(tokens) < 2 or tokens[1] not in ("yes", "no"):
                raise InstanceFormatError("decision lines read 'h <yes|no> <v1> ...'", number)
            return SolutionFile(
                "hamiltonian", indices=tuple(_ints(tokens[2:], number)), answer=tokens[1] == "yes"
            )
        else:
            raise InstanceFormatError(f"unexpected {tag!r} line in a solution", number)
    if kind is None:
        raise InstanceFormatError("empty solution")
    return SolutionFile("subgraph", subgraph=SubgraphSolution(kind, frozenset(vertices), tuple(edges), weight))


# sidecar maps


def serialize_sidecar(art: ReductionArtifact) -> str:
    """
    ``r <from> <to> <scale> <center>`` followed by ``v <out_index> <tag> <src_index>``
    lines, or for set cover outputs ``x <element> <vertex>`` and ``y <set> <vertex>``.
    """
    center = art.center if art.target_kind == "sc" else -1
    lines = [f"r {art.source_kind} {art.target_kind} {art.scale} {center}"]
    lines.extend(f"v {i} {tag} {src}" for i, (tag, src) in enumerate(art.vertex_map))
    lines.extend(f"x {i} {v}" for i, v in enumerate(art.element_map))
    lines.extend(f"y {i} {v}" for i, v in enumerate(art.set_map))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Sidecar:
    source_kind: str
    target_kind: str
    scale: int
    center: int
    vertex_map: Tuple[Tuple[str, int], ...] = ()
    element_map: Tuple[int, ...] = ()
    set_map: Tuple[int, ...] = ()

    def matches(self, art: ReductionArtifact) -> bool:
        center = art.center if art.target_kind == "sc" else -1
        return (
            self.source_kind == art.source_kind
            and self.target_kind == art.target_kind
            and self.scale == art.scale
            and self.center == center
            and self.vertex_map == tuple(art.vertex_map)
            and self.element_map == tuple(art.element_map)
            and self.set_map == tuple(art.set_map)
        )


def parse_sidecar(text: str) -> Sidecar:
    header = None
    vertex_map, element_map, set_map = [], [], []
    for number, tokens in _data_lines(text):
        tag = tokens[0]
        if tag == "r":
            if len(tokens) != 5:
                raise InstanceFormatError("sidecar header reads 'r <from> <to> <scale> <center>'", number)
            try:
                header = (tokens[1], tokens[2], int(tokens[3]), int(tokens[4]))
            except ValueError:
                raise InstanceFormatError("scale and center must be integers", number)
        elif tag == "v":
            if len(tokens) != 4 or tokens[2] not in VERTEX_TAGS:
                raise InstanceFormatError(f"vertex lines read 'v <out> <{'|'.join(VERTEX_TAGS)}> <src>'", number)
            try:
                index, src = int(tokens[1]), int(tokens[3])
            except ValueError:
                raise InstanceFormatError("vertex map indices must be integers", number)
            if index != len(vertex_map):
                raise InstanceFormatError(f"expected output index {len(vertex_map)}, got {index}", number)
            vertex_map.append((tokens[2], src))
        elif tag in ("x", "y"):
            target = element_map if tag == "x" else set_map
            index, vertex = _ints(tokens[1:3], number) if len(tokens) == 3 else (None, None)
            if index != len(target):
                raise InstanceFormatError(f"expected index {len(target)} on a '{tag}' line", number)
            target.append(vertex)
        else:
            raise InstanceFormatError(f"unexpected {tag!r} line in a sidecar", number)
    if header is None:
        raise InstanceFormatError("missing 'r' header")
    return Sidecar(*header, tuple(vertex_map), tuple(element_map), tuple(set_map))
