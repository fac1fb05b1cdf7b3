"""
Seeded instance generation and the suites that run every reduction claim and
approximation bound against the exact oracles.

Generation order is part of the contract: instance ``i`` uses numpy's PCG64
seeded with ``SeedSequence([seed, i])``; it first draws the vertex count, then
walks vertex pairs (u, v), u < v, in lexicographic order drawing one integer in
[0, q) per pair (edge iff below p's numerator, p = num/q) followed, for an
accepted edge, by one weight in [1, weight_max]. Rejected graphs are redrawn
from the same stream.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Literal, Optional

import networkx as nx
import numpy as np
from tqdm import tqdm

from .approx import (
    ApproxReport,
    approx_mds,
    approx_mdt,
    greedy_set_cover,
    harmonic_number,
)
from .exact import (
    GuardExceededError,
    SetCoverInstance,
    SolveOutcome,
    exact_dominating_set,
    exact_gst,
    exact_mdp,
    exact_mds,
    exact_mdt,
    exact_set_cover,
    find_hamiltonian_path,
)
from .gen_config import GenConfig, SuiteConfig
from .graph import GroupFamily, WeightedGraph, check_solution, max_degree
from .helper_functions import text_digest
from .instance_io import Instance, serialize_instance
from .oracle_config import OracleGuards, default_oracle_guards
from .reductions import (
    GstInstance,
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
    reduce_mdt_to_gst,
    reduce_mds_to_sc,
    star_from_dominating_set,
)
from .weights import ExtWeight

EQUIVALENCE_SUITES = ("MDT_GST", "GST_MDT", "DOM_MDS", "MDS_SC", "HP_MDP")


# generation


def make_rng(seed: int, index: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, index])))


def _draw_int(rng: np.random.Generator, low: int, high: int) -> int:
    """Uniform integer in [low, high]."""
    return int(rng.integers(low, high + 1))


def _bernoulli(rng: np.random.Generator, p: Fraction) -> bool:
    return int(rng.integers(0, p.denominator)) < p.numerator


def _is_connected(g: WeightedGraph) -> bool:
    return g.n <= 1 or nx.is_connected(g.nx_graph)


def gen_graph(
    cfg: GenConfig, index: int = 0, rng: Optional[np.random.Generator] = None
) -> WeightedGraph:
    """
    Erdos-Renyi style weighted graph honoring the connectivity and minimum
    degree flags by rejection sampling.

    Raises:
        ValueError: flags not satisfied within cfg.max_retries draws
    """
    rng = rng or make_rng(cfg.seed, index)
    n = _draw_int(rng, cfg.n_min, cfg.n)
    for _ in range(cfg.max_retries):
        edges = []
        for u, v in combinations(range(n), 2):
            if _bernoulli(rng, cfg.edge_prob):
                edges.append((u, v, ExtWeight(_draw_int(rng, 1, cfg.weight_max))))
        g = WeightedGraph(n, tuple(edges))
        if cfg.require_connected and not _is_connected(g):
            continue
        if cfg.require_min_degree_1 and any(not a for a in g.adjacency):
            continue
        return g
    raise ValueError(
        f"Could not satisfy the generator flags within {cfg.max_retries} draws "
        f"(seed={cfg.seed}, index={index})"
    )


def gen_groups(cfg: GenConfig, g: WeightedGraph, rng: np.random.Generator) -> GroupFamily:
    if g.n == 0:
        raise ValueError("Groups need at least one vertex")
    count = _draw_int(rng, max(1, cfg.group_count[0]), max(1, cfg.group_count[1]))
    groups = []
    for _ in range(count):
        size = min(g.n, _draw_int(rng, max(1, cfg.group_size[0]), max(1, cfg.group_size[1])))
        members = rng.choice(g.n, size=size, replace=False)
        groups.append(frozenset(int(v) for v in members))
    return GroupFamily(g.n, tuple(groups))


def gen_gst_instance(cfg: GenConfig, index: int = 0) -> GstInstance:
    rng = make_rng(cfg.seed, index)
    g = gen_graph(cfg, index, rng)
    return GstInstance(g, gen_groups(cfg, g, rng))


def gen_set_cover(cfg: GenConfig, index: int = 0) -> SetCoverInstance:
    """Universe size from [n_min, n]; each element joins each set with probability edge_prob."""
    rng = make_rng(cfg.seed, index)
    m = _draw_int(rng, cfg.n_min, cfg.n)
    k = _draw_int(rng, *cfg.set_count)
    sets = []
    for _ in range(k):
        elements = frozenset(e for e in range(m) if _bernoulli(rng, cfg.edge_prob))
        sets.append((elements, ExtWeight(_draw_int(rng, 1, cfg.weight_max))))
    return SetCoverInstance(m, tuple(sets))


# reports


def _value(outcome: SolveOutcome) -> str:
    return str(outcome.weight) if outcome.feasible else "infeasible"


def _format_ratio(ratio: Optional[Fraction]) -> str:
    return "-" if ratio is None else str(ratio)


@dataclass
class InstanceRecord:
    """Result of running one claim on one generated instance."""

    index: int
    digest: str
    source_value: str = "-"
    target_value: str = "-"
    lift_checks: int = 0
    ratios: Dict[str, Fraction] = field(default_factory=dict)
    status: Literal["pass", "violation", "skipped"] = "pass"
    notes: List[str] = field(default_factory=list)

    def violation(self, message: str):
        self.status = "violation"
        self.notes.append(message)

    def to_line(self) -> str:
        ratios = " ".join(f"ratio[{k}]={_format_ratio(v)}" for k, v in sorted(self.ratios.items()))
        parts = [
            f"i {self.index}",
            self.digest,
            self.status,
            f"src={self.source_value}",
            f"dst={self.target_value}",
            f"lifts={self.lift_checks}",
        ]
        if ratios:
            parts.append(ratios)
        if self.notes:
            parts.append("# " + "; ".join(self.notes))
        return " ".join(parts)


@dataclass
class SuiteReport:
    """
    Per-instance records of a suite run. A suite passes iff it was not aborted
    and no record is a violation.
    """

    suite: str
    seed: int
    count: int
    records: List[InstanceRecord] = field(default_factory=list)
    aborted: Optional[str] = None

    @property
    def violations(self) -> int:
        return sum(r.status == "violation" for r in self.records)

    @property
    def skipped(self) -> int:
        return sum(r.status == "skipped" for r in self.records)

    @property
    def passed(self) -> bool:
        return self.aborted is None and self.violations == 0

    def worst_ratios(self) -> Dict[str, Fraction]:
        worst: Dict[str, Fraction] = {}
        for record in self.records:
            for key, ratio in record.ratios.items():
                if ratio is not None and (key not in worst or ratio > worst[key]):
                    worst[key] = ratio
        return worst

    @property
    def worst_ratio(self) -> Optional[Fraction]:
        return max(self.worst_ratios().values(), default=None)

    def summary(self) -> Dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "count": self.count,
            "violations": self.violations,
            "worst_ratio": None if self.worst_ratio is None else str(self.worst_ratio),
            "worst_ratios": {k: str(v) for k, v in sorted(self.worst_ratios().items())},
            "skipped": self.skipped,
            "records": len(self.records),
            "aborted": self.aborted,
        }

    def to_json(self) -> str:
        return json.dumps(self.summary(), sort_keys=True)

    def to_text(self) -> str:
        lines = [f"suite {self.suite} seed {self.seed} count {self.count}"]
        lines.extend(r.to_line() for r in sorted(self.records, key=lambda r: r.index))
        lines.append(
            f"violations {self.violations} skipped {self.skipped} "
            f"worst_ratio {_format_ratio(self.worst_ratio)}"
        )
        if self.aborted is not None:
            lines.append(f"aborted {self.aborted}")
        return "\n".join(lines) + "\n"


def _graph_digest(kind: str, g: WeightedGraph, groups: Optional[GroupFamily] = None) -> str:
    return text_digest(serialize_instance(Instance(kind, graph=g, groups=groups)))


def _run_cases(
    suite: str,
    seed: int,
    count: int,
    case: Callable[[int], InstanceRecord],
    show_progress: bool = False,
) -> SuiteReport:
    report = SuiteReport(suite, seed, count)
    for index in tqdm(range(count), desc=suite, disable=not show_progress):
        try:
            report.records.append(case(index))
        except GuardExceededError as e:
            report.aborted = f"instance {index}: {e}"
            logging.warning(f"Suite {suite} aborted on instance {index}: {e}")
            break
    logging.info(
        f"Suite {suite}: {len(report.records)} instances, {report.violations} violations, "
        f"{report.skipped} skipped"
    )
    return report


def _compare(record: InstanceRecord, source: SolveOutcome, target: SolveOutcome, scale: int = 1):
    record.source_value, record.target_value = _value(source), _value(target)
    if source.feasible != target.feasible:
        record.violation("feasibility differs")
    elif source.feasible and source.weight.units * scale != target.weight.units:
        record.violation("optimal values differ")


def _lift_check(record: InstanceRecord, check: Callable[[], bool], what: str):
    try:
        ok = check()
    except LiftError as e:
        record.violation(f"{what}: {e}")
        return
    if ok:
        record.lift_checks += 1
    else:
        record.violation(f"{what} changed the weight")


# equivalence cases


def _mdt_gst_case(cfg: GenConfig, guards: OracleGuards, index: int) -> InstanceRecord:
    g = gen_graph(cfg, index)
    record = InstanceRecord(index, _graph_digest("mdt", g))
    art = reduce_mdt_to_gst(g)
    groups = art.output.groups
    if len(groups) != g.n or max(len(grp) for grp in groups) != max_degree(g) + 1:
        record.violation("group family has the wrong shape")
    source = exact_mdt(g, guards)
    target = exact_gst(art.output.graph, groups, guards)
    _compare(record, source, target)
    if target.feasible:
        _lift_check(
            record,
            lambda: lift_gst_to_mdt_solution(art, target.solution).weight == target.weight,
            "GST tree lifted to a dominating tree",
        )
    if source.feasible:
        _lift_check(
            record,
            lambda: embed_mdt_solution(art, source.solution).weight == source.weight,
            "dominating tree embedded as a GST tree",
        )
    return record


def _gst_mdt_case(cfg: GenConfig, guards: OracleGuards, index: int) -> InstanceRecord:
    inst = gen_gst_instance(cfg, index)
    record = InstanceRecord(index, _graph_digest("gst", inst.graph, inst.groups))
    art = reduce_gst_to_mdt(inst.graph, inst.groups)
    source = exact_gst(inst.graph, inst.groups, guards)
    target = exact_mdt(art.output, guards)
    _compare(record, source, target)
    if target.feasible:
        _lift_check(
            record,
            lambda: lift_mdt_to_gst_solution(art, target.solution).weight == target.weight,
            "dominating tree lifted to a GST tree",
        )
    if source.feasible:
        _lift_check(
            record,
            lambda: embed_gst_solution(art, source.solution).weight == source.weight,
            "GST tree embedded as a dominating tree",
        )
    return record


def _dom_mds_case(cfg: GenConfig, guards: OracleGuards, index: int) -> InstanceRecord:
    g = gen_graph(cfg, index)
    record = InstanceRecord(index, _graph_digest("dom", g))
    try:
        art = reduce_dom_to_mds(g)
    except IsolatedVertexError as e:
        record.status = "skipped"
        record.notes.append(str(e))
        return record
    dom_set = exact_dominating_set(g, guards)
    source = SolveOutcome.found(dom_set, ExtWeight(len(dom_set)))
    target = exact_mds(art.output, guards)
    _compare(record, source, target, art.scale)
    if target.feasible:
        _lift_check(
            record,
            lambda: len(lift_mds_to_dom_solution(art, target.solution)) == len(dom_set),
            "dominating star lifted to a dominating set",
        )
    _lift_check(
        record,
        lambda: star_from_dominating_set(art, dom_set).weight.units == len(dom_set) * art.scale,
        "dominating set mapped to a star",
    )
    return record


def _mds_sc_case(cfg: GenConfig, guards: OracleGuards, index: int) -> InstanceRecord:
    g = gen_graph(cfg, index)
    record = InstanceRecord(index, _graph_digest("mds", g))
    sources, targets = [], []
    for c in g.vertices:
        art = reduce_mds_to_sc(g, c)
        star = exact_mds(g, guards, centers=[c])
        cover = exact_set_cover(art.output, guards)
        sources.append(_value(star))
        targets.append(_value(cover))
        if star.feasible != cover.feasible:
            record.violation(f"center {c}: feasibility differs")
        elif star.feasible and star.weight != cover.weight:
            record.violation(f"center {c}: optimal values differ")
        if cover.feasible:
            _lift_check(
                record,
                lambda: lift_sc_to_mds_solution(art, cover.solution).weight == cover.weight,
                f"center {c}: cover lifted to a star",
            )
        if star.feasible:
            _lift_check(
                record,
                lambda: art.output.cover_weight(cover_from_star(art, star.solution)) == star.weight,
                f"center {c}: star mapped to a cover",
            )
    record.source_value, record.target_value = ",".join(sources), ",".join(targets)
    return record


def _hp_mdp_check(g: WeightedGraph, guards: OracleGuards, record: InstanceRecord) -> InstanceRecord:
    order = find_hamiltonian_path(g, guards)
    art = reduce_hp_to_mdp(g)
    outcome = exact_mdp(art.output, guards)
    try:
        decided = decide_hp_via_mdp(art, outcome)
    except LiftError as e:
        record.violation(f"decision witness: {e}")
        return record
    record.source_value = "yes" if order is not None else "no"
    record.target_value = _value(outcome)
    if decided != (order is not None):
        record.violation("decision differs")
    if order is not None:
        _lift_check(
            record,
            lambda: path_from_hamiltonian(art, order).weight.units == 0,
            "Hamiltonian path mapped to a dominating path",
        )
    if decided:
        witness = path_order(outcome.solution)
        _lift_check(
            record,
            lambda: all(g.has_edge(a, b) for a, b in zip(witness, witness[1:])),
            "zero-weight path read back as a Hamiltonian path",
        )
    return record


def _hp_mdp_case(cfg: GenConfig, guards: OracleGuards, index: int) -> InstanceRecord:
    g = gen_graph(cfg, index)
    return _hp_mdp_check(g, guards, InstanceRecord(index, _graph_digest("hp", g)))


CASES = {
    "MDT_GST": _mdt_gst_case,
    "GST_MDT": _gst_mdt_case,
    "DOM_MDS": _dom_mds_case,
    "MDS_SC": _mds_sc_case,
    "HP_MDP": _hp_mdp_case,
}


def run_equivalence_suite(
    which: str,
    cfg: GenConfig,
    count: int,
    guards: Optional[OracleGuards] = None,
    show_progress: bool = False,
) -> SuiteReport:
    """
    Run one reduction claim pair on ``count`` generated instances: solve the
    source and the reduced instance exactly, compare the optima and carry both
    oracle solutions across the reduction.
    """
    if which not in CASES:
        raise ValueError(f"Unknown equivalence suite {which!r}, expected one of {EQUIVALENCE_SUITES}")
    guards = guards or default_oracle_guards()
    case = CASES[which]
    return _run_cases(which, cfg.seed, count, lambda i: case(cfg, guards, i), show_progress)


def run_exhaustive_hp_suite(
    max_n: int = 5, guards: Optional[OracleGuards] = None, show_progress: bool = False
) -> SuiteReport:
    """Hamiltonian path decision through dominating paths on every labelled graph with 1..max_n vertices."""
    guards = guards or default_oracle_guards()
    graphs = []
    for n in range(1, max_n + 1):
        pairs = list(combinations(range(n), 2))
        for bits in range(1 << len(pairs)):
            graphs.append(
                WeightedGraph.unweighted(n, [p for k, p in enumerate(pairs) if bits >> k & 1])
            )

    def case(index: int) -> InstanceRecord:
        g = graphs[index]
        return _hp_mdp_check(g, guards, InstanceRecord(index, _graph_digest("hp", g)))

    return _run_cases("HP_EXHAUSTIVE", 0, len(graphs), case, show_progress)


# approximation cases


def _ratio_case(cfg: GenConfig, guards: OracleGuards, index: int) -> InstanceRecord:
    g = gen_graph(cfg, index)
    record = InstanceRecord(index, _graph_digest("mds", g))

    exact_star, approx_star = exact_mds(g, guards), approx_mds(g, guards)
    record.source_value, record.target_value = _value(exact_star), _value(approx_star)
    if exact_star.feasible != approx_star.feasible:
        record.violation("MDS feasibility differs")
    elif exact_star.feasible:
        report = ApproxReport(approx_star.solution, approx_star.weight, exact_star.weight)
        record.ratios["mds"] = report.ratio
        if approx_star.weight < exact_star.weight:
            record.violation("MDS approximation beats the oracle")
        if not report.within(harmonic_number(g.n)):
            record.violation(f"MDS ratio {report.ratio} exceeds H({g.n})")

    exact_tree, approx_tree = exact_mdt(g, guards), approx_mdt(g, guards)
    record.source_value += f"/{_value(exact_tree)}"
    record.target_value += f"/{_value(approx_tree)}"
    if approx_tree.feasible and not check_solution(g, approx_tree.solution, "mdt").feasible:
        record.violation("MDT pipeline returned an invalid tree")
    if _is_connected(g) and exact_tree.feasible != approx_tree.feasible:
        record.violation("MDT feasibility differs on a connected graph")
    if exact_tree.feasible and approx_tree.feasible:
        report = ApproxReport(approx_tree.solution, approx_tree.weight, exact_tree.weight)
        record.ratios["mdt"] = report.ratio
        if approx_tree.weight < exact_tree.weight:
            record.violation("MDT pipeline beats the oracle")
        if exact_tree.weight.units == 0 and approx_tree.weight.units != 0:
            record.notes.append("MDT optimum is 0 but the pipeline is not")
    return record


def run_ratio_suite(
    cfg: GenConfig,
    count: int,
    guards: Optional[OracleGuards] = None,
    show_progress: bool = False,
) -> SuiteReport:
    """
    Approximation against the oracles: the star approximation must stay within
    H(n) of the optimum; dominating tree pipeline ratios are only recorded.
    """
    guards = guards or default_oracle_guards()
    return _run_cases(
        "RATIO", cfg.seed, count, lambda i: _ratio_case(cfg, guards, i), show_progress
    )


def _greedy_case(cfg: GenConfig, guards: OracleGuards, index: int) -> InstanceRecord:
    inst = gen_set_cover(cfg, index)
    record = InstanceRecord(
        index, text_digest(serialize_instance(Instance("sc", set_cover=inst)))
    )
    exact, greedy = exact_set_cover(inst, guards), greedy_set_cover(inst)
    record.source_value, record.target_value = _value(exact), _value(greedy)
    if exact.feasible != greedy.feasible:
        record.violation("feasibility differs")
    elif exact.feasible:
        if not inst.is_cover(greedy.solution):
            record.violation("greedy returned a non-cover")
        report = ApproxReport(greedy.solution, greedy.weight, exact.weight)
        record.ratios["sc"] = report.ratio
        if not report.within(harmonic_number(inst.universe_size)):
            record.violation(f"greedy ratio {report.ratio} exceeds H({inst.universe_size})")
    return record


def run_greedy_bound_suite(
    cfg: GenConfig,
    count: int,
    guards: Optional[OracleGuards] = None,
    show_progress: bool = False,
) -> SuiteReport:
    guards = guards or default_oracle_guards()
    return _run_cases(
        "GREEDY", cfg.seed, count, lambda i: _greedy_case(cfg, guards, i), show_progress
    )


def run_suite(suite_config: SuiteConfig) -> SuiteReport:
    which = suite_config.which
    kwargs = dict(guards=suite_config.guards, show_progress=suite_config.show_progress)
    if which in CASES:
        return run_equivalence_suite(which, suite_config.gen_config, suite_config.count, **kwargs)
    if which == "RATIO":
        return run_ratio_suite(suite_config.gen_config, suite_config.count, **kwargs)
    if which == "GREEDY":
        return run_greedy_bound_suite(suite_config.gen_config, suite_config.count, **kwargs)
    return run_exhaustive_hp_suite(suite_config.count, **kwargs)
