"""
Command line interface.

    domtree solve  --problem P --method exact|approx|tree FILE
    domtree reduce --from A --to B FILE [-o OUT] [--sidecar MAP] [--center C]
    domtree lift   --source FILE --sidecar MAP --solution SOL
    domtree verify FILE SOL [--problem P]
    domtree gen    --seed S [--kind K] [--index I] [--count C] [-o DIR]
    domtree suite  --which W --seed S [--count C] [--config YML] [--json PATH] [--save PICKLE]
    domtree report PICKLE [--json]

Exit codes: 0 success, 1 infeasible or violated, 2 input error, 3 oracle guard exceeded.
Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import os
import pickle
import sys
from typing import Callable, Dict, Optional, Sequence, Tuple

from .approx import approx_mds, approx_mdt, greedy_set_cover, heuristic_gst
from .exact import (
    GuardExceededError,
    SolveOutcome,
    exact_dominating_set,
    exact_gst,
    exact_mdp,
    exact_mds,
    exact_mdt,
    exact_mdt_on_tree,
    exact_set_cover,
    find_hamiltonian_path,
)
from .gen_config import SUITE_NAMES, GenConfig, SuiteConfig, default_gen_config
from .graph import SubgraphSolution, check_solution, undominated
from .harness import SuiteReport, gen_graph, gen_gst_instance, gen_set_cover, run_suite
from .helper_functions import load_from_pickle, load_suite_config_from_yaml_file, save_to_pickle
from .instance_io import (
    INSTANCE_KINDS,
    Instance,
    InstanceFormatError,
    SolutionFile,
    format_weight,
    parse_instance,
    parse_sidecar,
    parse_solution,
    serialize_instance,
    serialize_sidecar,
    serialize_solution,
)
from .reductions import (
    LiftError,
    ReductionArtifact,
    decide_hp_via_mdp,
    lift_gst_to_mdt_solution,
    lift_mds_to_dom_solution,
    lift_mdt_to_gst_solution,
    lift_sc_to_mds_solution,
    path_order,
    reduce_dom_to_mds,
    reduce_gst_to_mdt,
    reduce_hp_to_mdp,
    reduce_mds_to_sc,
    reduce_mdt_to_gst,
)
from .weights import WeightOverflowError

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INPUT_ERROR = 2
EXIT_GUARD = 3

REDUCTION_PAIRS = (("mdt", "gst"), ("gst", "mdt"), ("dom", "mds"), ("mds", "sc"), ("hp", "mdp"))

logging.basicConfig(
    level=logging.WARNING,
    format="%(asctime)s INFO %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
    stream=sys.stderr,
)


class UsageError(ValueError):
    """Arguments that are individually valid but do not fit together."""


def _err(message: str):
    print(message, file=sys.stderr)


def _read(path: str) -> str:
    with open(path, "r") as f:
        return f.read()


def _write(path: str, text: str):
    directory = os.path.dirname(path)
    if directory and not os.path.exists(directory):
        os.makedirs(directory)
    with open(path, "w") as f:
        f.write(text)


def _load_instance(path: str) -> Instance:
    return parse_instance(_read(path))


def _require_graph(inst: Instance, problem: str):
    if inst.graph is None:
        raise UsageError(f"Problem {problem} needs a graph instance, got {inst.kind}")
    if problem == "gst" and inst.groups is None:
        raise UsageError("Problem gst needs a gst instance with groups")


# solve


def _solve_dom_approx(inst: Instance, guards=None) -> SolveOutcome:
    art = reduce_dom_to_mds(inst.graph, inst.scale)
    outcome = approx_mds(art.output, guards)
    dom_set = lift_mds_to_dom_solution(art, outcome.solution)
    return SolveOutcome.found(dom_set, outcome.weight)


SOLVERS: Dict[Tuple[str, str], Callable[[Instance], SolveOutcome]] = {
    ("mdt", "exact"): lambda inst: exact_mdt(inst.graph),
    ("mdt", "approx"): lambda inst: approx_mdt(inst.graph),
    ("mdt", "tree"): lambda inst: exact_mdt_on_tree(inst.graph),
    ("gst", "exact"): lambda inst: exact_gst(inst.graph, inst.groups),
    ("gst", "approx"): lambda inst: heuristic_gst(inst.graph, inst.groups),
    ("mds", "exact"): lambda inst: exact_mds(inst.graph),
    ("mds", "approx"): lambda inst: approx_mds(inst.graph),
    ("mdp", "exact"): lambda inst: exact_mdp(inst.graph),
    ("sc", "exact"): lambda inst: exact_set_cover(inst.set_cover),
    ("sc", "approx"): lambda inst: greedy_set_cover(inst.set_cover),
    ("dom", "approx"): _solve_dom_approx,
}


def _solution_text(problem: str, inst: Instance, outcome: SolveOutcome) -> str:
    if problem == "sc":
        return serialize_solution(
            SolutionFile("cover", indices=tuple(outcome.solution), weight=outcome.weight),
            inst.scale,
        )
    if problem == "dom":
        return serialize_solution(SolutionFile("domset", indices=tuple(outcome.solution)))
    return serialize_solution(SolutionFile("subgraph", subgraph=outcome.solution), inst.scale)


def cmd_solve(args) -> int:
    inst = _load_instance(args.file)
    problem = args.problem or inst.kind
    if problem == "sc" and inst.kind != "sc":
        raise UsageError("Problem sc needs an sc instance")
    if problem != "sc":
        _require_graph(inst, problem)

    if problem == "hp":
        if args.method != "exact":
            raise UsageError("Hamiltonian path is only decided exactly")
        order = find_hamiltonian_path(inst.graph)
        print(serialize_solution(SolutionFile("hamiltonian", indices=order or (), answer=order is not None)), end="")
        return EXIT_OK if order is not None else EXIT_INFEASIBLE
    if problem == "dom" and args.method == "exact":
        dom_set = exact_dominating_set(inst.graph)
        print(serialize_solution(SolutionFile("domset", indices=tuple(dom_set))), end="")
        return EXIT_OK

    solver = SOLVERS.get((problem, args.method))
    if solver is None:
        raise UsageError(f"No {args.method} solver for problem {problem}")
    outcome = solver(inst)
    if not outcome.feasible:
        _err(f"{problem} instance is infeasible")
        return EXIT_INFEASIBLE
    print(_solution_text(problem, inst, outcome), end="")
    return EXIT_OK


# reduce / lift


def build_artifact(
    source_kind: str, target_kind: str, inst: Instance, center: Optional[int] = None
) -> ReductionArtifact:
    if (source_kind, target_kind) not in REDUCTION_PAIRS:
        raise UsageError(f"No reduction from {source_kind} to {target_kind}")
    _require_graph(inst, source_kind)
    if source_kind == "mdt":
        return reduce_mdt_to_gst(inst.graph)
    if source_kind == "gst":
        return reduce_gst_to_mdt(inst.graph, inst.groups)
    if source_kind == "dom":
        return reduce_dom_to_mds(inst.graph, inst.scale)
    if source_kind == "mds":
        if center is None or center < 0:
            raise UsageError("Reducing mds to sc needs --center")
        return reduce_mds_to_sc(inst.graph, center)
    return reduce_hp_to_mdp(inst.graph)


def artifact_instance(art: ReductionArtifact, scale: int) -> Instance:
    if art.target_kind == "gst":
        return Instance("gst", scale, graph=art.output.graph, groups=art.output.groups)
    if art.target_kind == "sc":
        return Instance("sc", scale, set_cover=art.output)
    return Instance(art.target_kind, scale, graph=art.output)


def _default_output(path: str, target_kind: str) -> str:
    stem, _ = os.path.splitext(path)
    return f"{stem}.{target_kind}.inst"


def cmd_reduce(args) -> int:
    inst = _load_instance(args.file)
    art = build_artifact(args.source_kind, args.target_kind, inst, args.center)
    out = args.output or _default_output(args.file, args.target_kind)
    sidecar = args.sidecar or f"{out}.map"
    _write(out, serialize_instance(artifact_instance(art, inst.scale)))
    _write(sidecar, serialize_sidecar(art))
    print(out)
    print(sidecar)
    return EXIT_OK


def _subgraph(sol: SolutionFile) -> SubgraphSolution:
    if sol.form != "subgraph":
        raise UsageError(f"Expected a tree, star or path solution, got a {sol.form}")
    return sol.subgraph


def lift_solution(art: ReductionArtifact, sol: SolutionFile, scale: int) -> Tuple[str, int]:
    """Carry a solution of the reduced instance back; returns the solution text and exit code."""
    if art.source_kind == "mdt":
        tree = lift_gst_to_mdt_solution(art, _subgraph(sol))
        return serialize_solution(SolutionFile("subgraph", subgraph=tree), scale), EXIT_OK
    if art.source_kind == "gst":
        tree = lift_mdt_to_gst_solution(art, _subgraph(sol))
        return serialize_solution(SolutionFile("subgraph", subgraph=tree), scale), EXIT_OK
    if art.source_kind == "dom":
        dom_set = lift_mds_to_dom_solution(art, _subgraph(sol))
        return serialize_solution(SolutionFile("domset", indices=tuple(dom_set))), EXIT_OK
    if art.source_kind == "mds":
        if sol.form != "cover":
            raise UsageError(f"Expected a cover, got a {sol.form}")
        if sol.weight != art.output.cover_weight(
            i for i in sol.indices if 0 <= i < art.output.num_sets
        ):
            raise LiftError("Declared cover weight differs from the set weights")
        star = lift_sc_to_mds_solution(art, sol.indices)
        return serialize_solution(SolutionFile("subgraph", subgraph=star), scale), EXIT_OK
    path = _subgraph(sol)
    if path.weight.is_infinite:
        check = check_solution(art.output, path, "mdp")
        if not check.feasible:
            raise LiftError(f"input is not a dominating path: {check.describe()}")
        return serialize_solution(SolutionFile("hamiltonian", answer=False)), EXIT_INFEASIBLE
    if decide_hp_via_mdp(art, SolveOutcome.found(path, path.weight)):
        text = serialize_solution(SolutionFile("hamiltonian", indices=path_order(path), answer=True))
        return text, EXIT_OK
    return serialize_solution(SolutionFile("hamiltonian", answer=False)), EXIT_INFEASIBLE


def cmd_lift(args) -> int:
    inst = _load_instance(args.source)
    sidecar = parse_sidecar(_read(args.sidecar))
    art = build_artifact(sidecar.source_kind, sidecar.target_kind, inst, sidecar.center)
    if not sidecar.matches(art):
        raise UsageError("Sidecar map does not belong to this source instance")
    sol = parse_solution(_read(args.solution), inst.scale)
    text, code = lift_solution(art, sol, inst.scale)
    print(text, end="")
    if code == EXIT_INFEASIBLE:
        _err("no Hamiltonian path: the dominating path has positive weight")
    return code


# verify


def verify_solution(inst: Instance, sol: SolutionFile, problem: str) -> Tuple[bool, str]:
    """Feasibility verdict plus a human readable reason."""
    if problem == "sc":
        if sol.form != "cover":
            raise UsageError(f"Expected a cover, got a {sol.form}")
        sc = inst.set_cover
        bad = [i for i in sol.indices if not 0 <= i < sc.num_sets]
        if bad:
            raise UsageError(f"Set indices {bad} do not exist")
        missing = sc.uncovered(sol.indices)
        if missing:
            return False, "uncovered elements: " + " ".join(map(str, missing))
        if sc.cover_weight(sol.indices) != sol.weight:
            return False, "declared weight does not match the set weights"
        return True, f"weight {format_weight(sol.weight, inst.scale)}"
    g = inst.graph
    if problem == "dom":
        if sol.form != "domset":
            raise UsageError(f"Expected a dominating set, got a {sol.form}")
        dom_set = frozenset(sol.indices)
        bad = sorted(v for v in dom_set if v >= g.n)
        if bad:
            raise UsageError(f"Vertices {bad} are not in the graph")
        missed = undominated(g, dom_set)
        if missed:
            return False, "undominated vertices: " + " ".join(map(str, missed))
        return True, f"size {len(dom_set)}"
    if problem == "hp":
        if sol.form != "hamiltonian":
            raise UsageError(f"Expected a Hamiltonian path answer, got a {sol.form}")
        if not sol.answer:
            return False, "answer is no"
        order = sol.indices
        if sorted(order) != list(g.vertices):
            return False, "witness does not visit every vertex exactly once"
        gaps = [(a, b) for a, b in zip(order, order[1:]) if not g.has_edge(a, b)]
        if gaps:
            return False, "missing edges: " + " ".join(f"{a}-{b}" for a, b in gaps)
        return True, "Hamiltonian path"
    check = check_solution(g, _subgraph(sol), problem, inst.groups)
    if not check.feasible:
        return False, check.describe()
    return True, f"weight {format_weight(sol.subgraph.weight, inst.scale)}"


def cmd_verify(args) -> int:
    inst = _load_instance(args.file)
    problem = args.problem or inst.kind
    if (problem == "sc") != (inst.kind == "sc"):
        raise UsageError(f"Problem {problem} does not fit a {inst.kind} instance")
    if problem != "sc":
        _require_graph(inst, problem)
    sol = parse_solution(_read(args.solution), inst.scale)
    ok, reason = verify_solution(inst, sol, problem)
    if ok:
        print(f"feasible {reason}")
        return EXIT_OK
    print("infeasible")
    _err(reason)
    return EXIT_INFEASIBLE


# gen / suite


def _gen_config(args) -> GenConfig:
    cfg = load_suite_config_from_yaml_file(args.config).gen_config if args.config else default_gen_config()
    overrides = {
        "seed": args.seed,
        "n": args.n,
        "n_min": args.n_min,
        "edge_prob": args.edge_prob,
        "weight_max": args.weight_max,
    }
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if args.connected:
        overrides["require_connected"] = True
    if args.min_degree_1:
        overrides["require_min_degree_1"] = True
    if "n" in overrides and "n_min" not in overrides and cfg.n_min > overrides["n"]:
        overrides["n_min"] = overrides["n"]
    return dataclasses.replace(cfg, **overrides)


def _generated(kind: str, cfg: GenConfig, index: int) -> Instance:
    if kind == "sc":
        return Instance("sc", set_cover=gen_set_cover(cfg, index))
    if kind == "gst":
        gst = gen_gst_instance(cfg, index)
        return Instance("gst", graph=gst.graph, groups=gst.groups)
    return Instance(kind, graph=gen_graph(cfg, index))


def cmd_gen(args) -> int:
    cfg = _gen_config(args)
    if args.output is None:
        if args.count != 1:
            raise UsageError("Several instances need an output directory (-o)")
        print(serialize_instance(_generated(args.kind, cfg, args.index)), end="")
        return EXIT_OK
    for index in range(args.index, args.index + args.count):
        path = os.path.join(args.output, f"{args.kind}_{cfg.seed}_{index}.inst")
        _write(path, serialize_instance(_generated(args.kind, cfg, index)))
        print(path)
    return EXIT_OK


def cmd_suite(args) -> int:
    if args.config:
        suite_config = load_suite_config_from_yaml_file(args.config)
        suite_config = dataclasses.replace(
            suite_config,
            which=args.which or suite_config.which,
            count=suite_config.count if args.count is None else args.count,
            gen_config=_gen_config(args),
            show_progress=suite_config.show_progress or args.progress,
        )
    else:
        if args.which is None:
            raise UsageError("suite needs --which or --config")
        count = args.count
        if count is None:
            count = 5 if args.which == "HP_EXHAUSTIVE" else 100
        suite_config = SuiteConfig(
            which=args.which, count=count, gen_config=_gen_config(args), show_progress=args.progress
        )
    report = run_suite(suite_config)
    print(report.to_text(), end="")
    if args.json:
        _write(args.json, report.to_json() + "\n")
    if args.save:
        save_to_pickle(report, args.save)
    return _report_status(report)


def _report_status(report) -> int:
    if report.aborted is not None:
        _err(f"suite aborted: {report.aborted}")
        return EXIT_GUARD
    if report.violations:
        _err(f"{report.violations} violations")
        return EXIT_INFEASIBLE
    return EXIT_OK


def cmd_report(args) -> int:
    try:
        report = load_from_pickle(args.file)
    except (pickle.UnpicklingError, EOFError) as e:
        raise UsageError(f"{args.file} is not a saved report: {e}")
    if not isinstance(report, SuiteReport):
        raise UsageError(f"{args.file} does not hold a suite report")
    print(report.to_json() if args.json else report.to_text(), end="\n" if args.json else "")
    return _report_status(report)


# parser


def _add_generator_options(parser: argparse.ArgumentParser):
    parser.add_argument("--seed", type=int, help="Generator seed")
    parser.add_argument("--n", type=int, help="Largest vertex count")
    parser.add_argument("--n-min", dest="n_min", type=int, help="Smallest vertex count")
    parser.add_argument("--edge-prob", dest="edge_prob", type=str, help="Edge probability, e.g. 1/2")
    parser.add_argument("--weight-max", dest="weight_max", type=int, help="Largest edge weight")
    parser.add_argument("--connected", action="store_true", help="Only connected graphs")
    parser.add_argument(
        "--min-degree-1", dest="min_degree_1", action="store_true", help="No isolated vertices"
    )
    parser.add_argument("--config", type=str, help="YAML file with GENERATOR/ORACLE/SUITE sections")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="domtree", description="Dominating tree, star and path problems and their reductions"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="Solve an instance")
    solve.add_argument("--problem", choices=INSTANCE_KINDS, help="Defaults to the instance kind")
    solve.add_argument("--method", choices=("exact", "approx", "tree"), default="exact")
    solve.add_argument("file")
    solve.set_defaults(func=cmd_solve)

    reduce = sub.add_parser("reduce", help="Reduce an instance to another problem")
    reduce.add_argument("--from", dest="source_kind", required=True, choices=("mdt", "gst", "dom", "mds", "hp"))
    reduce.add_argument("--to", dest="target_kind", required=True, choices=("gst", "mdt", "mds", "sc", "mdp"))
    reduce.add_argument("--center", type=int, help="Star center (mds to sc)")
    reduce.add_argument("-o", "--output", help="Reduced instance path")
    reduce.add_argument("--sidecar", help="Sidecar map path")
    reduce.add_argument("file")
    reduce.set_defaults(func=cmd_reduce)

    lift = sub.add_parser("lift", help="Lift a solution of a reduced instance back to its source")
    lift.add_argument("--source", required=True, help="Source instance that was reduced")
    lift.add_argument("--sidecar", required=True)
    lift.add_argument("--solution", required=True)
    lift.set_defaults(func=cmd_lift)

    verify = sub.add_parser("verify", help="Check a solution against an instance")
    verify.add_argument("--problem", choices=INSTANCE_KINDS, help="Defaults to the instance kind")
    verify.add_argument("file")
    verify.add_argument("solution")
    verify.set_defaults(func=cmd_verify)

    gen = sub.add_parser("gen", help="Generate seeded random instances")
    _add_generator_options(gen)
    gen.add_argument("--kind", choices=INSTANCE_KINDS, default="mdt")
    gen.add_argument("--index", type=int, default=0)
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("-o", "--output", help="Directory for the generated files")
    gen.set_defaults(func=cmd_gen)

    suite = sub.add_parser("suite", help="Run a verification suite")
    _add_generator_options(suite)
    suite.add_argument("--which", choices=SUITE_NAMES)
    suite.add_argument("--count", type=int)
    suite.add_argument("--json", help="Write the JSON summary here")
    suite.add_argument("--save", help="Pickle the full report here (.gz compresses)")
    suite.add_argument("--progress", action="store_true")
    suite.set_defaults(func=cmd_suite)

    report = sub.add_parser("report", help="Print a suite report saved with suite --save")
    report.add_argument("--json", action="store_true", help="Print the JSON summary")
    report.add_argument("file")
    report.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT_ERROR
    if args.command in ("gen", "suite") and args.seed is None and not args.config:
        _err("--seed is required")
        return EXIT_INPUT_ERROR
    try:
        return args.func(args)
    except GuardExceededError as e:
        _err(f"guard exceeded: {e}")
        return EXIT_GUARD
    except LiftError as e:
        _err(f"lift failed: {e}")
        return EXIT_INFEASIBLE
    except InstanceFormatError as e:
        _err(f"format error: {e}")
        return EXIT_INPUT_ERROR
    except (ValueError, KeyError, AssertionError, OSError, WeightOverflowError) as e:
        _err(f"error: {e}")
        return EXIT_INPUT_ERROR
