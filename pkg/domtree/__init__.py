from .weights import ExtWeight, WeightOverflowError, ZERO, ONE, INFINITE, total_weight
from .graph import (
    WeightedGraph,
    GroupFamily,
    SubgraphSolution,
    SolutionCheck,
    SolutionStructureError,
    check_solution,
    validate_solution,
    closed_neighborhood,
    is_connected_induced,
    validate_gst,
    dominates,
    undominated,
    max_degree,
    mst_induced,
)
from .oracle_config import OracleGuards, default_oracle_guards
from .gen_config import GenConfig, SuiteConfig, default_gen_config
from .exact import (
    GuardExceededError,
    SolveOutcome,
    SetCoverInstance,
    exact_mdt,
    exact_gst,
    exact_mds,
    exact_mdp,
    exact_set_cover,
    exact_dominating_set,
    exact_mdt_on_tree,
    exact_cds,
    find_hamiltonian_path,
    has_hamiltonian_path,
)
from .reductions import (
    ReductionArtifact,
    GstInstance,
    LiftError,
    IsolatedVertexError,
    reduce_mdt_to_gst,
    lift_gst_to_mdt_solution,
    embed_mdt_solution,
    reduce_gst_to_mdt,
    lift_mdt_to_gst_solution,
    embed_gst_solution,
    reduce_dom_to_mds,
    lift_mds_to_dom_solution,
    star_from_dominating_set,
    reduce_mds_to_sc,
    lift_sc_to_mds_solution,
    cover_from_star,
    reduce_hp_to_mdp,
    decide_hp_via_mdp,
    path_from_hamiltonian,
)
from .approx import (
    ApproxReport,
    approx_report,
    harmonic_number,
    greedy_set_cover,
    approx_mds,
    heuristic_gst,
    approx_mdt,
)
from .instance_io import Instance, InstanceFormatError, parse_instance, serialize_instance
from .helper_functions import load_from_pickle, load_suite_config_from_yaml_file, save_to_pickle
from .harness import (
    SuiteReport,
    gen_graph,
    gen_gst_instance,
    gen_set_cover,
    run_equivalence_suite,
    run_ratio_suite,
    run_greedy_bound_suite,
    run_exhaustive_hp_suite,
    run_suite,
)
