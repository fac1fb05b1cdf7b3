import json
from fractions import Fraction
from pathlib import Path

import networkx as nx
import pytest

from domtree.gen_config import GenConfig, SuiteConfig
from domtree.harness import (
    InstanceRecord,
    SuiteReport,
    gen_graph,
    gen_gst_instance,
    gen_set_cover,
    make_rng,
    run_equivalence_suite,
    run_exhaustive_hp_suite,
    run_greedy_bound_suite,
    run_ratio_suite,
    run_suite,
)
from domtree.helper_functions import (
    load_from_pickle,
    load_suite_config_from_yaml_file,
    save_to_pickle,
)
from domtree.instance_io import Instance, parse_instance, serialize_instance
from domtree.oracle_config import OracleGuards

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


class TestGenerator:
    def test_streams_are_reproducible(self):
        assert make_rng(7, 2).integers(0, 1000, size=5).tolist() == make_rng(7, 2).integers(
            0, 1000, size=5
        ).tolist()
        cfg = GenConfig(seed=11, n=7, n_min=2)
        assert [gen_graph(cfg, i) for i in range(5)] == [gen_graph(cfg, i) for i in range(5)]

    def test_single_vertex(self):
        g = gen_graph(GenConfig(seed=1, n=1, edge_prob=0))
        assert g.n == 1 and g.num_edges == 0

    def test_complete_graph(self):
        g = gen_graph(GenConfig(seed=3, n=5, edge_prob=1, weight_max=4))
        assert g.num_edges == 10
        assert all(1 <= w.units <= 4 for _, _, w in g.edge_list)

    def test_sizes_and_flags(self):
        cfg = GenConfig(seed=5, n=7, n_min=3, edge_prob="0.3", require_connected=True)
        for i in range(20):
            g = gen_graph(cfg, i)
            assert 3 <= g.n <= 7
            assert nx.is_connected(g.nx_graph)
        cfg = GenConfig(seed=5, n=6, n_min=2, edge_prob="1/3", require_min_degree_1=True)
        for i in range(20):
            g = gen_graph(cfg, i)
            assert all(g.degree(v) > 0 for v in g.vertices)

    def test_vertex_counts_must_be_positive(self):
        with pytest.raises(AssertionError):
            GenConfig(n=2, n_min=0)
        with pytest.raises(AssertionError):
            GenConfig(n=0)

    def test_retries_run_out(self):
        cfg = GenConfig(seed=0, n=3, edge_prob=0, require_connected=True, max_retries=5)
        with pytest.raises(ValueError, match="within 5 draws"):
            gen_graph(cfg)

    def test_groups_and_sets(self):
        cfg = GenConfig(seed=9, n=6, n_min=2, group_count=(2, 3), group_size=(1, 2), set_count=(2, 4))
        inst = gen_gst_instance(cfg, 4)
        assert 2 <= len(inst.groups) <= 3
        assert all(1 <= len(group) <= 2 for group in inst.groups)
        sc = gen_set_cover(cfg, 4)
        assert 2 <= sc.num_sets <= 4 and 2 <= sc.universe_size <= 6
        assert gen_set_cover(cfg, 4) == sc


class TestEquivalenceSuites:
    @pytest.mark.parametrize(
        "which, cfg",
        [
            ("MDT_GST", GenConfig(seed=1, n=6, n_min=2, require_connected=True)),
            ("MDT_GST", GenConfig(seed=2, n=5, n_min=1, edge_prob="1/4")),
            ("GST_MDT", GenConfig(seed=3, n=5, n_min=1)),
            ("DOM_MDS", GenConfig(seed=4, n=6, n_min=2, require_min_degree_1=True)),
            ("MDS_SC", GenConfig(seed=5, n=6, n_min=1)),
            ("HP_MDP", GenConfig(seed=6, n=6, n_min=1, edge_prob="3/5")),
        ],
    )
    def test_no_violations(self, which, cfg):
        report = run_equivalence_suite(which, cfg, 12)
        assert report.passed, report.to_text()
        assert len(report.records) == 12
        assert sum(r.lift_checks for r in report.records) > 0

    def test_isolated_vertices_are_skipped(self):
        report = run_equivalence_suite("DOM_MDS", GenConfig(seed=1, n=3, edge_prob=0), 4)
        assert report.skipped == 4 and report.violations == 0
        assert "isolated" in report.records[0].notes[0]

    def test_guard_aborts_with_partial_report(self):
        cfg = GenConfig(seed=8, n=8, n_min=8)
        report = run_equivalence_suite("MDT_GST", cfg, 5, OracleGuards(max_vertices=6))
        assert report.aborted is not None and "exceeds the oracle guard" in report.aborted
        assert not report.passed
        assert report.records == []
        assert "aborted" in report.to_text()

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            run_equivalence_suite("MDT_SC", GenConfig(), 1)

    def test_exhaustive_hp(self):
        report = run_exhaustive_hp_suite(max_n=4)
        assert len(report.records) == 1 + 2 + 8 + 64
        assert report.passed, report.to_text()
        assert report.records[0].source_value == "yes"
        # two vertices, no edge
        assert report.records[1].source_value == "no"


class TestApproximationSuites:
    def test_ratio_suite(self):
        report = run_ratio_suite(GenConfig(seed=12, n=6, n_min=2), 10)
        assert report.passed, report.to_text()
        ratios = report.worst_ratios()
        assert set(ratios) <= {"mds", "mdt"}
        assert all(r >= 1 for r in ratios.values())

    def test_greedy_suite(self):
        report = run_greedy_bound_suite(GenConfig(seed=13, n=8, n_min=1, edge_prob="3/10"), 20)
        assert report.passed, report.to_text()


class TestReports:
    def test_summary_and_text(self):
        report = SuiteReport("GREEDY", 1, 2)
        report.records.append(InstanceRecord(0, "abc", ratios={"sc": Fraction(3, 2)}))
        bad = InstanceRecord(1, "def")
        bad.violation("feasibility differs")
        report.records.append(bad)
        summary = report.summary()
        assert set(summary) == {
            "suite", "seed", "count", "violations", "worst_ratio",
            "worst_ratios", "skipped", "records", "aborted",
        }
        assert summary["violations"] == 1 and summary["worst_ratio"] == "3/2"
        assert not report.passed
        text = report.to_text()
        assert "i 0 abc pass" in text and "ratio[sc]=3/2" in text
        assert "# feasibility differs" in text

    def test_json_is_stable(self):
        cfg = GenConfig(seed=21, n=5, n_min=2)
        first = run_equivalence_suite("MDS_SC", cfg, 6).to_json()
        second = run_equivalence_suite("MDS_SC", cfg, 6).to_json()
        assert first == second
        assert json.loads(first)["violations"] == 0

    def test_pickle_round_trip(self, tmp_path):
        report = run_greedy_bound_suite(GenConfig(seed=2, n=5), 3)
        path = str(tmp_path / "reports" / "greedy.pkl.gz")
        save_to_pickle(report, path)
        assert load_from_pickle(path).summary() == report.summary()
        with pytest.raises(FileNotFoundError):
            load_from_pickle(str(tmp_path / "missing.pkl"))

    def test_save_errors_propagate(self, tmp_path):
        with pytest.raises(OSError):
            save_to_pickle(SuiteReport("GREEDY", 1, 0), str(tmp_path))

    def test_text_is_reproducible(self):
        cfg = GenConfig(seed=22, n=6, n_min=2, require_connected=True)
        first = run_ratio_suite(cfg, 5).to_text()
        assert first == run_ratio_suite(cfg, 5).to_text()
        assert first.startswith("suite RATIO seed 22 count 5\n")


class TestYamlConfigs:
    def test_mdt_gst_config(self):
        cfg = load_suite_config_from_yaml_file(str(CONFIGS / "mdt_gst_suite.yml"))
        assert cfg.which == "MDT_GST" and cfg.count == 200
        assert cfg.gen_config.edge_prob == Fraction(1, 2)
        assert cfg.gen_config.require_connected
        assert cfg.guards.max_roots == 64

    def test_greedy_config(self):
        cfg = load_suite_config_from_yaml_file(str(CONFIGS / "greedy_suite.yml"))
        assert cfg.gen_config.set_count == (1, 12)
        assert cfg.gen_config.edge_prob == Fraction(3, 10)

    def test_missing_section(self, tmp_path):
        path = tmp_path / "bad.yml"
        path.write_text("GENERATOR:\n  SEED: 1\n")
        with pytest.raises(KeyError):
            load_suite_config_from_yaml_file(str(path))

    def test_unknown_entry(self, tmp_path):
        path = tmp_path / "bad.yml"
        path.write_text("GENERATOR:\n  SEED: 1\n  COLOR: red\nSUITE:\n  WHICH: GREEDY\n")
        with pytest.raises(KeyError):
            load_suite_config_from_yaml_file(str(path))

    def test_run_suite_from_config(self):
        cfg = load_suite_config_from_yaml_file(str(CONFIGS / "mds_sc_suite.yml"))
        cfg.count = 5
        assert run_suite(cfg).passed

    def test_ratio_over_connected_corpus(self):
        cfg = load_suite_config_from_yaml_file(str(CONFIGS / "mdt_gst_suite.yml"))
        report = run_suite(SuiteConfig("RATIO", 8, cfg.gen_config, cfg.guards))
        assert report.passed, report.to_text()
        assert all("mdt" in record.ratios for record in report.records)


@pytest.mark.slow
@pytest.mark.parametrize(
    "name",
    [
        "mdt_gst_suite.yml",
        "gst_mdt_suite.yml",
        "dom_mds_suite.yml",
        "mds_sc_suite.yml",
        "greedy_suite.yml",
        "hp_exhaustive_suite.yml",
    ],
)
def test_acceptance_corpora(name):
    cfg = load_suite_config_from_yaml_file(str(CONFIGS / name))
    cfg.show_progress = False
    report = run_suite(cfg)
    assert report.passed, report.to_text()


@pytest.mark.slow
def test_acceptance_ratio_and_hp():
    base = load_suite_config_from_yaml_file(str(CONFIGS / "mds_sc_suite.yml"))
    assert run_suite(SuiteConfig("RATIO", base.count, base.gen_config)).passed
    hp = GenConfig(seed=20240506, n=7, n_min=1)
    assert run_suite(SuiteConfig("HP_MDP", 200, hp)).passed


def _corpus_texts(cfg: GenConfig, count: int):
    for i in range(count):
        yield serialize_instance(Instance("mdt", graph=gen_graph(cfg, i)))
        inst = gen_gst_instance(cfg, i)
        yield serialize_instance(Instance("gst", graph=inst.graph, groups=inst.groups))
        yield serialize_instance(Instance("sc", set_cover=gen_set_cover(cfg, i)))


def _assert_round_trips(cfg: GenConfig, count: int):
    for text in _corpus_texts(cfg, count):
        assert serialize_instance(parse_instance(text)) == text


def test_generated_instances_round_trip():
    cfg = load_suite_config_from_yaml_file(str(CONFIGS / "greedy_suite.yml")).gen_config
    _assert_round_trips(cfg, 10)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["mdt_gst_suite.yml", "gst_mdt_suite.yml", "greedy_suite.yml"])
def test_acceptance_corpora_round_trip(name):
    cfg = load_suite_config_from_yaml_file(str(CONFIGS / name))
    _assert_round_trips(cfg.gen_config, cfg.count)


@pytest.mark.slow
def test_acceptance_ratio_over_connected_corpus():
    cfg = load_suite_config_from_yaml_file(str(CONFIGS / "mdt_gst_suite.yml"))
    report = run_suite(SuiteConfig("RATIO", cfg.count, cfg.gen_config, cfg.guards))
    assert report.passed, report.to_text()
    assert all("mdt" in record.ratios for record in report.records)
