from __future__ import annotations

import json

import pytest

from ehfgraph import generators as gen
from ehfgraph.errors import GraphError, SizeError
from ehfgraph.chromatics import chromatic_number
from ehfgraph.graph import Graph, encode_graph6
from ehfgraph.harness.corpus import CorpusSpec, edge_order, enumerate_labeled, graph_from_mask, labeled_count, random_graph
from ehfgraph.harness.lemma_sampler import LemmaSource, sample_instance
from ehfgraph.harness.report import SCHEMA_VERSION, TheoremReport, canonical_json, reports_to_csv
from ehfgraph.harness.verify import (
    Config,
    analyze,
    run_verifier,
    verify_L22,
    verify_T13,
    verify_T15,
    verify_T16,
    verify_T17,
    verify_T21,
    verify_T23,
    verify_T24_analogues,
)
from ehfgraph.splitting import lemma_precondition_holds


def corpus(*graphs, **filters):
    return CorpusSpec.from_graphs(graphs, **filters)


def assert_accounted(report):
    # Every admitted instance is a pass, a violation or a skip.
    assert report.passes + len(report.violations) + len(report.skipped) == report.corpus_size
    assert report.corpus_size + sum(report.filtered_out.values()) == report.raw_size


# -- enumeration -----------------------------------------------------------------

@pytest.mark.parametrize("max_n, total", [(1, 1), (2, 3), (3, 11), (4, 75)])
def test_enumeration_counts(max_n, total):
    graphs = list(enumerate_labeled(max_n))
    assert len(graphs) == total == labeled_count(max_n)
    assert len(set(graphs)) == total


def test_enumeration_order_and_cap():
    graphs = list(enumerate_labeled(3))
    assert [g.n for g in graphs] == [1, 2, 2] + [3] * 8
    assert graphs[2] == gen.complete(2)
    assert graphs[-1] == gen.complete(3)
    with pytest.raises(SizeError):
        list(enumerate_labeled(8))


def test_edge_mask_order_matches_graph6():
    assert edge_order(4) == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
    g = graph_from_mask(4, 0b010010)
    assert sorted(g.edges()) == [(0, 2), (1, 3)]
    assert encode_graph6(g) == "CQ"


def test_random_graphs_are_reproducible_per_index():
    assert random_graph(7, 12, 3, 9) == random_graph(7, 12, 3, 9)
    sizes = {random_graph(7, i, 3, 9).n for i in range(200)}
    assert sizes == set(range(3, 10))


def test_corpus_spec_validation(tmp_path):
    with pytest.raises(SizeError):
        CorpusSpec(max_n=8)
    with pytest.raises(GraphError):
        CorpusSpec(source="sparse6")
    with pytest.raises(GraphError):
        CorpusSpec(source="graph6")
    path = tmp_path / "c.g6"
    path.write_text("# two graphs\nD~{\n\nE~~w\n", encoding="ascii")
    spec = CorpusSpec(source="graph6", path=str(path))
    assert spec.raw_size() == 2
    assert [g.n for _, g in spec.iter_raw()] == [5, 6]


def test_filters_are_counted():
    rep = verify_T13(corpus(gen.cycle(6), gen.path(3), gen.empty(2), gen.complete(4),
                            connected_only=True, ehf_only=True, omega_range=(1, 3)))
    assert rep.filtered_out == {"connected_only": 1, "ehf_only": 1, "omega_range": 1}
    assert rep.passes == 1
    assert_accounted(rep)
    rep = verify_T13(corpus(gen.cycle(5), gen.complete(3), gen.path(4), chi_range=(3, 3)))
    assert rep.filtered_out == {"chi_range": 1}


# -- theorem checks ----------------------------------------------------------------

def test_t13_examples():
    rep = verify_T13(corpus(gen.cycle(6)))
    assert (rep.passes, rep.nontrivial) == (1, 0)
    rep = verify_T13(corpus(gen.cycle(6), ehf_only=True))
    assert rep.filtered_out == {"ehf_only": 1} and rep.passes == 0
    rep = verify_T13(corpus(gen.complete(1)))
    assert (rep.passes, rep.nontrivial, rep.exit_code) == (1, 1, 0)


def test_t13_small_builtin_sweep():
    rep = verify_T13(CorpusSpec(max_n=5))
    assert rep.exit_code == 0 and not rep.violations and not rep.skipped
    assert rep.corpus_size == labeled_count(5)
    assert_accounted(rep)


def test_t21_examples():
    rep = verify_T21(CorpusSpec(max_n=6), 7)
    assert rep.exit_code == 0
    rep = verify_T21(corpus(gen.complete(6)), 7)
    assert (rep.passes, rep.nontrivial) == (1, 1)
    # K_4-minor-free even-hole-free graphs are 3-colorable; C_5 needs all 3.
    rep = verify_T21(CorpusSpec(max_n=6), 4)
    assert rep.exit_code == 0 and rep.nontrivial > 0
    with pytest.raises(GraphError):
        verify_T21(corpus(gen.complete(3)), 3)


def test_t23_examples():
    rep = verify_T23(corpus(gen.cycle(5)), 2, 2)
    assert (rep.passes, rep.nontrivial) == (1, 1)
    rep = verify_T23(CorpusSpec(max_n=6, connected_only=True, ehf_only=True), 2, 3)
    assert rep.exit_code == 0 and rep.nontrivial > 0
    with pytest.raises(GraphError):
        verify_T23(corpus(gen.cycle(5)), 1, 2)


def test_t24_examples():
    rep = verify_T24_analogues(corpus(gen.complete(9)), 4, 6)
    assert (rep.passes, rep.nontrivial) == (1, 0)
    rep = verify_T24_analogues(CorpusSpec(max_n=6), 2, 2)
    assert rep.exit_code == 0 and rep.nontrivial > 0


def test_t24_literal_case_on_a_constructed_graph():
    # chi(C_5 join K_6) = 3 + 6 = 9 while omega = 2 + 6 = 8.
    c5 = gen.cycle(5)
    k6 = gen.complete(6)
    g = gen.disjoint_union(c5, k6)
    adj = [a | ((0b111111 << 5) if v < 5 else 0b11111) for v, a in enumerate(g.adj)]
    joined = Graph(11, adj)
    rep = verify_T24_analogues(corpus(joined), 4, 6)
    assert (rep.passes, rep.nontrivial) == (1, 1)


def test_t15_t16_t17_examples():
    assert verify_T15(corpus(gen.complete(3)), 2, 2).nontrivial == 1
    rep = verify_T16(corpus(gen.complete(5), gen.petersen(), gen.cycle(5)), 1, 1)
    assert (rep.passes, rep.nontrivial) == (3, 2)
    rep = verify_T17(CorpusSpec(source="random", count=300, seed=1, max_n=9), 4)
    assert rep.exit_code == 0 and rep.nontrivial > 0


def test_t15_t16_on_samples_with_seven_to_nine_vertices():
    for s, t in [(2, 2), (2, 3), (3, 3)]:
        rep = verify_T15(CorpusSpec(source="random", count=150, seed=4, min_n=7, max_n=8), s, t)
        assert rep.exit_code == 0
    for s, t in [(1, 1), (1, 2), (2, 2)]:
        rep = verify_T16(CorpusSpec(source="random", count=150, seed=4, min_n=7, max_n=9), s, t)
        assert rep.exit_code == 0 and rep.nontrivial > 0


def test_lemma_sampler_meets_precondition():
    for i in range(30):
        inst = sample_instance(3, i)
        chi = chromatic_number(inst.graph)[0]
        g, x = inst.graph, inst.data.x
        inst.data.neighborhood_coloring.validate(g, [v for v in range(g.n) if g.adj[x] >> v & 1])
        assert lemma_precondition_holds(inst.data.neighborhood_coloring, chi, inst.data.r)
    rep = verify_L22(200, seed=3)
    assert (rep.passes, rep.nontrivial, rep.exit_code) == (200, 200, 0)
    assert rep.seed == 3


def test_parameter_validation():
    with pytest.raises(GraphError):
        run_verifier("T99", CorpusSpec(max_n=3))
    with pytest.raises(GraphError):
        run_verifier("T23", CorpusSpec(max_n=3), {"s": 2})
    with pytest.raises(GraphError):
        run_verifier("T17", CorpusSpec(max_n=3), {"p": 8})
    with pytest.raises(GraphError):
        run_verifier("L22", CorpusSpec(max_n=3))
    with pytest.raises(GraphError):
        run_verifier("T13", LemmaSource(5, 0))


# -- resource skips -----------------------------------------------------------------

def test_budget_exhaustion_becomes_a_listed_skip():
    rep = verify_T13(corpus(gen.petersen(), gen.complete(2)), config=Config(hole_budget=2))
    assert rep.exit_code == 2
    assert [s["index"] for s in rep.skipped] == [0]
    assert rep.passes == 1
    assert_accounted(rep)


def test_oversized_graph_is_skipped_not_passed():
    rep = verify_T24_analogues(corpus(gen.cycle(5)), 2, 2, config=Config(chromatic_limit=4))
    assert rep.skipped and rep.passes == 0


# -- reports -------------------------------------------------------------------------

def test_report_schema_and_csv():
    rep = verify_T23(corpus(gen.cycle(5), gen.complete(3)), 2, 2, seed=9)
    data = json.loads(rep.to_json())
    assert data["schema"] == SCHEMA_VERSION
    assert data["theorem"] == "T23" and data["params"] == {"s": 2, "t": 2}
    assert data["corpus"]["size"] == 2 and data["instances_checked"] == 2
    assert data["nontrivial"] == 1 and data["vacuous"] == 1
    assert data["seed"] == 9
    assert set(data["timing"]) == {"timestamp", "wall_time_s"}
    assert "timing" not in json.loads(canonical_json(rep))
    lines = reports_to_csv([rep]).splitlines()
    assert lines[0].startswith("theorem,params,corpus")
    assert lines[1].startswith("T23,s=2;t=2,graph6,2,2,2,1,0,0,9,")


def test_violation_sets_failing_exit_code():
    rep = TheoremReport("T13", {}, {}, 1, {}, 0, 0, [{"index": 0}], [{"index": 1}], None, {})
    assert rep.exit_code == 1
    assert rep.summary_line().startswith("FAIL")


def test_reports_are_deterministic():
    spec = CorpusSpec(source="random", count=400, seed=5, max_n=8)
    a = verify_T17(spec, 4, seed=5)
    b = verify_T17(spec, 4, seed=5)
    assert canonical_json(a) == canonical_json(b)


@pytest.mark.parametrize("theorem, params", [("T13", {}), ("T24", {"s": 2, "t": 3}), ("T17", {"p": 5})])
def test_parallel_matches_serial(theorem, params):
    spec = CorpusSpec(max_n=5)
    serial = run_verifier(theorem, spec, params, jobs=1)
    parallel = run_verifier(theorem, spec, params, jobs=2)
    assert canonical_json(serial) == canonical_json(parallel)


def test_parallel_lists_skips_in_index_order():
    spec = CorpusSpec(source="random", count=120, seed=2, min_n=6, max_n=8)
    cfg = Config(hole_budget=3)
    serial = verify_T13(spec, config=cfg)
    parallel = verify_T13(spec, config=cfg, jobs=2)
    assert serial.skipped
    assert canonical_json(serial) == canonical_json(parallel)


# -- analyze --------------------------------------------------------------------------

@pytest.mark.parametrize(
    "g, expected",
    [
        (gen.petersen(), (10, 15, 3, 3, 4, 2, 3, False, False)),
        (gen.complete(5), (5, 10, 4, 4, 1, 5, 5, True, True)),
        (gen.complete(1), (1, 0, 0, 0, 1, 1, 1, True, True)),
    ],
)
def test_analyze_records(g, expected):
    r = analyze(g)
    keys = ("n", "e", "min_degree", "max_degree", "alpha", "omega", "chi", "even_hole_free", "quasi_line")
    assert tuple(r[k] for k in keys) == expected
    assert (r["even_hole"] is None) == r["even_hole_free"]


def test_analyze_marks_budget_fields_skipped():
    r = analyze(gen.petersen(), Config(hole_budget=2))
    assert "skipped" in r["even_hole_free"]
    assert r["chi"] == 3
