"""Exit criteria, run at full scale.

Each test prints one ``CRITERION n PASS|FAIL`` line (also repeated in the
pytest terminal summary). Expect roughly a quarter of an hour on one core.
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager

import pytest

import oracles
from acceptance_log import LINES
from ehfgraph.chromatics import chromatic_number
from ehfgraph.harness.corpus import CorpusSpec, enumerate_labeled, random_graph
from ehfgraph.harness.report import canonical_json
from ehfgraph.harness.verify import (
    verify_L22,
    verify_T13,
    verify_T17,
    verify_T23,
    verify_T24_analogues,
)
from ehfgraph.minors import has_clique_minor
from ehfgraph.recognition import bisimplicial_witness, find_even_hole

pytestmark = pytest.mark.acceptance

SEED = 1
ORACLE_SAMPLE = 100_000
MINOR_SAMPLE_N7 = 5_000

# Canonical report text per run name, filled as the criteria execute.
FIRST_RUN: dict[str, str] = {}


@contextmanager
def criterion(number: int, title: str):
    info: dict = {}
    started = time.perf_counter()
    try:
        yield info
    except BaseException as exc:
        line = f"CRITERION {number} FAIL  {title}: {type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        LINES.append(line)
        print(line)
        raise
    line = f"CRITERION {number} PASS  {title}: {info.get('detail', '')} [{time.perf_counter() - started:.0f}s]"
    LINES.append(line)
    print(line)


def _check_clean(report):
    assert not report.violations, report.violations[:5]
    assert not report.skipped, report.skipped[:5]
    assert report.passes == report.corpus_size


# -- the runs --------------------------------------------------------------------

def run_t13():
    return {"T13": verify_T13(CorpusSpec(max_n=7), seed=SEED)}


def run_l22():
    return {"L22": verify_L22(10_000, seed=SEED, max_n=10)}


def run_t23():
    spec = CorpusSpec(max_n=7, connected_only=True, ehf_only=True)
    return {f"T23-{s}{t}": verify_T23(spec, s, t, seed=SEED) for s, t in [(2, 2), (2, 3)]}


def run_t24():
    spec = CorpusSpec(max_n=7)
    return {f"T24-{s}{t}": verify_T24_analogues(spec, s, t, seed=SEED) for s, t in [(2, 2), (2, 3)]}


def run_t17():
    builtin = CorpusSpec(max_n=7)
    sample = CorpusSpec(source="random", count=100_000, seed=SEED, min_n=1, max_n=9)
    out = {}
    for p in (3, 4, 5, 6):
        out[f"T17-p{p}-builtin"] = verify_T17(builtin, p, seed=SEED)
        out[f"T17-p{p}-random"] = verify_T17(sample, p, seed=SEED)
    return out


def run_oracles() -> dict:
    """Search-versus-brute-force agreement; returns counts and every disagreement."""
    hole = {"instances": 0, "present": 0, "mismatches": []}
    bisimp = {"instances": 0, "present": 0, "mismatches": []}
    for i in range(ORACLE_SAMPLE):
        g = random_graph(SEED, i, 1, 8)
        cert = find_even_hole(g)
        expected = oracles.has_even_hole(g.n, g.adj)
        hole["instances"] += 1
        hole["present"] += expected
        if cert is not None:
            cert.validate(g)
        if (cert is not None) != expected:
            hole["mismatches"].append(i)
        for v in range(g.n):
            w = bisimplicial_witness(g, v)
            expected = oracles.two_clique_cover(g.adj, v)
            bisimp["instances"] += 1
            bisimp["present"] += expected
            if w is not None:
                w.validate(g)
            if (w is not None) != expected:
                bisimp["mismatches"].append([i, v])

    chi = {"instances": 0, "mismatches": []}
    for g in enumerate_labeled(6):
        value, coloring = chromatic_number(g)
        coloring.validate(g)
        chi["instances"] += 1
        if value != oracles.chromatic_number(g.n, g.adj):
            chi["mismatches"].append(repr(g))

    minor = {"instances": 0, "present": 0, "mismatches": []}

    def compare(g, label):
        for k in range(1, 6):
            model = has_clique_minor(g, k)
            expected = oracles.has_clique_minor(g.n, g.adj, k)
            minor["instances"] += 1
            minor["present"] += expected
            if model is not None:
                model.validate(g)
            if (model is not None) != expected:
                minor["mismatches"].append([label, k])

    for g in enumerate_labeled(6):
        compare(g, repr(g))
    for i in range(MINOR_SAMPLE_N7):
        compare(random_graph(SEED, i, 7, 7), f"n7-sample-{i}")
    return {"even_hole": hole, "bisimplicial": bisimp, "chromatic": chi, "clique_minor": minor}


RUNS = {1: run_t13, 2: run_l22, 3: run_t23, 4: run_t24, 5: run_t17, 6: run_oracles}


def _canonical(result) -> dict[str, str]:
    if isinstance(result, dict) and all(hasattr(r, "to_json") for r in result.values()):
        return {name: canonical_json(r) for name, r in result.items()}
    return {"oracles": json.dumps(result, sort_keys=True)}


def _remember(number, result):
    for name, text in _canonical(result).items():
        FIRST_RUN[f"{number}:{name}"] = text


# -- criteria --------------------------------------------------------------------------

def test_criterion_1_bisimplicial_and_coloring_bound_all_n_le_7():
    with criterion(1, "even-hole-free sweep over all labeled graphs n <= 7") as info:
        reports = run_t13()
        _remember(1, reports)
        rep = reports["T13"]
        _check_clean(rep)
        assert rep.raw_size == 2_131_019
        assert rep.nontrivial > 0
        assert rep.timing["wall_time_s"] <= 15 * 60
        info["detail"] = f"{rep.raw_size} graphs, {rep.nontrivial} even-hole-free checked, 0 violations, 0 skips"


def test_criterion_2_lemma_split_soundness():
    with criterion(2, "neighborhood-coloring split on 10^4 sampled instances, n <= 10") as info:
        reports = run_l22()
        _remember(2, reports)
        rep = reports["L22"]
        _check_clean(rep)
        assert rep.nontrivial == 10_000
        assert rep.timing["wall_time_s"] <= 5 * 60
        info["detail"] = f"{rep.nontrivial} instances verified with the exact solver, 0 failures"


def test_criterion_3_st_split_on_connected_even_hole_free():
    with criterion(3, "(s,t)-split for (2,2), (2,3) on connected even-hole-free n <= 7") as info:
        reports = run_t23()
        _remember(3, reports)
        for rep in reports.values():
            _check_clean(rep)
            assert rep.nontrivial > 0
        info["detail"] = ", ".join(f"{k}: {r.nontrivial} instances split" for k, r in reports.items())


def test_criterion_4_disjoint_clique_minors():
    with criterion(4, "K_s + K_t minors for (2,2), (2,3), omega < chi = s+t-1, n <= 7") as info:
        reports = run_t24()
        _remember(4, reports)
        for rep in reports.values():
            _check_clean(rep)
            assert rep.nontrivial > 0
        info["detail"] = ", ".join(f"{k}: {r.nontrivial} models found" for k, r in reports.items())


def test_criterion_5_edge_bound_forces_clique_minor():
    with criterion(5, "edge bound implies K_p minor, p = 3..6, all n <= 7 plus 10^5 sample n <= 9") as info:
        reports = run_t17()
        _remember(5, reports)
        for rep in reports.values():
            _check_clean(rep)
            assert rep.nontrivial > 0
        total = sum(r.nontrivial for r in reports.values())
        info["detail"] = f"{len(reports)} runs, {total} graphs met the bound and had the minor"


def test_criterion_6_oracle_equivalences():
    with criterion(6, "searches agree with brute-force oracles") as info:
        result = run_oracles()
        _remember(6, result)
        for name, part in result.items():
            assert part["mismatches"] == [], (name, part["mismatches"][:5])
        assert result["even_hole"]["instances"] == ORACLE_SAMPLE
        assert result["chromatic"]["instances"] == 33_867
        info["detail"] = "; ".join(
            f"{name}: {part['instances']} comparisons" for name, part in result.items()
        )


def test_criterion_7_reports_are_byte_identical_across_runs():
    with criterion(7, "second full run gives byte-identical reports (timing excluded)") as info:
        first = dict(FIRST_RUN)
        for number, run in RUNS.items():
            if not any(key.startswith(f"{number}:") for key in first):
                first.update({f"{number}:{k}": v for k, v in _canonical(run()).items()})
        second = {}
        for number, run in RUNS.items():
            second.update({f"{number}:{k}": v for k, v in _canonical(run()).items()})
        assert set(first) == set(second)
        differing = [k for k in first if first[k] != second[k]]
        assert differing == []
        info["detail"] = f"{len(first)} reports compared byte for byte"
