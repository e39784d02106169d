"""Corpus-wide theorem checks.

Every corpus instance ends up in exactly one bucket: pass, violation or
resource skip. Passes are further split into *nontrivial* ones, where the
theorem's hypotheses held and its conclusion was actually tested, and
vacuous ones.
"""

from __future__ import annotations

import json
import multiprocessing
import time
from collections import Counter
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from typing import Callable, NamedTuple, Optional

from ..chromatics import (
    DEFAULT_CHROMATIC_LIMIT,
    chromatic_at_least_mask,
    chromatic_number_mask,
    color_by_elimination,
    independence_number,
    max_clique_mask,
)
from ..errors import CertificateError, GraphError, InvariantViolation, ModelError, ResourceError, SizeError
from ..graph import Graph, degree_stats, encode_graph6, is_connected_mask, popcount
from ..minors import DEFAULT_MINOR_BUDGET, has_clique_minor, has_disjoint_clique_minors, mader_sufficient
from ..recognition import (
    DEFAULT_HOLE_BUDGET,
    EliminationOrder,
    bisimplicial_vertices,
    elimination_order_mask,
    find_even_hole,
    is_even_hole_free,
    is_quasi_line,
)
from ..splitting import (
    DEFAULT_SUBSET_LIMIT,
    find_st_split,
    is_st_graph,
    lemma_split,
    min_degree_split,
    subgraph_min_degree,
)
from .corpus import CorpusSpec
from .lemma_sampler import LemmaInstance, LemmaSource
from .report import TheoremReport


@dataclass(frozen=True)
class Config:
    hole_budget: int = DEFAULT_HOLE_BUDGET
    minor_budget: int = DEFAULT_MINOR_BUDGET
    chromatic_limit: int = DEFAULT_CHROMATIC_LIMIT
    subset_limit: int = DEFAULT_SUBSET_LIMIT

    @classmethod
    def from_file(cls, path: str) -> "Config":
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise GraphError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def with_budget(self, budget: Optional[int]) -> "Config":
        if budget is None:
            return self
        return Config(budget, budget, self.chromatic_limit, self.subset_limit)

    def to_dict(self) -> dict:
        return asdict(self)


class Outcome(NamedTuple):
    status: str  # "pass" or "violation"
    nontrivial: bool
    detail: Optional[dict] = None


VACUOUS = Outcome("pass", False)
CHECKED = Outcome("pass", True)


def _violation(**detail) -> Outcome:
    return Outcome("violation", True, detail)


def _omega(g: Graph) -> int:
    return popcount(max_clique_mask(g.adj, g.full_mask))


def _chi(g: Graph, cfg: Config) -> int:
    if g.n > cfg.chromatic_limit:
        raise SizeError(f"n={g.n} exceeds the exact chromatic limit {cfg.chromatic_limit}")
    return chromatic_number_mask(g.adj, g.full_mask)[0]


def _chi_equals(g: Graph, k: int, cfg: Config) -> bool:
    if g.n > cfg.chromatic_limit:
        raise SizeError(f"n={g.n} exceeds the exact chromatic limit {cfg.chromatic_limit}")
    full = g.full_mask
    return chromatic_at_least_mask(g.adj, full, k) and not chromatic_at_least_mask(g.adj, full, k + 1)


# -- per-instance checks -----------------------------------------------------

def check_t13(g: Graph, params: dict, cfg: Config) -> Outcome:
    """Non-empty even-hole-free: bisimplicial vertex, chi <= 2 omega - 1, peeling colors within it."""
    if g.n == 0 or not is_even_hole_free(g, cfg.hole_budget):
        return VACUOUS
    problems = []
    omega = _omega(g)
    chi = _chi(g, cfg)
    bound = 2 * omega - 1
    if not bisimplicial_vertices(g):
        problems.append("no bisimplicial vertex")
    if chi > bound:
        problems.append(f"chi={chi} exceeds 2*omega-1={bound}")
    order = elimination_order_mask(g.adj, g.full_mask)
    used = None
    if order is None:
        problems.append("bisimplicial peeling got stuck")
    else:
        coloring = color_by_elimination(g, EliminationOrder(tuple(order)))
        coloring.validate(g)
        used = coloring.p
        if used > bound:
            problems.append(f"elimination coloring used {used} > {bound} colors")
    if problems:
        return _violation(problems=problems, omega=omega, chi=chi, elimination_colors=used)
    return CHECKED


def check_t15(g: Graph, params: dict, cfg: Config) -> Outcome:
    """(s,t)-graph with omega >= t has omega >= s + t - 1."""
    s, t = params["s"], params["t"]
    omega = _omega(g)
    # An (s,t)-graph has chi = s+t-1 >= omega, so only this window is live.
    if not t <= omega <= s + t - 1:
        return VACUOUS
    if not is_st_graph(g, s, t, cfg.subset_limit):
        return VACUOUS
    if omega < s + t - 1:
        return _violation(problem="(s,t)-graph with t <= omega < s+t-1", omega=omega)
    return CHECKED


def check_t16(g: Graph, params: dict, cfg: Config) -> Outcome:
    """min degree >= s + t + 1 gives disjoint parts of min degree >= s and >= t."""
    s, t = params["s"], params["t"]
    if g.n == 0 or degree_stats(g)[0] < s + t + 1:
        return VACUOUS
    found = min_degree_split(g, s, t, cfg.subset_limit)
    if found is None:
        return _violation(problem="no min-degree split", min_degree=degree_stats(g)[0])
    a, b = found
    if a & b or subgraph_min_degree(g, a) < s or subgraph_min_degree(g, b) < t:
        raise CertificateError(f"min-degree split failed validation: {sorted(a)}, {sorted(b)}")
    return CHECKED


def check_t17(g: Graph, params: dict, cfg: Config) -> Outcome:
    """Enough edges force a K_p minor."""
    p = params["p"]
    if not mader_sufficient(g, p):
        return VACUOUS
    model = has_clique_minor(g, p, cfg.minor_budget)
    if model is None:
        return _violation(problem=f"edge bound met but no K_{p} minor", e=g.e)
    model.validate(g)
    return CHECKED


def check_t21(g: Graph, params: dict, cfg: Config) -> Outcome:
    """Even-hole-free without a K_k minor is (2k-5)-colorable."""
    k = params["k"]
    if not is_even_hole_free(g, cfg.hole_budget):
        return VACUOUS
    if g.n >= k:
        model = has_clique_minor(g, k, cfg.minor_budget)
        if model is not None:
            model.validate(g)
            return VACUOUS
    chi = _chi(g, cfg)
    if chi > 2 * k - 5:
        return _violation(problem=f"chi={chi} exceeds 2k-5={2 * k - 5}", chi=chi)
    return CHECKED


def check_t23(g: Graph, params: dict, cfg: Config) -> Outcome:
    """Even-hole-free, omega < chi = s+t-1, s > chi/3: (s,t)-splittable."""
    s, t = params["s"], params["t"]
    chi = s + t - 1
    if 3 * s <= chi:
        return VACUOUS
    if _omega(g) >= chi or not _chi_equals(g, chi, cfg):
        return VACUOUS
    if not is_even_hole_free(g, cfg.hole_budget):
        return VACUOUS
    cert = find_st_split(g, s, t, cfg.subset_limit)
    if cert is None:
        return _violation(problem="no (s,t)-split", chi=chi)
    cert.validate(g)
    return CHECKED


def check_t24(g: Graph, params: dict, cfg: Config) -> Outcome:
    """omega < chi = s+t-1: a K_s ∪ K_t minor exists."""
    s, t = params["s"], params["t"]
    chi = s + t - 1
    if _omega(g) >= chi or not _chi_equals(g, chi, cfg):
        return VACUOUS
    model = has_disjoint_clique_minors(g, s, t, cfg.minor_budget)
    if model is None:
        return _violation(problem=f"no K_{s} ∪ K_{t} minor", chi=chi)
    model.validate(g)
    return CHECKED


def check_l22(item: LemmaInstance, params: dict, cfg: Config) -> Outcome:
    """The lemma's construction verifies on a sampled instance meeting its precondition."""
    try:
        cert = lemma_split(item.graph, item.data, cfg.chromatic_limit)
    except InvariantViolation as exc:
        return _violation(problem=str(exc), **item.describe())
    if cert is None:
        return _violation(problem="sampled instance does not meet the precondition", **item.describe())
    cert.validate(item.graph)
    return CHECKED


def _need_st(params: dict) -> None:
    s, t = params.get("s"), params.get("t")
    if s is None or t is None:
        raise GraphError("this theorem needs --s and --t")
    if not t >= s >= 2:
        raise GraphError(f"this theorem needs t >= s >= 2, got s={s}, t={t}")


def _need_positive_st(params: dict) -> None:
    s, t = params.get("s"), params.get("t")
    if s is None or t is None or s < 1 or t < 1:
        raise GraphError("this theorem needs positive --s and --t")


def _need_k(params: dict) -> None:
    k = params.get("k")
    # For k <= 3 the bound 2k-5 is below what K_k-minor-free graphs need.
    if k is None or k < 4:
        raise GraphError(f"this theorem needs --k >= 4, got {k}")


def _need_p(params: dict) -> None:
    p = params.get("p")
    if p is None or not 1 <= p <= 7:
        raise GraphError(f"this theorem needs 1 <= --p <= 7, got {p}")


def _need_nothing(params: dict) -> None:
    pass


THEOREMS: dict[str, tuple[Callable, Callable, tuple[str, ...]]] = {
    "T13": (check_t13, _need_nothing, ()),
    "T15": (check_t15, _need_st, ("s", "t")),
    "T16": (check_t16, _need_positive_st, ("s", "t")),
    "T17": (check_t17, _need_p, ("p",)),
    "T21": (check_t21, _need_k, ("k",)),
    "T23": (check_t23, _need_st, ("s", "t")),
    "T24": (check_t24, _need_st, ("s", "t")),
    "L22": (check_l22, _need_nothing, ()),
}


# -- running -------------------------------------------------------------------

def _label(item) -> dict:
    if isinstance(item, LemmaInstance):
        return {"graph6": encode_graph6(item.graph), **item.describe()}
    return {"graph6": encode_graph6(item)}


def _run_range(task) -> dict:
    theorem, params, source, cfg, start, stop = task
    check = THEOREMS[theorem][0]
    filtered: Counter = Counter()
    passes = nontrivial = 0
    violations: list[dict] = []
    skipped: list[dict] = []
    lines = source.lines() if isinstance(source, CorpusSpec) and source.source == "graph6" else None
    iterator = source.iter_raw(start, stop, lines) if lines is not None else source.iter_raw(start, stop)
    for index, item in iterator:
        try:
            if isinstance(source, CorpusSpec):
                rejected = source.admit(item, cfg.hole_budget)
                if rejected is not None:
                    filtered[rejected] += 1
                    continue
            outcome = check(item, params, cfg)
        except (ResourceError, SizeError) as exc:
            skipped.append({"index": index, **_label(item), "reason": str(exc)})
            continue
        except (CertificateError, ModelError) as exc:
            violations.append({"index": index, **_label(item), "detail": {"problem": f"invalid certificate: {exc}"}})
            continue
        if outcome.status == "pass":
            passes += 1
            nontrivial += outcome.nontrivial
        else:
            violations.append({"index": index, **_label(item), "detail": outcome.detail})
    return {
        "filtered": filtered,
        "passes": passes,
        "nontrivial": nontrivial,
        "violations": violations,
        "skipped": skipped,
    }


def _merge(parts: list[dict]) -> dict:
    total = {"filtered": Counter(), "passes": 0, "nontrivial": 0, "violations": [], "skipped": []}
    for part in parts:
        total["filtered"].update(part["filtered"])
        total["passes"] += part["passes"]
        total["nontrivial"] += part["nontrivial"]
        total["violations"].extend(part["violations"])
        total["skipped"].extend(part["skipped"])
    total["violations"].sort(key=lambda r: r["index"])
    total["skipped"].sort(key=lambda r: r["index"])
    return total


def run_verifier(
    theorem: str,
    source,
    params: Optional[dict] = None,
    config: Optional[Config] = None,
    seed: Optional[int] = None,
    jobs: int = 1,
) -> TheoremReport:
    """Check ``theorem`` on every instance of ``source`` (a CorpusSpec or LemmaSource)."""
    if theorem not in THEOREMS:
        raise GraphError(f"unknown theorem {theorem!r}; choose from {sorted(THEOREMS)}")
    check, validate_params, keys = THEOREMS[theorem]
    params = {k: v for k, v in (params or {}).items() if k in keys and v is not None}
    validate_params(params)
    if (theorem == "L22") != isinstance(source, LemmaSource):
        raise GraphError("L22 runs on a LemmaSource; every other theorem on a CorpusSpec")
    cfg = config or Config()
    raw = source.raw_size()
    started = time.perf_counter()
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    if jobs <= 1 or raw < 2:
        merged = _merge([_run_range((theorem, params, source, cfg, 0, raw))])
    else:
        pieces = max(jobs * 8, 1)
        step = -(-raw // pieces)
        tasks = [(theorem, params, source, cfg, lo, min(raw, lo + step)) for lo in range(0, raw, step)]
        with multiprocessing.get_context("fork").Pool(jobs) as pool:
            merged = _merge(pool.map(_run_range, tasks))
    elapsed = time.perf_counter() - started
    return TheoremReport(
        theorem=theorem,
        params=params,
        corpus=source.describe(),
        raw_size=raw,
        filtered_out=dict(merged["filtered"]),
        passes=merged["passes"],
        nontrivial=merged["nontrivial"],
        violations=merged["violations"],
        skipped=merged["skipped"],
        seed=seed if seed is not None else getattr(source, "seed", None),
        config=cfg.to_dict(),
        timing={"timestamp": stamp, "wall_time_s": round(elapsed, 3)},
    )


def verify_T13(corpus: CorpusSpec, **kw) -> TheoremReport:
    return run_verifier("T13", corpus, {}, **kw)


def verify_T15(corpus: CorpusSpec, s: int, t: int, **kw) -> TheoremReport:
    return run_verifier("T15", corpus, {"s": s, "t": t}, **kw)


def verify_T16(corpus: CorpusSpec, s: int, t: int, **kw) -> TheoremReport:
    return run_verifier("T16", corpus, {"s": s, "t": t}, **kw)


def verify_T17(corpus: CorpusSpec, p: int, **kw) -> TheoremReport:
    return run_verifier("T17", corpus, {"p": p}, **kw)


def verify_T21(corpus: CorpusSpec, k: int, **kw) -> TheoremReport:
    return run_verifier("T21", corpus, {"k": k}, **kw)


def verify_T23(corpus: CorpusSpec, s: int, t: int, **kw) -> TheoremReport:
    return run_verifier("T23", corpus, {"s": s, "t": t}, **kw)


def verify_T24_analogues(corpus: CorpusSpec, s: int, t: int, **kw) -> TheoremReport:
    return run_verifier("T24", corpus, {"s": s, "t": t}, **kw)


def verify_L22(samples: int, seed: int, max_n: int = 10, **kw) -> TheoremReport:
    return run_verifier("L22", LemmaSource(count=samples, seed=seed, max_n=max_n), {}, seed=seed, **kw)


# -- per-graph analysis ------------------------------------------------------------

def analyze(g: Graph, config: Optional[Config] = None) -> dict:
    """All structural invariants of one graph; fields that run out of budget are marked skipped."""
    cfg = config or Config()
    delta, big_delta, _ = degree_stats(g)
    record: dict = {"graph6": encode_graph6(g), "n": g.n, "e": g.e, "min_degree": delta, "max_degree": big_delta}

    def field_(name: str, fn: Callable) -> None:
        try:
            record[name] = fn()
        except (ResourceError, SizeError) as exc:
            record[name] = {"skipped": str(exc)}

    field_("alpha", lambda: independence_number(g)[0])
    field_("omega", lambda: _omega(g))
    field_("chi", lambda: _chi(g, cfg))
    hole = None

    def ehf():
        nonlocal hole
        hole = find_even_hole(g, cfg.hole_budget)
        return hole is None

    field_("even_hole_free", ehf)
    record["even_hole"] = hole.to_json() if hole is not None else None
    record["quasi_line"] = is_quasi_line(g)
    record["bisimplicial_vertices"] = bisimplicial_vertices(g)
    order = elimination_order_mask(g.adj, g.full_mask)
    record["elimination_order"] = order
    record["connected"] = is_connected_mask(g.adj, g.full_mask)
    return record


__all__ = [
    "Config",
    "THEOREMS",
    "analyze",
    "run_verifier",
    "verify_L22",
    "verify_T13",
    "verify_T15",
    "verify_T16",
    "verify_T17",
    "verify_T21",
    "verify_T23",
    "verify_T24_analogues",
]
