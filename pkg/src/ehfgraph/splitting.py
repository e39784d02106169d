"""Splitting a graph into parts of prescribed chromatic number or minimum degree."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .chromatics import (
    DEFAULT_CHROMATIC_LIMIT,
    Coloring,
    chromatic_at_least_mask,
    chromatic_number_mask,
    max_clique_mask,
)
from .errors import CertificateError, GraphError, InvariantViolation, SizeError
from .graph import Graph, induced_masks, is_connected_mask, iter_bits, popcount, set_of

LEMMA = "lemma-construction"
EXHAUSTIVE = "exhaustive-search"

# Exhaustive subset searches touch 2^n subsets; keep them desk-sized.
DEFAULT_SUBSET_LIMIT = 16


@dataclass(frozen=True)
class SplitCertificate:
    S: frozenset[int]
    T: frozenset[int]
    s_target: int
    t_target: int
    achieved: tuple[bool, bool]
    provenance: str

    def validate(self, g: Graph) -> None:
        if self.S & self.T:
            raise CertificateError("S and T overlap")
        if self.S | self.T != frozenset(range(g.n)):
            raise CertificateError("S and T do not cover V(G)")
        if not all(self.achieved):
            raise CertificateError("split does not reach its chromatic targets")

    def to_json(self) -> dict:
        return {
            "S": sorted(self.S),
            "T": sorted(self.T),
            "s_target": self.s_target,
            "t_target": self.t_target,
            "achieved": list(self.achieved),
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class LemmaSplitInput:
    """A vertex ``x``, an optimal coloring of G[N(x)] and the split index ``r``."""

    x: int
    neighborhood_coloring: Coloring
    r: int


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _certify(g: Graph, s_mask: int, s: int, t: int, provenance: str) -> SplitCertificate:
    # Exact chromatic numbers, independent of the decision procedure that found the split.
    t_mask = g.full_mask & ~s_mask
    chi_s, _ = chromatic_number_mask(g.adj, s_mask)
    chi_t, _ = chromatic_number_mask(g.adj, t_mask)
    return SplitCertificate(set_of(s_mask), set_of(t_mask), s, t, (chi_s >= s, chi_t >= t), provenance)


def _check_size(g: Graph, limit: int) -> None:
    if g.n > limit:
        raise SizeError(f"exhaustive split search is limited to {limit} vertices, got n={g.n}")


def lemma_split(g: Graph, data: LemmaSplitInput, limit: int = DEFAULT_CHROMATIC_LIMIT) -> Optional[SplitCertificate]:
    """Split off {x} ∪ V_1 ∪ ... ∪ V_{r-1} when the small classes are few enough.

    With p = chi(G[N(x)]) and classes sorted by size, if
    ``|V_r ∪ ... ∪ V_p| <= chi(G) - r - 1`` then S = {x} ∪ W has chromatic
    number r and T = V \\ S has chromatic number at least chi(G) + 1 - r.
    Returns None exactly when that inequality fails. A split that does not
    verify raises InvariantViolation.
    """
    _check_size(g, limit)
    x, coloring, r = data.x, data.neighborhood_coloring, data.r
    g._check_vertex(x)
    nx = g.adj[x]
    try:
        coloring.validate(g, set_of(nx))
    except CertificateError as exc:
        raise GraphError(f"invalid neighborhood coloring: {exc}") from exc
    p = coloring.p
    chi_nx, _ = chromatic_number_mask(g.adj, nx)
    if p != chi_nx:
        raise GraphError(f"neighborhood coloring uses {p} colors but chi(G[N(x)]) = {chi_nx}")
    if p < 2:
        raise GraphError("the neighborhood of x must have chromatic number at least 2")
    if not 2 <= r <= p:
        raise GraphError(f"r must satisfy 2 <= r <= p = {p}, got {r}")

    chi, _ = chromatic_number_mask(g.adj, g.full_mask)
    tail = sum(len(c) for c in coloring.classes[r - 1:])
    if tail > chi - r - 1:
        return None
    if p > chi - 2:
        raise InvariantViolation(f"p = {p} exceeds chi(G) - 2 = {chi - 2} although the size condition holds")

    w = _mask(v for c in coloring.classes[: r - 1] for v in c)
    s_mask = w | 1 << x
    cert = _certify(g, s_mask, r, chi + 1 - r, LEMMA)
    if not all(cert.achieved):
        raise InvariantViolation(
            f"lemma split failed to verify: x={x}, r={r}, S={sorted(cert.S)}, achieved={cert.achieved}"
        )
    return cert


def lemma_precondition_holds(coloring: Coloring, chi: int, r: int) -> bool:
    """``|V_r ∪ ... ∪ V_p| <= chi - r - 1``."""
    return sum(len(c) for c in coloring.classes[r - 1:]) <= chi - r - 1


def find_st_split(g: Graph, s: int, t: int, limit: int = DEFAULT_SUBSET_LIMIT) -> Optional[SplitCertificate]:
    """Partition V into S, T with chi(G[S]) >= s and chi(G[T]) >= t, if possible."""
    if s < 1 or t < 1:
        raise GraphError(f"s and t must be positive, got s={s}, t={t}")
    _check_size(g, limit)
    n, adj, full = g.n, g.adj, g.full_mask
    if n < s + t:
        return None
    memo: dict[tuple[int, int], bool] = {}

    def at_least(mask: int, k: int) -> bool:
        key = (mask, k)
        hit = memo.get(key)
        if hit is None:
            hit = memo[key] = chromatic_at_least_mask(adj, mask, k)
        return hit

    # For s == t, (S, T) and (T, S) are interchangeable: keep the top vertex in T.
    top = 1 << (n - 1) if s == t else 0
    for s_mask in range(1, full):
        if s_mask & top:
            continue
        size = popcount(s_mask)
        if size < s or n - size < t:
            continue
        t_mask = full & ~s_mask
        if at_least(s_mask, s) and at_least(t_mask, t):
            cert = _certify(g, s_mask, s, t, EXHAUSTIVE)
            if not all(cert.achieved):
                raise InvariantViolation(f"decision procedure and exact solver disagree on {cert}")
            return cert
    return None


def is_st_splittable(g: Graph, s: int, t: int, limit: int = DEFAULT_SUBSET_LIMIT) -> bool:
    return find_st_split(g, s, t, limit) is not None


def find_disjoint_chromatic_pair(g: Graph, s: int, t: int, limit: int = DEFAULT_SUBSET_LIMIT) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """Disjoint A, B (not necessarily covering V) with chi(G[A]) >= s, chi(G[B]) >= t.

    Candidates A are scanned by increasing size. For a fixed A the best
    partner is B = V \\ A, since chromatic number is monotone under taking
    induced subgraphs; B is then shrunk to a vertex-minimal subset so the
    returned pair is as small as the scan allows.
    """
    if s < 1 or t < 1:
        raise GraphError(f"s and t must be positive, got s={s}, t={t}")
    _check_size(g, limit)
    n, adj, full = g.n, g.adj, g.full_mask
    memo: dict[tuple[int, int], bool] = {}

    def at_least(mask: int, k: int) -> bool:
        key = (mask, k)
        hit = memo.get(key)
        if hit is None:
            hit = memo[key] = chromatic_at_least_mask(adj, mask, k)
        return hit

    by_size = sorted(range(1, full + 1), key=lambda m: (popcount(m), m))
    for a_mask in by_size:
        if popcount(a_mask) < s or n - popcount(a_mask) < t:
            continue
        rest = full & ~a_mask
        if at_least(a_mask, s) and at_least(rest, t):
            b_mask = rest
            for v in iter_bits(rest):
                smaller = b_mask & ~(1 << v)
                if at_least(smaller, t):
                    b_mask = smaller
            return set_of(a_mask), set_of(b_mask)
    return None


def is_st_graph(g: Graph, s: int, t: int, limit: int = DEFAULT_SUBSET_LIMIT) -> bool:
    """Connected, chi = s + t - 1, and no disjoint subgraphs of chromatic number s and t."""
    if s < 1 or t < 1:
        raise GraphError(f"s and t must be positive, got s={s}, t={t}")
    _check_size(g, limit)
    if not is_connected_mask(g.adj, g.full_mask):
        return False
    chi, _ = chromatic_number_mask(g.adj, g.full_mask)
    if chi != s + t - 1:
        return False
    return find_disjoint_chromatic_pair(g, s, t, limit) is None


def clique_forces_st(g: Graph, s: int, t: int, limit: int = DEFAULT_SUBSET_LIMIT) -> bool:
    """Instance check of: an (s,t)-graph with omega >= t has omega >= s + t - 1.

    True means consistent; False would be a counterexample.
    """
    omega = popcount(max_clique_mask(g.adj, g.full_mask))
    if not t <= omega < s + t - 1:
        return True
    return not is_st_graph(g, s, t, limit)


def _core(adj, mask: int, k: int) -> int:
    """Largest subset of ``mask`` inducing minimum degree >= k (the k-core)."""
    changed = True
    while changed and mask:
        changed = False
        for v in iter_bits(mask):
            if popcount(adj[v] & mask) < k:
                mask &= ~(1 << v)
                changed = True
    return mask


def min_degree_split(g: Graph, s: int, t: int, limit: int = DEFAULT_SUBSET_LIMIT) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """Disjoint nonempty A, B with min degree of G[A] >= s and of G[B] >= t.

    B runs over subsets in increasing mask order; for each B inducing minimum
    degree >= t, the s-core of G - B is the largest possible A, so the search
    is exhaustive.
    """
    if s < 1 or t < 1:
        raise GraphError(f"s and t must be positive, got s={s}, t={t}")
    _check_size(g, limit)
    adj, full = g.adj, g.full_mask
    if g.n < s + t + 2:
        return None
    # Every valid B lies inside the t-core, every valid A inside the s-core.
    t_core = _core(adj, full, t)
    if not t_core or not _core(adj, full, s):
        return None
    sub = 0
    while True:
        sub = (sub - t_core) & t_core
        if not sub:
            return None
        if popcount(sub) <= t:
            continue
        if all(popcount(adj[v] & sub) >= t for v in iter_bits(sub)):
            a_mask = _core(adj, full & ~sub, s)
            if a_mask:
                return set_of(a_mask), set_of(sub)


def subgraph_min_degree(g: Graph, vertices) -> int:
    m = g._check_mask(vertices)
    rows = induced_masks(g.adj, m)
    return min((popcount(r) for r in rows), default=0)
