"""Exact clique, independence and chromatic numbers for desk-scale graphs.

All kernels work on ``(adj, mask)`` pairs, i.e. on the subgraph induced by
``mask`` without relabeling, so splitting searches can query subsets
directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import CertificateError, SizeError
from .graph import Graph, iter_bits, popcount, set_of
from .recognition import EliminationOrder

DEFAULT_CHROMATIC_LIMIT = 16


@dataclass(frozen=True)
class Coloring:
    """Color classes V_1..V_p, largest first (ties broken by least vertex)."""

    classes: tuple[frozenset[int], ...]

    @classmethod
    def from_classes(cls, classes: Iterable[Iterable[int]]) -> "Coloring":
        sets = [frozenset(c) for c in classes]
        if any(not c for c in sets):
            raise CertificateError("color classes must be nonempty")
        sets.sort(key=lambda c: (-len(c), min(c)))
        return cls(tuple(sets))

    @property
    def p(self) -> int:
        return len(self.classes)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset().union(*self.classes)

    def color_of(self) -> dict[int, int]:
        return {v: i for i, c in enumerate(self.classes) for v in c}

    def validate(self, g: Graph, vertices: Optional[Iterable[int]] = None) -> None:
        """Check properness, disjointness, coverage and the size ordering."""
        seen: set[int] = set()
        for i, c in enumerate(self.classes):
            if not c:
                raise CertificateError(f"class {i} is empty")
            if seen & c:
                raise CertificateError(f"class {i} overlaps an earlier class")
            seen |= c
            m = 0
            for v in c:
                g._check_vertex(v)
                m |= 1 << v
            for v in c:
                if g.adj[v] & m:
                    raise CertificateError(f"class {i} is not independent at vertex {v}")
        expected = set(range(g.n)) if vertices is None else set(vertices)
        if seen != expected:
            raise CertificateError("coloring does not cover exactly the requested vertices")
        sizes = [len(c) for c in self.classes]
        if sizes != sorted(sizes, reverse=True):
            raise CertificateError("classes are not sorted by descending size")

    def to_json(self) -> list[list[int]]:
        return [sorted(c) for c in self.classes]


# -- cliques ---------------------------------------------------------------

def max_clique_mask(adj: tuple[int, ...], mask: int, target: Optional[int] = None) -> int:
    """Maximum clique of G[mask] as a mask; stops early once ``target`` is reached."""
    best = 0
    best_size = 0

    def expand(clique: int, size: int, cand: int) -> bool:
        nonlocal best, best_size
        if size > best_size:
            best, best_size = clique, size
            if target is not None and size >= target:
                return True
        while cand:
            if size + popcount(cand) <= best_size:
                return False
            v = cand & -cand
            cand ^= v
            if expand(clique | v, size + 1, cand & adj[v.bit_length() - 1]):
                return True
        return False

    expand(0, 0, mask)
    return best


def has_clique_of_size(adj: tuple[int, ...], mask: int, k: int) -> bool:
    if k <= 0:
        return True
    return popcount(max_clique_mask(adj, mask, target=k)) >= k


def clique_number(g: Graph) -> tuple[int, frozenset[int]]:
    """Return (omega, a maximum clique)."""
    m = max_clique_mask(g.adj, g.full_mask)
    return popcount(m), set_of(m)


def independence_number(g: Graph) -> tuple[int, frozenset[int]]:
    """Return (alpha, a maximum independent set)."""
    full = g.full_mask
    co = tuple(full & ~a & ~(1 << v) for v, a in enumerate(g.adj))
    m = max_clique_mask(co, full)
    return popcount(m), set_of(m)


# -- coloring ----------------------------------------------------------------

def greedy_dsatur(adj: tuple[int, ...], mask: int) -> list[int]:
    """DSATUR heuristic; returns class masks."""
    classes: list[int] = []
    uncolored = mask
    while uncolored:
        best_v, best_key = -1, None
        for v in iter_bits(uncolored):
            sat = 0
            for c in classes:
                if adj[v] & c:
                    sat += 1
            key = (sat, popcount(adj[v] & uncolored))
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        v = best_v
        for i, c in enumerate(classes):
            if not adj[v] & c:
                classes[i] = c | 1 << v
                break
        else:
            classes.append(1 << v)
        uncolored &= ~(1 << v)
    return classes


def colorable_mask(adj: tuple[int, ...], mask: int, k: int) -> Optional[list[int]]:
    """Proper coloring of G[mask] with at most ``k`` colors, or None.

    Backtracking in DSATUR order; a vertex may open at most one new color,
    which removes color-permutation symmetry.
    """
    if not mask:
        return []
    if k <= 0:
        return None
    classes: list[int] = []

    def solve(uncolored: int) -> bool:
        if not uncolored:
            return True
        # Most saturated vertex; ties by most uncolored neighbors, then least index.
        best_v, best_sat, best_deg, best_free = -1, -1, -1, 0
        nc = len(classes)
        for v in iter_bits(uncolored):
            av = adj[v]
            free = 0
            sat = 0
            for i in range(nc):
                if av & classes[i]:
                    sat += 1
                else:
                    free |= 1 << i
            if sat > best_sat or (sat == best_sat and popcount(av & uncolored) > best_deg):
                best_v, best_sat, best_free = v, sat, free
                best_deg = popcount(av & uncolored)
        if best_sat == k:
            return False
        v = best_v
        rest = uncolored & ~(1 << v)
        for i in iter_bits(best_free):
            classes[i] |= 1 << v
            if solve(rest):
                return True
            classes[i] &= ~(1 << v)
        if nc < k:
            classes.append(1 << v)
            if solve(rest):
                return True
            classes.pop()
        return False

    return list(classes) if solve(mask) else None


def chromatic_number_mask(adj: tuple[int, ...], mask: int) -> tuple[int, list[int]]:
    if not mask:
        return 0, []
    lower = popcount(max_clique_mask(adj, mask))
    best = greedy_dsatur(adj, mask)
    for k in range(lower, len(best)):
        found = colorable_mask(adj, mask, k)
        if found is not None:
            return k, found
    return len(best), best


def chromatic_at_least_mask(adj: tuple[int, ...], mask: int, k: int) -> bool:
    """Decision form: is chi(G[mask]) >= k?"""
    if k <= 0:
        return True
    if k == 1:
        return mask != 0
    if k == 2:
        return any(adj[v] & mask for v in iter_bits(mask))
    if popcount(mask) < k:
        return False
    if has_clique_of_size(adj, mask, k):
        return True
    if len(greedy_dsatur(adj, mask)) < k:
        return False
    return colorable_mask(adj, mask, k - 1) is None


def _check_limit(g: Graph, limit: int) -> None:
    if g.n > limit:
        raise SizeError(f"exact chromatic solver is limited to {limit} vertices, got n={g.n}")


def chromatic_number(g: Graph, limit: int = DEFAULT_CHROMATIC_LIMIT) -> tuple[int, Coloring]:
    """Return (chi, an optimal coloring)."""
    _check_limit(g, limit)
    chi, classes = chromatic_number_mask(g.adj, g.full_mask)
    return chi, Coloring.from_classes(set_of(c) for c in classes)


def chromatic_lower_bound_at_least(g: Graph, k: int, limit: int = DEFAULT_CHROMATIC_LIMIT) -> bool:
    """True iff ``g`` has no proper (k-1)-coloring."""
    _check_limit(g, limit)
    return chromatic_at_least_mask(g.adj, g.full_mask, k)


def color_by_elimination(g: Graph, order: EliminationOrder) -> Coloring:
    """Greedy smallest-color coloring in reverse elimination order.

    Each vertex sees at most 2(omega-1) already-colored neighbors, since its
    later neighbors are covered by two cliques; hence at most 2*omega - 1
    colors.
    """
    if not isinstance(order, EliminationOrder):
        order = EliminationOrder(tuple(order))
    order.validate(g)
    color = [-1] * g.n
    classes: list[int] = []
    for v in reversed(order.order):
        used = 0
        for u in iter_bits(g.adj[v]):
            if color[u] >= 0:
                used |= 1 << color[u]
        c = (~used & (used + 1)).bit_length() - 1
        color[v] = c
        if c == len(classes):
            classes.append(0)
        classes[c] |= 1 << v
    return Coloring.from_classes(set_of(c) for c in classes)

