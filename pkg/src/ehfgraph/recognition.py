"""Holes, even holes, bisimplicial vertices and elimination orders."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import CertificateError, GraphError, ResourceError
from .graph import Graph, iter_bits, popcount, set_of

DEFAULT_HOLE_BUDGET = 10**8


@dataclass(frozen=True)
class HoleCertificate:
    """An induced cycle ``cycle[0] - cycle[1] - ... - cycle[-1] - cycle[0]``."""

    cycle: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.cycle)

    @property
    def parity(self) -> str:
        return "even" if len(self.cycle) % 2 == 0 else "odd"

    def validate(self, g: Graph) -> None:
        cyc = self.cycle
        k = len(cyc)
        if k < 4:
            raise CertificateError(f"a hole needs at least 4 vertices, got {k}")
        if len(set(cyc)) != k:
            raise CertificateError("hole repeats a vertex")
        for v in cyc:
            g._check_vertex(v)
        for i in range(k):
            for j in range(i + 1, k):
                consecutive = j == i + 1 or (i == 0 and j == k - 1)
                if g.has_edge(cyc[i], cyc[j]) != consecutive:
                    what = "missing cycle edge" if consecutive else "chord"
                    raise CertificateError(f"{what} between {cyc[i]} and {cyc[j]}")

    def to_json(self) -> dict:
        return {"cycle": list(self.cycle), "length": self.length, "parity": self.parity}


@dataclass(frozen=True)
class BisimplicialWitness:
    vertex: int
    clique_a: frozenset[int]
    clique_b: frozenset[int]

    def validate(self, g: Graph, within: Optional[frozenset[int]] = None) -> None:
        """Check the witness in ``g`` (or in ``g[within]`` when given)."""
        g._check_vertex(self.vertex)
        nbrs = set(iter_bits(g.adj[self.vertex]))
        if within is not None:
            nbrs &= within
        if set(self.clique_a) | set(self.clique_b) != nbrs:
            raise CertificateError(f"cliques do not cover N({self.vertex})")
        for clique in (self.clique_a, self.clique_b):
            members = sorted(clique)
            for i, u in enumerate(members):
                for w in members[i + 1:]:
                    if not g.has_edge(u, w):
                        raise CertificateError(f"{u} and {w} are non-adjacent inside a clique")

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "cliques": [sorted(self.clique_a), sorted(self.clique_b)]}


@dataclass(frozen=True)
class EliminationOrder:
    """Vertex order in which each vertex is bisimplicial among its successors."""

    order: tuple[int, ...]

    def validate(self, g: Graph) -> None:
        if sorted(self.order) != list(range(g.n)):
            raise CertificateError("elimination order is not a permutation of the vertices")
        remaining = g.full_mask
        for v in self.order:
            if split_neighborhood(g.adj, v, remaining) is None:
                raise CertificateError(f"vertex {v} is not bisimplicial at its step")
            remaining &= ~(1 << v)


# -- even holes --------------------------------------------------------------

def _hole_search(adj: tuple[int, ...], mask: int, want_even: bool, budget: int) -> Optional[tuple[int, ...]]:
    """Depth-first enumeration of induced cycles by chordless path extension.

    Each cycle is rooted at its least vertex ``r`` and uses only vertices
    above ``r``. ``blocked`` holds the path plus the neighborhoods of its
    interior vertices, so every extension keeps the path induced; a
    candidate adjacent to ``r`` closes a cycle instead of extending it.
    """
    steps = 0
    for r in iter_bits(mask):
        above = mask & ~((2 << r) - 1)
        nr = adj[r] & above
        if nr & (nr - 1) == 0:
            continue
        for first in iter_bits(nr):
            stack = [((r, first), (1 << r) | (1 << first))]
            while stack:
                path, blocked = stack.pop()
                last = path[-1]
                cand = adj[last] & above & ~blocked
                steps += 1
                if steps > budget:
                    raise ResourceError(f"hole search exceeded {budget} extension steps")
                for w in iter_bits(cand):
                    if nr >> w & 1:
                        # Closing at w > first sees each cycle in one direction only.
                        if len(path) >= 3 and w > first and (len(path) % 2 == 1) == want_even:
                            return path + (w,)
                        continue
                    stack.append((path + (w,), blocked | adj[last] | (1 << w)))
    return None


def find_hole(g: Graph, parity: str = "even", budget: int = DEFAULT_HOLE_BUDGET) -> Optional[HoleCertificate]:
    if parity not in ("even", "odd"):
        raise GraphError(f"parity must be 'even' or 'odd', got {parity!r}")
    cyc = _hole_search(g.adj, g.full_mask, parity == "even", budget)
    return None if cyc is None else HoleCertificate(cyc)


def find_even_hole(g: Graph, budget: int = DEFAULT_HOLE_BUDGET) -> Optional[HoleCertificate]:
    """Return an even hole of ``g``, or None if ``g`` is even-hole-free."""
    return find_hole(g, "even", budget)


def is_even_hole_free(g: Graph, budget: int = DEFAULT_HOLE_BUDGET) -> bool:
    return _hole_search(g.adj, g.full_mask, True, budget) is None


# -- bisimplicial vertices -----------------------------------------------------

def split_neighborhood(adj: tuple[int, ...], v: int, mask: int) -> Optional[tuple[int, int]]:
    """Two-color the complement of G[N(v) & mask]; the classes are cliques of G.

    Returns the class masks ``(a, b)`` or None if the complement has an odd
    cycle. BFS roots are taken in increasing index order and colored ``a``.
    """
    nbrs = adj[v] & mask
    a = b = 0
    rest = nbrs
    while rest:
        root = rest & -rest
        a |= root
        rest ^= root
        frontier, side = root, 0
        while frontier:
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= nbrs & ~adj[u] & ~(1 << u)
            clash = nxt & (a if side == 0 else b)
            if clash:
                return None
            nxt &= rest
            rest &= ~nxt
            side ^= 1
            if side:
                b |= nxt
            else:
                a |= nxt
            frontier = nxt
    return a, b


def bisimplicial_witness(g: Graph, v: int) -> Optional[BisimplicialWitness]:
    g._check_vertex(v)
    split = split_neighborhood(g.adj, v, g.full_mask)
    if split is None:
        return None
    return BisimplicialWitness(v, set_of(split[0]), set_of(split[1]))


def bisimplicial_vertices(g: Graph) -> list[int]:
    full = g.full_mask
    return [v for v in range(g.n) if split_neighborhood(g.adj, v, full) is not None]


def is_quasi_line(g: Graph) -> bool:
    full = g.full_mask
    return all(split_neighborhood(g.adj, v, full) is not None for v in range(g.n))


def elimination_order_mask(adj: tuple[int, ...], mask: int) -> Optional[list[int]]:
    order = []
    remaining = mask
    while remaining:
        for v in iter_bits(remaining):
            if split_neighborhood(adj, v, remaining) is not None:
                break
        else:
            return None
        order.append(v)
        remaining &= ~(1 << v)
    return order


def bisimplicial_elimination_order(g: Graph) -> Optional[EliminationOrder]:
    """Greedy peeling, always removing the least-index bisimplicial vertex.

    Every even-hole-free graph peels completely. The converse fails: C_6 peels.
    """
    order = elimination_order_mask(g.adj, g.full_mask)
    return None if order is None else EliminationOrder(tuple(order))
