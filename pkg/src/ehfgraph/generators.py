"""Named small graphs used throughout the tests and examples."""

from __future__ import annotations

from itertools import combinations

from .graph import Graph, iter_bits


def empty(n: int) -> Graph:
    return Graph._trusted(n, (0,) * n, 0)


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph._trusted(n, tuple(full & ~(1 << v) for v in range(n)))


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    """K_{1,leaves} with center 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen() -> Graph:
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    adj: list[int] = []
    offset = 0
    for g in graphs:
        adj.extend(a << offset for a in g.adj)
        offset += g.n
    return Graph._trusted(offset, tuple(adj))


def line_graph(g: Graph) -> Graph:
    """Line graph; vertex i is the i-th edge of ``g.edges()``."""
    edges = g.edges()
    adj = [0] * len(edges)
    for (i, (a, b)), (j, (c, d)) in combinations(enumerate(edges), 2):
        if {a, b} & {c, d}:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return Graph._trusted(len(edges), tuple(adj))


def add_vertex(g: Graph, neighbors) -> Graph:
    """Return ``g`` plus a new vertex ``g.n`` adjacent to ``neighbors``."""
    m = 0
    for u in neighbors:
        g._check_vertex(u)
        m |= 1 << u
    adj = [a | (1 << g.n if m >> v & 1 else 0) for v, a in enumerate(g.adj)]
    adj.append(m)
    return Graph._trusted(g.n + 1, tuple(adj))


def relabel(g: Graph, perm) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    adj = [0] * g.n
    for v in range(g.n):
        row = 0
        for u in iter_bits(g.adj[v]):
            row |= 1 << perm[u]
        adj[perm[v]] = row
    return Graph._trusted(g.n, tuple(adj), g.e)
