"""Immutable simple graphs on vertices 0..n-1 with bitset adjacency.

Neighbor sets are stored as Python ints: bit ``u`` of ``adj[v]`` is set iff
``uv`` is an edge. Public functions take and return vertex sets as
``frozenset[int]``; the ``*_mask`` helpers are the word-level kernels the
search modules build on.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from typing import Optional

from .errors import Graph6Error, GraphError, ModelError, SizeError

MAX_VERTICES = 64

VertexSet = frozenset


# -- bit helpers -------------------------------------------------------------

def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# Bit positions of every 16-bit mask; the hot loops run on graphs this small.
_SMALL_BITS = 1 << 16
_BITS_TABLE: list[tuple[int, ...]] = [()]
for _m in range(1, _SMALL_BITS):
    _low = (_m & -_m).bit_length() - 1
    _BITS_TABLE.append((_low,) + _BITS_TABLE[_m & (_m - 1)])
del _m, _low


def iter_bits(mask: int) -> Iterable[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    if mask < _SMALL_BITS:
        return _BITS_TABLE[mask]
    return _iter_bits(mask)


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def set_of(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


popcount = int.bit_count


# -- the graph type ----------------------------------------------------------

class Graph:
    """Simple undirected graph with vertices ``0..n-1``.

    Instances are immutable and hashable; equality is equality of labeled
    graphs (same ``n``, same edge set).
    """

    __slots__ = ("n", "adj", "e")

    n: int
    adj: tuple[int, ...]
    e: int

    def __init__(self, n: int, adj: Iterable[int]):
        if not 0 <= n <= MAX_VERTICES:
            raise SizeError(f"graphs are limited to {MAX_VERTICES} vertices, got n={n}")
        adj = tuple(int(a) for a in adj)
        if len(adj) != n:
            raise GraphError(f"expected {n} adjacency rows, got {len(adj)}")
        full = (1 << n) - 1
        degree_sum = 0
        for v, a in enumerate(adj):
            if a < 0 or a & ~full:
                raise GraphError(f"row {v} references a vertex outside 0..{n - 1}")
            if a >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in iter_bits(a):
                if not adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
            degree_sum += popcount(a)
        self._init(n, adj, degree_sum // 2)

    def _init(self, n: int, adj: tuple[int, ...], e: int) -> None:
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "e", e)

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...], e: Optional[int] = None) -> "Graph":
        # Skips validation; callers guarantee a symmetric loop-free tuple.
        g = cls.__new__(cls)
        if e is None:
            e = sum(popcount(a) for a in adj) // 2
        g._init(n, adj, e)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if not 0 <= n <= MAX_VERTICES:
            raise SizeError(f"graphs are limited to {MAX_VERTICES} vertices, got n={n}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls._trusted(n, tuple(adj))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.e}, g6={encode_graph6(self)!r})"

    def __reduce__(self):
        return (Graph._trusted, (self.n, self.adj, self.e))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in iter_bits(self.adj[v] & ((1 << v) - 1))]

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return popcount(self.adj[v])

    def _check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise GraphError(f"vertex {v!r} is not in 0..{self.n - 1}")

    def _check_mask(self, vertices: Iterable[int]) -> int:
        m = 0
        for v in vertices:
            self._check_vertex(v)
            m |= 1 << v
        return m


# -- graph6 -----------------------------------------------------------------

def _graph6_size_header(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    return "~" + "".join(chr(63 + (n >> shift & 63)) for shift in (12, 6, 0))


def encode_graph6(g: Graph) -> str:
    """Encode ``g`` as graph6 under the identity labeling."""
    if g.n > MAX_VERTICES:
        raise SizeError(f"graph6 encoding supports at most {MAX_VERTICES} vertices")
    out = [_graph6_size_header(g.n)]
    acc = nbits = 0
    adj = g.adj
    for j in range(1, g.n):
        row = adj[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def parse_graph6(line: str, max_n: int = MAX_VERTICES) -> Graph:
    """Decode one graph6 string (optionally prefixed by ``>>graph6<<``)."""
    text = line.strip()
    base = 0
    if text.startswith(">>graph6<<"):
        base = len(">>graph6<<")
        text = text[base:]
    if not text:
        raise Graph6Error("empty graph6 string", base)
    for i, ch in enumerate(text):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside the graph6 range 63..126", base + i)
    codes = [ord(ch) - 63 for ch in text]
    if codes[0] < 63:
        n, pos = codes[0], 1
    elif len(codes) >= 2 and codes[1] == 63:
        raise SizeError(f"graph6 header at byte offset {base} encodes n > 258047; limit is {max_n}")
    else:
        if len(codes) < 4:
            raise Graph6Error("truncated 4-byte size header", base + len(codes))
        n = codes[1] << 12 | codes[2] << 6 | codes[3]
        pos = 4
        if n <= 62:
            raise Graph6Error("non-canonical long size header", base)
    if n > max_n:
        raise SizeError(f"graph6 string encodes n={n}; limit is {max_n}")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = codes[pos:]
    if len(body) < nbytes:
        raise Graph6Error(f"truncated bit stream: need {nbytes} data bytes, got {len(body)}", base + len(codes))
    if len(body) > nbytes:
        raise Graph6Error("trailing bytes after the bit stream", base + pos + nbytes)
    pad = nbytes * 6 - nbits
    if pad and body and body[-1] & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", base + pos + nbytes - 1)
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte, bit = divmod(k, 6)
            if body[byte] >> (5 - bit) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph._trusted(n, tuple(adj))


def read_graph6_lines(lines: Iterable[str], max_n: int = MAX_VERTICES) -> Iterator[Graph]:
    """Parse graph6 lines, skipping blanks and ``#`` comments."""
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        yield parse_graph6(line, max_n=max_n)


# -- mask kernels -----------------------------------------------------------

def induced_masks(adj: tuple[int, ...], mask: int) -> tuple[int, ...]:
    """Adjacency rows of the subgraph induced on ``mask``, relabeled in index order."""
    verts = list(iter_bits(mask))
    pos = {v: i for i, v in enumerate(verts)}
    out = []
    for v in verts:
        row = 0
        for u in iter_bits(adj[v] & mask):
            row |= 1 << pos[u]
        out.append(row)
    return tuple(out)


def component_masks(adj: tuple[int, ...], mask: int) -> list[int]:
    """Connected components of the subgraph induced on ``mask``, by least vertex."""
    comps = []
    rest = mask
    while rest:
        seen = frontier = rest & -rest
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            frontier = nxt & rest & ~seen
            seen |= frontier
        comps.append(seen)
        rest &= ~seen
    return comps


def is_connected_mask(adj: tuple[int, ...], mask: int) -> bool:
    if not mask:
        return False
    seen = frontier = mask & -mask
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        frontier = nxt & mask & ~seen
        seen |= frontier
    return seen == mask


# -- operations -------------------------------------------------------------

def induced_subgraph(g: Graph, a: Iterable[int]) -> Graph:
    """G[A], relabeled to 0..|A|-1 in increasing order of the original indices."""
    mask = g._check_mask(a)
    return Graph._trusted(popcount(mask), induced_masks(g.adj, mask))


def delete(g: Graph, a: Iterable[int]) -> Graph:
    """G \\ A."""
    mask = g._check_mask(a)
    return Graph._trusted(g.n - popcount(mask), induced_masks(g.adj, g.full_mask & ~mask))


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return Graph._trusted(g.n, tuple(full & ~a & ~(1 << v) for v, a in enumerate(g.adj)))


def neighborhood(g: Graph, v: int) -> frozenset[int]:
    g._check_vertex(v)
    return set_of(g.adj[v])


def closed_neighborhood(g: Graph, v: int) -> frozenset[int]:
    g._check_vertex(v)
    return set_of(g.adj[v] | 1 << v)


def degree_stats(g: Graph) -> tuple[int, int, list[int]]:
    """Return (min degree, max degree, degree sequence by vertex)."""
    degrees = [popcount(a) for a in g.adj]
    if not degrees:
        return 0, 0, []
    return min(degrees), max(degrees), degrees


def contract(g: Graph, branch_sets: Iterable[Iterable[int]]) -> Graph:
    """Contract each branch set to one vertex, discarding uncovered vertices.

    Contracted vertices ``i`` and ``j`` are adjacent iff some edge of ``g``
    joins branch set ``i`` to branch set ``j``.
    """
    masks = []
    used = 0
    for bs in branch_sets:
        bs = frozenset(bs)
        m = g._check_mask(bs)
        if not m:
            raise ModelError("empty branch set", bs)
        if m & used:
            raise ModelError("branch set overlaps an earlier one", bs)
        if not is_connected_mask(g.adj, m):
            raise ModelError("branch set does not induce a connected subgraph", bs)
        used |= m
        masks.append(m)
    reach = []
    for m in masks:
        r = 0
        for v in iter_bits(m):
            r |= g.adj[v]
        reach.append(r)
    k = len(masks)
    adj = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if reach[i] & masks[j]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph._trusted(k, tuple(adj))


def connected_components(g: Graph) -> list[frozenset[int]]:
    return [set_of(c) for c in component_masks(g.adj, g.full_mask)]


def is_connected(g: Graph) -> bool:
    """True for connected graphs; the null graph counts as disconnected."""
    return is_connected_mask(g.adj, g.full_mask)
