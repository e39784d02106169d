"""Graph sources for the verifiers: labeled enumeration, graph6 files, seeded samples."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional

from ..errors import GraphError, SizeError
from ..graph import Graph, is_connected_mask, parse_graph6, popcount
from ..chromatics import chromatic_number_mask, max_clique_mask
from ..recognition import is_even_hole_free

MAX_ENUMERATION_N = 7


def edge_order(n: int) -> list[tuple[int, int]]:
    """Edge slots in graph6 order: (0,1), (0,2), (1,2), (0,3), ...

    Bit ``i`` of an edge mask is the ``i``-th slot, so the first C(n-1, 2)
    bits of a mask on ``n`` vertices describe the subgraph on ``0..n-2``.
    """
    return [(i, j) for j in range(1, n) for i in range(j)]


def graph_from_mask(n: int, mask: int, _slots={}) -> Graph:
    # Per-vertex row contributions for each edge slot, cached by n.
    slots = _slots.get(n)
    if slots is None:
        slots = _slots[n] = [(i, j, 1 << i, 1 << j) for i, j in edge_order(n)]
    adj = [0] * n
    m = mask
    e = 0
    while m:
        low = m & -m
        i, j, bi, bj = slots[low.bit_length() - 1]
        adj[i] |= bj
        adj[j] |= bi
        m ^= low
        e += 1
    return Graph._trusted(n, tuple(adj), e)


def labeled_count(max_n: int, min_n: int = 1) -> int:
    return sum(1 << (n * (n - 1) // 2) for n in range(min_n, max_n + 1))


def enumerate_labeled(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    """All labeled graphs on min_n..max_n vertices, by n then by edge mask."""
    if max_n > MAX_ENUMERATION_N:
        raise SizeError(
            f"labeled enumeration is limited to n <= {MAX_ENUMERATION_N}; "
            "supply larger corpora as graph6 files"
        )
    for n in range(min_n, max_n + 1):
        for mask in range(1 << (n * (n - 1) // 2)):
            yield graph_from_mask(n, mask)


def random_graph(seed: int, index: int, min_n: int, max_n: int) -> Graph:
    """The ``index``-th graph of a seeded sample.

    Vertex count is uniform on [min_n, max_n]; the edge density is itself
    uniform on [0, 1], so sparse and dense graphs are both well represented.
    Each index has its own generator, so any slice reproduces independently.
    """
    rng = random.Random(f"{seed}:{index}")
    n = rng.randint(min_n, max_n)
    q = rng.random()
    mask = 0
    for i in range(n * (n - 1) // 2):
        if rng.random() < q:
            mask |= 1 << i
    return graph_from_mask(n, mask)


@dataclass(frozen=True)
class CorpusSpec:
    """Where graphs come from and which of them enter the corpus.

    ``source`` is ``"builtin"`` (all labeled graphs, min_n..max_n),
    ``"graph6"`` (one graph per line of ``path``) or ``"random"``
    (``count`` seeded samples with min_n..max_n vertices).
    """

    source: str = "builtin"
    max_n: int = 7
    min_n: int = 1
    path: Optional[str] = None
    count: int = 0
    seed: int = 0
    connected_only: bool = False
    ehf_only: bool = False
    chi_range: Optional[tuple[int, int]] = None
    omega_range: Optional[tuple[int, int]] = None
    graph6_lines: tuple[str, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.source not in ("builtin", "graph6", "random"):
            raise GraphError(f"unknown corpus source {self.source!r}")
        if self.source == "builtin" and self.max_n > MAX_ENUMERATION_N:
            raise SizeError(f"builtin enumeration is limited to max_n <= {MAX_ENUMERATION_N}")
        if self.source == "graph6" and self.path is None and not self.graph6_lines:
            raise GraphError("graph6 corpus needs a path")
        if self.min_n < 1 and self.source != "graph6":
            raise GraphError("min_n must be at least 1")

    @classmethod
    def from_graphs(cls, graphs, **filters) -> "CorpusSpec":
        from ..graph import encode_graph6

        return cls(source="graph6", path="<memory>", graph6_lines=tuple(encode_graph6(g) for g in graphs), **filters)

    def lines(self) -> list[str]:
        if self.graph6_lines:
            return list(self.graph6_lines)
        text = Path(self.path).read_text(encoding="ascii")
        return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]

    def raw_size(self) -> int:
        if self.source == "builtin":
            return labeled_count(self.max_n, self.min_n)
        if self.source == "random":
            return self.count
        return len(self.lines())

    def describe(self) -> dict:
        out: dict = {"source": self.source}
        if self.source == "builtin":
            out.update(min_n=self.min_n, max_n=self.max_n)
        elif self.source == "random":
            out.update(count=self.count, seed=self.seed, min_n=self.min_n, max_n=self.max_n)
        else:
            out.update(path=self.path)
        out["filters"] = {
            "connected_only": self.connected_only,
            "ehf_only": self.ehf_only,
            "chi_range": list(self.chi_range) if self.chi_range else None,
            "omega_range": list(self.omega_range) if self.omega_range else None,
        }
        return out

    def iter_raw(self, start: int = 0, stop: Optional[int] = None, lines: Optional[list[str]] = None) -> Iterator[tuple[int, Graph]]:
        """(index, graph) pairs for raw indices in [start, stop)."""
        total = self.raw_size() if stop is None else stop
        if self.source == "builtin":
            base = 0
            for n in range(self.min_n, self.max_n + 1):
                size = 1 << (n * (n - 1) // 2)
                lo, hi = max(start, base), min(total, base + size)
                for idx in range(lo, hi):
                    yield idx, graph_from_mask(n, idx - base)
                base += size
        elif self.source == "random":
            for idx in range(start, total):
                yield idx, random_graph(self.seed, idx, self.min_n, self.max_n)
        else:
            lines = self.lines() if lines is None else lines
            for idx in range(start, min(total, len(lines))):
                yield idx, parse_graph6(lines[idx])

    def admit(self, g: Graph, hole_budget: int) -> Optional[str]:
        """Name of the first filter rejecting ``g``, or None if admitted.

        May raise ResourceError from the even-hole filter.
        """
        full = g.full_mask
        if self.connected_only and not is_connected_mask(g.adj, full):
            return "connected_only"
        if self.omega_range is not None:
            omega = popcount(max_clique_mask(g.adj, full))
            if not self.omega_range[0] <= omega <= self.omega_range[1]:
                return "omega_range"
        if self.ehf_only and not is_even_hole_free(g, budget=hole_budget):
            return "ehf_only"
        if self.chi_range is not None:
            chi, _ = chromatic_number_mask(g.adj, full)
            if not self.chi_range[0] <= chi <= self.chi_range[1]:
                return "chi_range"
        return None


__all__ = [
    "CorpusSpec",
    "MAX_ENUMERATION_N",
    "edge_order",
    "enumerate_labeled",
    "graph_from_mask",
    "labeled_count",
    "random_graph",
]
