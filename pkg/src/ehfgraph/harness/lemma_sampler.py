"""Seeded sampler of instances for the neighborhood-coloring split lemma."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Optional

from ..chromatics import Coloring, chromatic_number_mask
from ..errors import GraphError, ResourceError
from ..generators import relabel
from ..graph import Graph, popcount, set_of
from ..splitting import LemmaSplitInput, lemma_precondition_holds
from .corpus import graph_from_mask

MAX_ATTEMPTS = 2000


@dataclass(frozen=True)
class LemmaInstance:
    graph: Graph
    data: LemmaSplitInput

    def describe(self) -> dict:
        return {"x": self.data.x, "r": self.data.r, "coloring": self.data.neighborhood_coloring.to_json()}


def _random_mask(rng: random.Random, n: int, q: float) -> int:
    mask = 0
    for i in range(n * (n - 1) // 2):
        if rng.random() < q:
            mask |= 1 << i
    return mask


def _candidate(rng: random.Random, min_n: int, max_n: int) -> tuple[Graph, int]:
    n = rng.randint(min_n, max_n)
    if rng.random() < 0.5:
        # Dense host plus a low-degree vertex: the regime where the size condition can hold.
        host = graph_from_mask(n - 1, _random_mask(rng, n - 1, rng.uniform(0.5, 1.0)))
        d = rng.randint(2, n - 1)
        nbrs = rng.sample(range(n - 1), d)
        adj = list(host.adj) + [0]
        for u in nbrs:
            adj[u] |= 1 << (n - 1)
            adj[n - 1] |= 1 << u
        g = Graph._trusted(n, tuple(adj))
        x = n - 1
    else:
        g = graph_from_mask(n, _random_mask(rng, n, rng.uniform(0.3, 1.0)))
        x = rng.randrange(n)
    perm = list(range(n))
    rng.shuffle(perm)
    return relabel(g, perm), perm[x]


def sample_instance(seed: int, index: int, min_n: int = 4, max_n: int = 10) -> LemmaInstance:
    """Draw graphs until one has a vertex, optimal neighborhood coloring and r meeting the precondition."""
    rng = random.Random(f"{seed}:lemma:{index}")
    for _ in range(MAX_ATTEMPTS):
        g, x = _candidate(rng, min_n, max_n)
        nx = g.adj[x]
        if popcount(nx) < 2:
            continue
        p, classes = chromatic_number_mask(g.adj, nx)
        if p < 2:
            continue
        chi, _ = chromatic_number_mask(g.adj, g.full_mask)
        coloring = Coloring.from_classes(set_of(c) for c in classes)
        good = [r for r in range(2, p + 1) if lemma_precondition_holds(coloring, chi, r)]
        if good:
            return LemmaInstance(g, LemmaSplitInput(x, coloring, rng.choice(good)))
    raise ResourceError(f"no precondition-satisfying instance after {MAX_ATTEMPTS} draws (index {index})")


@dataclass(frozen=True)
class LemmaSource:
    count: int
    seed: int
    max_n: int = 10
    min_n: int = 4

    def __post_init__(self):
        if not 3 <= self.min_n <= self.max_n <= 16:
            raise GraphError("lemma sampling needs 3 <= min_n <= max_n <= 16")

    def raw_size(self) -> int:
        return self.count

    def describe(self) -> dict:
        return {"source": "lemma-sampler", "count": self.count, "seed": self.seed,
                "min_n": self.min_n, "max_n": self.max_n}

    def iter_raw(self, start: int = 0, stop: Optional[int] = None) -> Iterator[tuple[int, LemmaInstance]]:
        stop = self.count if stop is None else stop
        for index in range(start, stop):
            yield index, sample_instance(self.seed, index, self.min_n, self.max_n)
