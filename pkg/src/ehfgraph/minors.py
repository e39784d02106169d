"""Exact clique-minor and disjoint-clique-minor search with certificates.

A model of a target is a family of disjoint connected branch sets; pairs of
sets that correspond to adjacent target vertices must be joined by an edge.
The search fixes, for every branch set, its least vertex (the "seed") and
grows the sets one vertex at a time, only ever adding vertices larger than
the set's seed. Every inclusion-minimal model is reached this way: while
some required pair is not yet adjacent, one of its two sets must still grow
inside the minimal model, and connectivity lets it grow one neighbor at a
time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .errors import GraphError, ModelError, ResourceError
from .graph import Graph, component_masks, iter_bits, popcount, set_of
from .chromatics import max_clique_mask

DEFAULT_MINOR_BUDGET = 10**8


@dataclass(frozen=True)
class MinorModel:
    """Branch sets certifying a minor of the disjoint union of cliques ``target``.

    ``target = (k,)`` is K_k; ``target = (t, s)`` is K_t plus K_s, and the
    first ``t`` branch sets form the K_t side.
    """

    target: tuple[int, ...]
    branch_sets: tuple[frozenset[int], ...]

    @property
    def groups(self) -> list[tuple[frozenset[int], ...]]:
        out, i = [], 0
        for size in self.target:
            out.append(self.branch_sets[i:i + size])
            i += size
        return out

    def describe(self) -> str:
        return " ∪ ".join(f"K_{k}" for k in self.target)

    def validate(self, g: Graph) -> None:
        """Independent check: disjoint, nonempty, connected, required cross edges."""
        if len(self.branch_sets) != sum(self.target):
            raise ModelError(f"{self.describe()} needs {sum(self.target)} branch sets, got {len(self.branch_sets)}")
        used: set[int] = set()
        for bs in self.branch_sets:
            if not bs:
                raise ModelError("empty branch set", bs)
            for v in bs:
                g._check_vertex(v)
            if used & bs:
                raise ModelError("branch sets overlap", bs)
            used |= bs
            # Connectivity by plain graph search over the set.
            start = min(bs)
            seen, todo = {start}, [start]
            while todo:
                u = todo.pop()
                for w in bs:
                    if w not in seen and g.has_edge(u, w):
                        seen.add(w)
                        todo.append(w)
            if seen != set(bs):
                raise ModelError("branch set is not connected", bs)
        for group in self.groups:
            for a, b in combinations(group, 2):
                if not any(g.has_edge(u, w) for u in a for w in b):
                    raise ModelError(f"no edge between branch sets {sorted(a)} and", b)

    def to_json(self) -> dict:
        return {"target": list(self.target), "branch_sets": [sorted(b) for b in self.branch_sets]}


@dataclass
class _Budget:
    limit: int
    used: int = field(default=0)

    def tick(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise ResourceError(f"minor search exceeded {self.limit} partial models")


def _reach(adj: tuple[int, ...], start: int, allowed: int) -> int:
    seen = frontier = start
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def _grow(adj, seeds: Sequence[int], pairs: Sequence[tuple[int, int]], free: int, budget: _Budget) -> Optional[list[int]]:
    """Depth-first growth from singleton ``seeds`` until every pair is adjacent."""
    k = len(seeds)
    above = [~((2 << s) - 1) for s in seeds]
    visited: set[tuple[int, ...]] = set()

    def nbr(m: int) -> int:
        out = 0
        for v in iter_bits(m):
            out |= adj[v]
        return out

    def search(sets: list[int], nbrs: list[int], free: int) -> Optional[list[int]]:
        key = tuple(sets)
        if key in visited:
            return None
        visited.add(key)
        budget.tick()
        open_pair = None
        reach = None
        for i, j in pairs:
            if nbrs[i] & sets[j]:
                continue
            if reach is None:
                reach = [_reach(adj, sets[x], free & above[x]) for x in range(k)]
            if not nbr(reach[i]) & reach[j]:
                return None
            if open_pair is None:
                open_pair = (i, j)
        if open_pair is None:
            return sets
        for x in open_pair:
            for u in iter_bits(nbrs[x] & free & above[x]):
                bit = 1 << u
                sets[x] |= bit
                old = nbrs[x]
                nbrs[x] = old | adj[u]
                found = search(sets, nbrs, free & ~bit)
                if found is not None:
                    return found
                sets[x] &= ~bit
                nbrs[x] = old
        return None

    sets = [1 << s for s in seeds]
    seed_mask = 0
    for s in seeds:
        seed_mask |= 1 << s
    result = search(sets, [adj[s] for s in seeds], free & ~seed_mask)
    return None if result is None else list(result)


def _clique_pairs(sizes: Sequence[int]) -> list[tuple[int, int]]:
    pairs, base = [], 0
    for size in sizes:
        pairs.extend((base + i, base + j) for i, j in combinations(range(size), 2))
        base += size
    return pairs


def _edge_count(adj, mask: int) -> int:
    return sum(popcount(adj[v] & mask) for v in iter_bits(mask)) // 2


def _find_cycle(adj, mask: int) -> Optional[list[int]]:
    """Some cycle of G[mask] as a vertex list, or None if it is a forest."""
    parent: dict[int, int] = {}
    for root in iter_bits(mask):
        if root in parent:
            continue
        parent[root] = -1
        stack = [root]
        while stack:
            v = stack.pop()
            for u in iter_bits(adj[v] & mask):
                if u == parent[v]:
                    continue
                if u in parent:
                    # Tree path u..lca..v closes a cycle with edge vu.
                    anc_v = [v]
                    while anc_v[-1] != -1:
                        anc_v.append(parent[anc_v[-1]])
                    anc_u = [u]
                    while anc_u[-1] not in anc_v:
                        anc_u.append(parent[anc_u[-1]])
                    lca = anc_u[-1]
                    return anc_v[:anc_v.index(lca) + 1] + anc_u[-2::-1]
                parent[u] = v
                stack.append(u)
    return None


def clique_minor_mask(adj, mask: int, k: int, budget: _Budget) -> Optional[list[int]]:
    """Branch-set masks of a K_k model inside G[mask], or None."""
    if k <= 0:
        return []
    if popcount(mask) < k:
        return None
    if k == 1:
        return [mask & -mask]
    clique = max_clique_mask(adj, mask, target=k)
    if popcount(clique) >= k:
        return [1 << v for v in list(iter_bits(clique))[:k]]
    if k == 2:
        return None
    if k == 3:
        cyc = _find_cycle(adj, mask)
        if cyc is None:
            return None
        return [1 << cyc[0], 1 << cyc[1], sum(1 << v for v in cyc[2:])]
    need = k * (k - 1) // 2
    pairs = _clique_pairs([k])
    for comp in component_masks(adj, mask):
        if popcount(comp) < k or _edge_count(adj, comp) < need:
            continue
        # Some model covers the whole component, so its least vertex seeds one set.
        anchor = comp & -comp
        first = anchor.bit_length() - 1
        rest = list(iter_bits(comp & ~anchor))
        for others in combinations(rest, k - 1):
            found = _grow(adj, (first,) + others, pairs, comp, budget)
            if found is not None:
                return found
    return None


def disjoint_clique_minors_mask(adj, mask: int, sizes: Sequence[int], budget: _Budget) -> Optional[list[int]]:
    """Model of the disjoint union of cliques ``sizes`` (largest side searched first)."""
    sizes = list(sizes)
    if len(sizes) == 1:
        return clique_minor_mask(adj, mask, sizes[0], budget)
    if popcount(mask) < sum(sizes) or _edge_count(adj, mask) < sum(k * (k - 1) // 2 for k in sizes):
        return None
    pairs = _clique_pairs(sizes)
    verts = list(iter_bits(mask))
    symmetric = len(set(sizes)) == 1

    def seed_choices(i: int, used: int, prev_first: int):
        if i == len(sizes):
            yield ()
            return
        avail = [v for v in verts if not used >> v & 1]
        for combo in combinations(avail, sizes[i]):
            if symmetric and combo[0] < prev_first:
                continue
            m = used
            for v in combo:
                m |= 1 << v
            for tail in seed_choices(i + 1, m, combo[0]):
                yield combo + tail

    for seeds in seed_choices(0, 0, -1):
        found = _grow(adj, seeds, pairs, mask, budget)
        if found is not None:
            return found
    return None


def has_clique_minor(g: Graph, k: int, budget: int = DEFAULT_MINOR_BUDGET) -> Optional[MinorModel]:
    """A K_k model of ``g`` or None (exact)."""
    if k < 1:
        raise GraphError(f"k must be at least 1, got {k}")
    found = clique_minor_mask(g.adj, g.full_mask, k, _Budget(budget))
    if found is None:
        return None
    return MinorModel((k,), tuple(set_of(m) for m in found))


def has_disjoint_clique_minors(g: Graph, s: int, t: int, budget: int = DEFAULT_MINOR_BUDGET) -> Optional[MinorModel]:
    """A model of K_s ∪ K_t in ``g`` or None (exact).

    The returned model lists the larger clique first: ``target == (max, min)``.
    """
    if s < 1 or t < 1:
        raise GraphError(f"s and t must be at least 1, got s={s}, t={t}")
    sizes = (max(s, t), min(s, t))
    found = disjoint_clique_minors_mask(g.adj, g.full_mask, sizes, _Budget(budget))
    if found is None:
        return None
    return MinorModel(sizes, tuple(set_of(m) for m in found))


def mader_threshold(n: int, p: int) -> int:
    """Edge count (p-2)n - C(p-1, 2) + 1 that forces a K_p minor for p <= 7."""
    return (p - 2) * n - (p - 1) * (p - 2) // 2 + 1


def mader_sufficient(g: Graph, p: int) -> bool:
    """True iff n >= p and e(g) reaches the edge bound guaranteeing a K_p minor."""
    if not 1 <= p <= 7:
        raise GraphError(f"the edge bound is only proven for 1 <= p <= 7, got p={p}")
    return g.n >= p and g.e >= mader_threshold(g.n, p)

