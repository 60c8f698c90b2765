"""Vertex 2-colorings and Δ-color edge colorings of balanced hypergraphs.

The edge coloring recursively splits the edge multiset into two halves
whose per-vertex degrees stay within color budgets ⌈k/2⌉ and ⌊k/2⌋,
starting from k = Δ(H).  Each split is found by backtracking over edge
labelings with per-vertex capacity pruning.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .balance import is_balanced
from .core import Hypergraph, bits
from .errors import Budget, NotBalanced, SearchExhausted


@dataclass(frozen=True)
class VertexBicoloring:
    colors: dict[int, int]

    def is_valid(self, h: Hypergraph) -> bool:
        return all(len({self.colors[v] for v in e}) == 2
                   for e in h.edges if len(e) >= 2)


@dataclass(frozen=True)
class EdgeColoring:
    """Color of every edge (by index), colors drawn from 1..k."""

    colors: tuple[int, ...]
    k: int

    @property
    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for j, c in enumerate(self.colors):
            out[c - 1].append(j)
        return out


def _require_balanced(h: Hypergraph) -> None:
    if not is_balanced(h).balanced:
        raise NotBalanced("coloring requires a balanced hypergraph")


def vertex_2color(h: Hypergraph) -> VertexBicoloring:
    """2-color the vertices so that every edge with two or more vertices is bichromatic."""
    _require_balanced(h)
    masks = [mk for mk in h.edge_masks if mk.bit_count() >= 2]
    ending: list[list[int]] = [[] for _ in range(h.n)]
    for mk in masks:
        ending[mk.bit_length() - 1].append(mk)
    budget = Budget("vertex_2color")
    ones = 0  # bitset of vertices colored 1

    def dfs(i: int) -> bool:
        nonlocal ones
        budget.tick()
        if i == h.n:
            return True
        for c in (0, 1):
            trial = ones | (c << i)
            # an edge closing here must see both colors
            if all(0 < (mk & trial).bit_count() < mk.bit_count()
                   for mk in ending[i]):
                saved = ones
                ones = trial
                if dfs(i + 1):
                    return True
                ones = saved
        return False

    if not dfs(0):
        raise SearchExhausted("no bichromatic vertex 2-coloring found on a balanced input")
    return VertexBicoloring({v: (ones >> i) & 1 for i, v in enumerate(h.vertices)})


def _split(masks: Sequence[int], cap1: dict[int, int], cap2: dict[int, int]) -> list[int] | None:
    """Label each edge 0 (first half) or 1 so per-vertex counts stay within caps."""
    m = len(masks)
    c1 = dict.fromkeys(cap1, 0)
    c2 = dict.fromkeys(cap2, 0)
    labels = [0] * m
    budget = Budget("edge bisection")
    vlists = [list(bits(mk)) for mk in masks]

    def dfs(j: int) -> bool:
        budget.tick()
        if j == m:
            return True
        vs = vlists[j]
        if all(c1[v] < cap1[v] for v in vs):
            for v in vs:
                c1[v] += 1
            labels[j] = 0
            if dfs(j + 1):
                return True
            for v in vs:
                c1[v] -= 1
        if all(c2[v] < cap2[v] for v in vs):
            for v in vs:
                c2[v] += 1
            labels[j] = 1
            if dfs(j + 1):
                return True
            for v in vs:
                c2[v] -= 1
        return False

    return labels if dfs(0) else None


def _degrees(masks: Sequence[int]) -> dict[int, int]:
    deg: dict[int, int] = {}
    for mk in masks:
        for v in bits(mk):
            deg[v] = deg.get(v, 0) + 1
    return deg


def _bisect(masks: Sequence[int], b1: int | None = None, b2: int | None = None,
            equitable_only: bool = False) -> list[int] | None:
    deg = _degrees(masks)
    half = {v: (d + 1) // 2 for v, d in deg.items()}
    if b1 is None or b2 is None:
        return _split(masks, half, half)
    cap1 = {v: min(h, b1) for v, h in half.items()}
    cap2 = {v: min(h, b2) for v, h in half.items()}
    labels = None
    if all(cap1[v] + cap2[v] >= d for v, d in deg.items()):
        labels = _split(masks, cap1, cap2)
    if labels is None and not equitable_only:
        # existence of a budget split follows from the Δ-coloring itself
        labels = _split(masks, dict.fromkeys(deg, b1), dict.fromkeys(deg, b2))
    return labels


def equitable_bisect(h: Hypergraph) -> tuple[list[int], list[int]]:
    """Partition the edges so every vertex splits its degree within ±1."""
    _require_balanced(h)
    labels = _bisect(h.edge_masks)
    if labels is None:
        raise SearchExhausted("no equitable bisection found on a balanced input")
    e1 = [j for j, lb in enumerate(labels) if lb == 0]
    e2 = [j for j, lb in enumerate(labels) if lb == 1]
    return e1, e2


def _color(masks: Sequence[int], ids: list[int], k: int) -> list[list[int]]:
    if not ids:
        return []
    if k <= 1:
        used = 0
        for j in ids:
            if masks[j] & used:
                raise SearchExhausted("color budget exhausted")
            used |= masks[j]
        return [list(ids)]
    b1, b2 = (k + 1) // 2, k // 2
    labels = _bisect([masks[j] for j in ids], b1, b2)
    if labels is None:
        raise SearchExhausted(f"no {b1}/{b2} edge bisection found")
    first = [j for j, lb in zip(ids, labels) if lb == 0]
    second = [j for j, lb in zip(ids, labels) if lb == 1]
    return _color(masks, first, b1) + _color(masks, second, b2)


def edge_coloring(h: Hypergraph, check_balanced: bool = True) -> EdgeColoring:
    """Proper edge coloring using at most Δ(H) colors, every class nonempty."""
    if check_balanced:
        _require_balanced(h)
    classes = [c for c in _color(h.edge_masks, list(range(h.m)), h.max_degree()) if c]
    colors = [0] * h.m
    for c, cls in enumerate(classes, 1):
        for j in cls:
            colors[j] = c
    coloring = EdgeColoring(tuple(colors), len(classes))
    if not verify_edge_coloring(h, coloring):
        raise SearchExhausted("edge coloring failed verification")
    return coloring


def verify_edge_coloring(h: Hypergraph, coloring: EdgeColoring | Sequence[int],
                         k: int | None = None) -> bool:
    """True iff the coloring is proper and uses at most Δ(H) colors."""
    if isinstance(coloring, EdgeColoring):
        colors, k = coloring.colors, coloring.k
    else:
        colors = tuple(coloring)
        k = max(colors, default=0) if k is None else k
    if len(colors) != h.m or k > h.max_degree():
        return False
    if any(not 1 <= c <= k for c in colors):
        return False
    masks = h.edge_masks
    for a in range(h.m):
        for b in range(a + 1, h.m):
            if colors[a] == colors[b] and masks[a] & masks[b]:
                return False
    return True
