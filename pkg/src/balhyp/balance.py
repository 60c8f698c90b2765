"""Balancedness recognition with strong-odd-cycle certificates."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Literal

from .core import Hypergraph, Walk, bits, classify_walk
from .errors import Budget, InstanceTooLarge

ORACLE_CAP = 14


@dataclass(frozen=True)
class BalanceCertificate:
    verdict: Literal["balanced", "unbalanced"]
    witness: Walk | None = None

    @property
    def balanced(self) -> bool:
        return self.verdict == "balanced"

    def __bool__(self) -> bool:
        return self.balanced


def find_strong_odd_cycle(h: Hypergraph) -> Walk | None:
    """Return the first strong odd cycle in canonical DFS order, or None.

    Cycles are rooted at their lowest-positioned vertex.  A branch dies as
    soon as a traversed edge would hold a third walk vertex, which is sound
    because the walk's vertex set only grows.
    """
    masks = h.edge_masks
    stars = h.star_masks
    budget = Budget("find_strong_odd_cycle")

    def dfs(start: int, cur: int, walk_mask: int, used_edges: int,
            used_union: int, vs: list[int], es: list[int]) -> Walk | None:
        budget.tick()
        nverts = len(vs)
        closing = (1 << cur) | (1 << start)
        for j in bits(stars[cur] & ~used_edges):
            inside = masks[j] & walk_mask
            if nverts >= 3 and nverts % 2 == 1 and inside == closing:
                return Walk(tuple(h.vertices[i] for i in vs + [start]),
                            tuple(es + [j]), "cycle")
            if inside != 1 << cur:
                continue
            # candidates: new, above the root, in no traversed edge
            cand = masks[j] & ~walk_mask & ~used_union & ~((1 << (start + 1)) - 1)
            for u in bits(cand):
                vs.append(u)
                es.append(j)
                found = dfs(start, u, walk_mask | (1 << u),
                            used_edges | (1 << j), used_union | masks[j],
                            vs, es)
                vs.pop()
                es.pop()
                if found is not None:
                    return found
        return None

    for s in range(h.n):
        w = dfs(s, s, 1 << s, 0, 0, [s], [])
        if w is not None:
            return w
    return None


def is_balanced(h: Hypergraph) -> BalanceCertificate:
    witness = find_strong_odd_cycle(h)
    if witness is None:
        return BalanceCertificate("balanced")
    cls = classify_walk(h, witness)
    assert cls.kind == "cycle" and cls.strong and cls.length % 2 == 1, cls
    return BalanceCertificate("unbalanced", witness)


def oracle_balanced_matrix(h: Hypergraph) -> bool:
    """Independent check on the incidence matrix.

    True iff no square submatrix of odd order has exactly two ones in every
    row and every column.  Subsets of the smaller side are enumerated and
    the other side is completed from the columns that meet the chosen rows
    exactly twice.
    """
    if min(h.n, h.m) > ORACLE_CAP:
        raise InstanceTooLarge(
            f"matrix oracle capped at min(n, m) <= {ORACLE_CAP}")
    rows = list(h.edge_masks)
    cols = list(h.star_masks)
    if len(rows) > len(cols):
        rows, cols = cols, rows
    budget = Budget("oracle_balanced_matrix")
    nrows = len(rows)
    for k in range(3, nrows + 1, 2):
        for chosen in combinations(range(nrows), k):
            budget.tick()
            rmask = sum(1 << r for r in chosen)
            cand = [c for c, cm in enumerate(cols) if (cm & rmask).bit_count() == 2]
            if len(cand) < k:
                continue
            for sel in combinations(cand, k):
                budget.tick()
                smask = sum(1 << c for c in sel)
                if all((rows[r] & smask).bit_count() == 2 for r in chosen):
                    return False
    return True
