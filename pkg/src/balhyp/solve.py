"""Exact weighted matching / vertex-cover solvers and duality verifiers.

Both solvers are branch-and-bound over bitsets.  Matchings branch on
"take or skip" per edge in index order.  Covers assign vertices in order,
with each value bounded below by the residual demand of edges that end at
that vertex and above by the largest residual demand around it; a value
beyond that cap could be lowered without losing feasibility, so no minimum
cover is lost.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Mapping, Sequence, Union

from .balance import is_balanced
from .core import Hypergraph, bits, delete
from .errors import Budget, NotBalanced, ResultEmpty, UnknownTarget


@dataclass(frozen=True)
class WeightFn:
    """Edge weights: ``E`` (all ones), ``V`` (edge sizes) or explicit values."""

    kind: Literal["E", "V", "custom"]
    values: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind == "custom":
            if self.values is None or any(v < 0 for v in self.values):
                raise ValueError("custom weights must be nonnegative integers")
        elif self.values is not None:
            raise ValueError(f"{self.kind}-weights carry no explicit values")

    def on(self, h: Hypergraph) -> tuple[int, ...]:
        if self.kind == "E":
            return (1,) * h.m
        if self.kind == "V":
            return tuple(len(e) for e in h.edges)
        assert self.values is not None
        if len(self.values) != h.m:
            raise ValueError(f"{len(self.values)} weights for {h.m} edges")
        return self.values

    @classmethod
    def custom(cls, values: Sequence[int]) -> WeightFn:
        return cls("custom", tuple(int(v) for v in values))


E_WEIGHTS = WeightFn("E")
V_WEIGHTS = WeightFn("V")

Weights = Union[WeightFn, str, Sequence[int], Mapping[int, int]]


def edge_weights(h: Hypergraph, d: Weights) -> tuple[int, ...]:
    """Resolve any accepted weight spelling to one integer per edge."""
    if isinstance(d, WeightFn):
        return d.on(h)
    if isinstance(d, str):
        return WeightFn(d.upper()).on(h)  # type: ignore[arg-type]
    if isinstance(d, Mapping):
        return WeightFn.custom([d[j] for j in range(h.m)]).on(h)
    return WeightFn.custom(d).on(h)


@dataclass(frozen=True)
class Matching:
    edges: tuple[int, ...]
    weight: int

    def vertex_set(self, h: Hypergraph) -> frozenset[int]:
        return frozenset().union(*(h.edges[j] for j in self.edges))


@dataclass(frozen=True)
class CoverVector:
    """Integer vertex cover, indexed by vertex position in ``h.vertices``."""

    values: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.values)

    def value(self, h: Hypergraph, v: int) -> int:
        return self.values[h.index[v]]


def is_matching(h: Hypergraph, edges: Sequence[int]) -> bool:
    seen = 0
    for j in edges:
        if not 0 <= j < h.m or h.edge_masks[j] & seen:
            return False
        seen |= h.edge_masks[j]
    return True


def is_cover(h: Hypergraph, d: Weights, x: Sequence[int]) -> bool:
    w = edge_weights(h, d)
    if len(x) != h.n or any(v < 0 for v in x):
        return False
    return all(sum(x[i] for i in bits(mask)) >= w[j]
               for j, mask in enumerate(h.edge_masks))


# -- matchings ----------------------------------------------------------------

def _matching_search(h: Hypergraph, w: tuple[int, ...],
                     keep_all: bool) -> tuple[int, list[tuple[int, ...]]]:
    masks = h.edge_masks
    m = h.m
    budget = Budget("matching search")
    best = -1
    found: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def bound(j: int, used: int) -> int:
        return sum(w[k] for k in range(j, m) if not masks[k] & used)

    def dfs(j: int, used: int, total: int) -> None:
        nonlocal best, found
        budget.tick()
        if j == m:
            if total > best:
                best = total
                found = [tuple(chosen)]
            elif total == best:
                if keep_all:
                    found.append(tuple(chosen))
                elif tuple(chosen) < found[0]:
                    found[0] = tuple(chosen)
            return
        if total + bound(j, used) < best:
            return
        if not masks[j] & used:
            chosen.append(j)
            dfs(j + 1, used | masks[j], total + w[j])
            chosen.pop()
        dfs(j + 1, used, total)

    dfs(0, 0, 0)
    found.sort()
    return best, found


def max_matching(h: Hypergraph, d: Weights = V_WEIGHTS) -> Matching:
    """A d-maximum matching; ties go to the lexicographically smallest set."""
    w = edge_weights(h, d)
    best, found = _matching_search(h, w, keep_all=False)
    return Matching(found[0], best)


def matching_number(h: Hypergraph, d: Weights = V_WEIGHTS) -> int:
    return max_matching(h, d).weight


# -- covers -------------------------------------------------------------------

def _cover_search(h: Hypergraph, w: tuple[int, ...], *, target: int | None,
                  lower: int = 0, first_only: bool = False) -> tuple[int, list[tuple[int, ...]]]:
    """Minimum integer cover search.

    With ``target`` set, every cover of total exactly ``target`` (assumed
    minimal) is listed in lexicographic order.  Without it, returns the
    minimum total; ``lower`` is a known lower bound allowing early exit.
    """
    n, masks = h.n, h.edge_masks
    stars = [list(bits(s)) for s in h.star_masks]
    last = [mask.bit_length() - 1 for mask in masks]
    closing: list[list[int]] = [[] for _ in range(n)]
    for j, i in enumerate(last):
        closing[i].append(j)
    resid = list(w)
    x = [0] * n
    budget = Budget("cover search")
    out: list[tuple[int, ...]] = []
    best = target if target is not None else sum(w) + 1
    order = sorted(range(h.m), key=lambda j: -w[j])

    def packing(i: int) -> int:
        keep = ~((1 << i) - 1)
        used = 0
        lb = 0
        for j in order:
            if resid[j] > 0:
                mask = masks[j] & keep
                if not mask & used:
                    used |= mask
                    lb += resid[j]
        return lb

    class Done(Exception):
        pass

    def dfs(i: int, total: int) -> None:
        nonlocal best
        budget.tick()
        if i == n:
            if target is not None:
                out.append(tuple(x))
                if first_only:
                    raise Done
            elif total < best:
                best = total
                out[:] = [tuple(x)]
                if best <= lower:
                    raise Done
            return
        lo = max((resid[j] for j in closing[i]), default=0)
        hi = max((resid[j] for j in stars[i]), default=0)
        for val in range(lo, hi + 1):
            saved = [(j, resid[j]) for j in stars[i]]
            for j in stars[i]:
                resid[j] = max(0, resid[j] - val)
            x[i] = val
            t = total + val
            lb = packing(i + 1)
            if (target is not None and t + lb <= best) or (target is None and t + lb < best):
                dfs(i + 1, t)
            for j, r in saved:
                resid[j] = r
            x[i] = 0

    try:
        dfs(0, 0)
    except Done:
        pass
    if target is not None:
        return target, out
    return best, out


def min_vertex_cover(h: Hypergraph, d: Weights = V_WEIGHTS) -> CoverVector:
    """Minimum integer d-vertex cover; ties go to the lexicographically smallest vector."""
    w = edge_weights(h, d)
    lower = matching_number(h, w)
    tau, _ = _cover_search(h, w, target=None, lower=lower)
    _, first = _cover_search(h, w, target=tau, first_only=True)
    return CoverVector(first[0])


def cover_number(h: Hypergraph, d: Weights = V_WEIGHTS) -> int:
    w = edge_weights(h, d)
    lower = matching_number(h, w)
    tau, _ = _cover_search(h, w, target=None, lower=lower)
    return tau


def enumerate_optima(h: Hypergraph, d: Weights, which: Literal["matchings", "covers"]
                     ) -> list[Matching] | list[CoverVector]:
    """All d-maximum matchings or all minimum integer d-covers, canonically ordered."""
    w = edge_weights(h, d)
    if which == "matchings":
        best, found = _matching_search(h, w, keep_all=True)
        return [Matching(t, best) for t in found]
    if which == "covers":
        tau = cover_number(h, w)
        _, found = _cover_search(h, w, target=tau)
        return [CoverVector(t) for t in found]
    raise ValueError(f"which must be 'matchings' or 'covers', not {which!r}")


def all_max_matchings(h: Hypergraph, d: Weights = V_WEIGHTS) -> list[Matching]:
    return enumerate_optima(h, d, "matchings")  # type: ignore[return-value]


def all_min_covers(h: Hypergraph, d: Weights = V_WEIGHTS) -> list[CoverVector]:
    return enumerate_optima(h, d, "covers")  # type: ignore[return-value]


# -- verifiers ----------------------------------------------------------------

@dataclass(frozen=True)
class KonigReport:
    gamma: int
    tau: int
    matching: Matching
    cover: CoverVector

    @property
    def equal(self) -> bool:
        return self.gamma == self.tau


def verify_konig(h: Hypergraph, d: Weights = V_WEIGHTS) -> KonigReport:
    """Compute both sides of the matching/cover duality for weights d."""
    w = edge_weights(h, d)
    mt = max_matching(h, w)
    cv = min_vertex_cover(h, w)
    assert is_matching(h, mt.edges) and is_cover(h, w, cv.values)
    assert mt.weight <= cv.total, "weak duality violated"
    return KonigReport(mt.weight, cv.total, mt, cv)


def drop_zero_weight(h: Hypergraph, w: Sequence[int]) -> tuple[Hypergraph, tuple[int, ...]] | None:
    """Remove zero-weight edges (and the vertices they alone covered)."""
    keep = [j for j in range(h.m) if w[j] > 0]
    if not keep:
        return None
    edges = tuple(h.edges[j] for j in keep)
    used = set().union(*edges)
    sub = Hypergraph(tuple(v for v in h.vertices if v in used), edges, True)
    return sub, tuple(w[j] for j in keep)


@dataclass(frozen=True)
class DegreeBoundReport:
    q: int
    slack: int
    hypothesis_holds: bool
    bound: int
    gamma_V: int
    balanced: bool

    @property
    def conclusion_holds(self) -> bool:
        return self.gamma_V >= self.bound

    @property
    def ok(self) -> bool:
        """False only for a balanced instance whose hypothesis holds but bound fails."""
        return not (self.balanced and self.hypothesis_holds) or self.conclusion_holds


def degree_bound(h: Hypergraph, q: int) -> DegreeBoundReport:
    if q < 1:
        raise ValueError("q must be at least 1")
    delta = h.max_degree()
    slack = sum(delta - s.bit_count() for s in h.star_masks)
    return DegreeBoundReport(
        q=q, slack=slack, hypothesis_holds=slack <= q * delta - 1,
        bound=h.n - q + 1, gamma_V=matching_number(h, V_WEIGHTS),
        balanced=is_balanced(h).balanced)


def _require_balanced(h: Hypergraph) -> None:
    if not is_balanced(h).balanced:
        raise NotBalanced("operation requires a balanced hypergraph")


def check_matcheq(h: Hypergraph) -> bool:
    """Every minimum V-cover weighs each edge of the canonical maximum matching at exactly |m|."""
    _require_balanced(h)
    mt = max_matching(h, V_WEIGHTS)
    for cv in all_min_covers(h, V_WEIGHTS):
        for j in mt.edges:
            if sum(cv.values[i] for i in bits(h.edge_masks[j])) != len(h.edges[j]):
                return False
    return True


@dataclass(frozen=True)
class Vc1Report:
    vertex: int
    gamma: int
    gamma_deleted: int
    drop_by_one: bool
    exists_cover_with_xv_1: bool

    @property
    def iff_holds(self) -> bool:
        return self.drop_by_one == self.exists_cover_with_xv_1


def check_vc1(h: Hypergraph, v: int) -> Vc1Report:
    """Compare γ_V(H \\ v) = γ_V(H) - 1 against a minimum cover with x_v = 1."""
    if v not in h.index:
        raise UnknownTarget(v)
    _require_balanced(h)
    hv = delete(h, "weak-vertex", v)  # raises ResultEmpty
    g = matching_number(h, V_WEIGHTS)
    gv = matching_number(hv, V_WEIGHTS)
    pos = h.index[v]
    exists = any(cv.values[pos] == 1 for cv in all_min_covers(h, V_WEIGHTS))
    return Vc1Report(v, g, gv, gv == g - 1, exists)


__all__ = [
    "WeightFn", "E_WEIGHTS", "V_WEIGHTS", "edge_weights", "Matching",
    "CoverVector", "is_matching", "is_cover", "max_matching",
    "matching_number", "min_vertex_cover", "cover_number", "enumerate_optima",
    "all_max_matchings", "all_min_covers", "verify_konig", "KonigReport",
    "drop_zero_weight", "degree_bound", "DegreeBoundReport", "check_matcheq",
    "check_vc1", "Vc1Report", "ResultEmpty",
]
