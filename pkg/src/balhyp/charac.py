"""Characterizations of balancedness via D-sets and stable sets.

``check_charac_D`` quantifies over every partial subhypergraph (all
nonempty trace families {f ∩ W : f ∈ F}), which is doubly exponential, so
it is capped; a sampled mode exists for larger inputs and can only refute.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Mapping, Sequence, Union

from .balance import is_balanced
from .core import Hypergraph, Walk, bits
from .errors import Budget, InstanceTooLarge
from .gen import SplitMix64
from .solve import Weights, edge_weights

CHARAC_MAX_EDGES = 8
CHARAC_MAX_VERTICES = 10

VertexWeights = Union[Sequence[int], Mapping[int, int], None]


@dataclass(frozen=True)
class StableSet:
    vertices: frozenset[int]
    weight: int


def vertex_weights(h: Hypergraph, d: VertexWeights) -> tuple[int, ...]:
    """Per-position vertex weights; None means all ones, mappings are keyed by vertex id."""
    if d is None:
        return (1,) * h.n
    if isinstance(d, Mapping):
        return tuple(int(d[v]) for v in h.vertices)
    w = tuple(int(x) for x in d)
    if len(w) != h.n:
        raise ValueError(f"{len(w)} weights for {h.n} vertices")
    return w


def is_stable(h: Hypergraph, s: set[int] | frozenset[int]) -> bool:
    return all(len(e & s) <= 1 for e in h.edges)


def _conflicts(h: Hypergraph) -> list[int]:
    conf = [0] * h.n
    for mask in h.edge_masks:
        if mask.bit_count() >= 2:
            for i in bits(mask):
                conf[i] |= mask & ~(1 << i)
    return conf


def _stable_search(h: Hypergraph, w: tuple[int, ...], keep_all: bool) -> tuple[int, list[int]]:
    conf = _conflicts(h)
    n = h.n
    budget = Budget("stable set search")
    best = -1
    found: list[int] = []

    def dfs(i: int, chosen: int, blocked: int, total: int) -> None:
        nonlocal best, found
        budget.tick()
        if i == n:
            if total > best:
                best, found = total, [chosen]
            elif total == best:
                found.append(chosen)
            return
        rest = sum(w[k] for k in range(i, n) if not blocked >> k & 1)
        if total + rest < best or (not keep_all and total + rest == best and found):
            return
        if not blocked >> i & 1:
            dfs(i + 1, chosen | 1 << i, blocked | conf[i], total + w[i])
        dfs(i + 1, chosen, blocked, total)

    dfs(0, 0, 0, 0)
    return best, found


def _position_key(mask: int) -> list[int]:
    return list(bits(mask))


def max_weight_stable(h: Hypergraph, d: VertexWeights = None) -> StableSet:
    """Maximum-weight stable set; ties go to the lexicographically smallest position list."""
    w = vertex_weights(h, d)
    if any(x < 0 for x in w):
        raise ValueError("vertex weights must be nonnegative")
    best, found = _stable_search(h, w, keep_all=True)
    mask = min(found, key=_position_key)
    return StableSet(frozenset(h.vertices_of(mask)), best)


def all_max_weight_stable(h: Hypergraph, d: VertexWeights = None) -> list[StableSet]:
    w = vertex_weights(h, d)
    best, found = _stable_search(h, w, keep_all=True)
    return [StableSet(frozenset(h.vertices_of(mk)), best)
            for mk in sorted(found, key=_position_key)]


# -- D-set characterization ------------------------------------------------------

def _missed_mask(masks: Sequence[int], weights: Sequence[int]) -> int:
    """Vertices (bitmask) missed by some maximum matching of an edge-mask multiset."""
    m = len(masks)
    allv = 0
    for mk in masks:
        allv |= mk
    best = -1
    covered_all = allv

    def dfs(j: int, used: int, total: int) -> None:
        nonlocal best, covered_all
        if j == m:
            if total > best:
                best, covered_all = total, used
            elif total == best:
                covered_all &= used
            return
        if total + sum(weights[k] for k in range(j, m) if not masks[k] & used) < best:
            return
        if not masks[j] & used:
            dfs(j + 1, used | masks[j], total + weights[j])
        dfs(j + 1, used, total)

    dfs(0, 0, 0)
    return allv & ~covered_all


@dataclass(frozen=True)
class CharacDReport:
    holds: bool
    mode: Literal["exhaustive", "sampled"]
    checked: int
    witness: Hypergraph | None = None
    witness_edge: int | None = None
    witness_D: frozenset[int] | None = None


def _sub_from_masks(h: Hypergraph, traces: Sequence[int]) -> Hypergraph:
    used = 0
    for t in traces:
        used |= t
    return Hypergraph(tuple(h.vertices_of(used)),
                      tuple(frozenset(h.vertices_of(t)) for t in traces), True)


def _check_traces(h: Hypergraph, fmask: int, wmask: int, seen: set,
                  ) -> tuple[Hypergraph, int, frozenset[int]] | None:
    traces = [h.edge_masks[j] & wmask for j in bits(fmask)]
    traces = [t for t in traces if t]
    if not traces:
        return None
    key = tuple(sorted(traces))
    if key in seen:
        return None
    seen.add(key)
    dmask = _missed_mask(traces, [t.bit_count() for t in traces])
    for i, t in enumerate(traces):
        if t & ~dmask == 0:
            sub = _sub_from_masks(h, traces)
            return sub, i, frozenset(h.vertices_of(dmask))
    return None


def check_charac_D(h: Hypergraph, sample: int | None = None, seed: int = 0) -> CharacDReport:
    """No partial subhypergraph has an edge inside its D-set.

    With ``sample`` set, that many random (F, W) pairs are drawn instead of
    enumerating all of them; a sampled "holds" is only an absence of
    counterexamples.
    """
    seen: set = set()
    budget = Budget("check_charac_D")
    if sample is not None:
        rng = SplitMix64(seed)
        for _ in range(sample):
            budget.tick()
            fmask = sum(1 << j for j in range(h.m) if rng.below(2)) or 1 << rng.below(h.m)
            vf = 0
            for j in bits(fmask):
                vf |= h.edge_masks[j]
            wmask = sum(1 << i for i in bits(vf) if rng.below(2)) or vf
            hit = _check_traces(h, fmask, wmask, seen)
            if hit:
                return CharacDReport(False, "sampled", len(seen), *hit)
        return CharacDReport(True, "sampled", len(seen))
    if h.m > CHARAC_MAX_EDGES or h.n > CHARAC_MAX_VERTICES:
        raise InstanceTooLarge(
            f"exhaustive partial-subhypergraph scan capped at m <= {CHARAC_MAX_EDGES}, "
            f"n <= {CHARAC_MAX_VERTICES}")
    for fmask in range(1, 1 << h.m):
        vf = 0
        for j in bits(fmask):
            vf |= h.edge_masks[j]
        # enumerate nonempty submasks of V(F)
        wmask = vf
        while wmask:
            budget.tick()
            hit = _check_traces(h, fmask, wmask, seen)
            if hit:
                return CharacDReport(False, "exhaustive", len(seen), *hit)
            wmask = (wmask - 1) & vf
    return CharacDReport(True, "exhaustive", len(seen))


def weighted_missed_set(h: Hypergraph, d: Weights) -> frozenset[int]:
    w = edge_weights(h, d)
    return frozenset(h.vertices_of(_missed_mask(h.edge_masks, w)))


def check_weighted_D(h: Hypergraph, d: Weights) -> bool:
    """No edge lies inside the set of vertices missed by some d-maximum matching."""
    w = edge_weights(h, d)
    if any(x < 1 for x in w):
        raise ValueError("weights must be at least 1")
    dmask = _missed_mask(h.edge_masks, w)
    return all(mask & ~dmask for mask in h.edge_masks)


@dataclass(frozen=True)
class StableReport:
    holds: bool
    failing_vertex: int | None
    met_edges: tuple[int, ...]


def check_charac_stable(h: Hypergraph, d: VertexWeights = None) -> StableReport:
    """Every vertex lies in an edge met by every maximum-weight stable set."""
    w = vertex_weights(h, d)
    if any(x < 1 for x in w):
        raise ValueError("weights must be at least 1")
    _, optima = _stable_search(h, w, keep_all=True)
    met = tuple(j for j, mask in enumerate(h.edge_masks)
                if all(mask & s for s in optima))
    reach = 0
    for j in met:
        reach |= h.edge_masks[j]
    missing = h.full_mask & ~reach
    failing = h.vertices[(missing & -missing).bit_length() - 1] if missing else None
    return StableReport(not missing, failing, met)


# -- refutation witnesses for unbalanced inputs ---------------------------------------

def cycle_subhypergraph(h: Hypergraph, walk: Walk) -> Hypergraph:
    """The partial subhypergraph traced by a strong cycle: its edges cut down to V(C)."""
    vc = walk.vertex_set()
    return Hypergraph(tuple(v for v in h.vertices if v in vc),
                      tuple(h.edges[j] & vc for j in walk.edges), True)


@dataclass(frozen=True)
class Refutation:
    which: Literal["weighted", "stable"]
    hypergraph: Hypergraph
    weights: tuple[int, ...]
    on_cycle: bool


def refute(h: Hypergraph, which: Literal["weighted", "stable"]) -> Refutation | None:
    """Find a (partial subhypergraph, unit weights) pair breaking the check.

    Tries H itself first, then the strong odd cycle certifying unbalancedness.
    Returns None for balanced inputs.
    """
    cert = is_balanced(h)
    if cert.balanced or cert.witness is None:
        return None
    for sub, on_cycle in ((h, False), (cycle_subhypergraph(h, cert.witness), True)):
        if which == "weighted":
            ones = (1,) * sub.m
            if not check_weighted_D(sub, ones):
                return Refutation(which, sub, ones, on_cycle)
        else:
            ones = (1,) * sub.n
            if not check_charac_stable(sub, ones).holds:
                return Refutation(which, sub, ones, on_cycle)
    return None
