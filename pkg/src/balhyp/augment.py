"""Coloring-based matching augmentation.

Given an edge e and, for each v in e, a matching M_v avoiding v, the
multiset union of the M_v together with e has maximum degree at most |e|.
Coloring it with |e| colors yields a color class whose weight exceeds the
lightest M_v.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .balance import is_balanced
from .coloring import edge_coloring
from .core import Hypergraph
from .errors import MatchingCoversForbiddenVertex, NotAMatching, NotBalanced, TheoremViolation
from .solve import Matching, Weights, edge_weights, is_matching, max_matching, matching_number


@dataclass(frozen=True)
class UnionInstance:
    base_edge: int
    family: dict[int, tuple[int, ...]]
    hypergraph: Hypergraph
    origin: tuple[int, ...]  # union edge position -> edge index in H


def build_union(h: Hypergraph, e: int, family: Mapping[int, Iterable[int]]) -> UnionInstance:
    """Assemble (∪ V(M_v) ∪ e, ⋃* M_v + [e]) as a multiset hypergraph."""
    if not 0 <= e < h.m:
        raise ValueError(f"unknown edge {e}")
    fam = {v: tuple(sorted(set(ms))) for v, ms in family.items()}
    for v, ms in fam.items():
        if not is_matching(h, ms):
            raise NotAMatching(f"M_{v} = {list(ms)} is not a matching")
        if any(v in h.edges[j] for j in ms):
            raise MatchingCoversForbiddenVertex(f"M_{v} covers {v}")
    if set(fam) != set(h.edges[e]):
        raise ValueError("family must hold exactly one matching per vertex of e")
    origin: list[int] = []
    for v in sorted(fam, key=h.index.__getitem__):
        origin.extend(fam[v])
    origin.append(e)
    edges = tuple(h.edges[j] for j in origin)
    used = set().union(*edges)
    union = Hypergraph(tuple(v for v in h.vertices if v in used), edges, True)
    assert union.max_degree() <= len(h.edges[e])
    return UnionInstance(e, fam, union, tuple(origin))


def family_weights(h: Hypergraph, d: Weights, family: Mapping[int, Iterable[int]]) -> dict[int, int]:
    w = edge_weights(h, d)
    return {v: sum(w[j] for j in set(ms)) for v, ms in family.items()}


def augment_step(h: Hypergraph, d: Weights, e: int,
                 family: Mapping[int, Iterable[int]]) -> Matching:
    """Heaviest color class of the union instance, as a matching of H."""
    w = edge_weights(h, d)
    if w[e] < 1:
        raise ValueError("augmenting edge needs positive weight")
    inst = build_union(h, e, family)
    if not is_balanced(inst.hypergraph).balanced:
        raise NotBalanced("union instance is not balanced")
    coloring = edge_coloring(inst.hypergraph, check_balanced=False)
    assert coloring.k <= len(h.edges[e])
    best: tuple[int, ...] | None = None
    best_w = -1
    for cls in coloring.classes:
        orig = tuple(sorted(inst.origin[i] for i in cls))
        assert len(set(orig)) == len(orig), "a color class repeated an edge"
        cw = sum(w[j] for j in orig)
        if cw > best_w or (cw == best_w and best is not None and orig < best):
            best, best_w = orig, cw
    assert best is not None and is_matching(h, best)
    floor = min(family_weights(h, w, inst.family).values())
    if best_w < floor + 1:
        raise TheoremViolation(
            f"heaviest class weighs {best_w}, below 1 + min family weight {floor}")
    return Matching(best, best_w)


@dataclass
class AugmentationRun:
    matching: Matching
    gamma: int
    steps: list[dict] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return self.matching.weight == self.gamma


def avoiding_matchings(h: Hypergraph, w: tuple[int, ...]) -> dict[int, Matching]:
    """For each vertex v, a d-maximum matching of H - v (as edges of H)."""
    out = {}
    for v in h.vertices:
        keep = [j for j in range(h.m) if v not in h.edges[j]]
        if not keep:
            out[v] = Matching((), 0)
            continue
        edges = tuple(h.edges[j] for j in keep)
        sub = Hypergraph(h.vertices, edges, False)
        mt = max_matching(sub, [w[j] for j in keep])
        out[v] = Matching(tuple(keep[i] for i in mt.edges), mt.weight)
    return out


def matching_via_augmentation(h: Hypergraph, d: Weights,
                              start: Iterable[int] | None = None) -> AugmentationRun:
    """Greedy augmentation loop, cross-checked against the exact solver.

    Families are maximum matchings of H - v.  The loop stops when no edge
    yields a heavier color class than the current matching; ``verified``
    tells whether that stall is optimal.
    """
    if not is_balanced(h).balanced:
        raise NotBalanced("augmentation requires a balanced hypergraph")
    w = edge_weights(h, d)
    current_edges = tuple(sorted(set(start or ())))
    if not is_matching(h, current_edges):
        raise NotAMatching(f"start {list(current_edges)} is not a matching")
    current = Matching(current_edges, sum(w[j] for j in current_edges))
    avoid = avoiding_matchings(h, w)
    run = AugmentationRun(current, matching_number(h, w))
    while True:
        improved = False
        for e in range(h.m):
            if w[e] < 1:
                continue
            family = {v: avoid[v].edges for v in h.edges[e]}
            new = augment_step(h, w, e, family)
            if new.weight > current.weight:
                run.steps.append({
                    "edge": e,
                    "family": {str(v): list(ms) for v, ms in sorted(family.items())},
                    "family_min": min(avoid[v].weight for v in h.edges[e]),
                    "matching": list(new.edges),
                    "weight": new.weight,
                })
                current = new
                improved = True
                break
        if not improved:
            break
    assert current.weight <= run.gamma
    run.matching = current
    return run


__all__ = ["UnionInstance", "build_union", "augment_step", "family_weights",
           "matching_via_augmentation", "AugmentationRun", "avoiding_matchings"]
