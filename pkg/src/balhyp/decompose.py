"""Gallai-Edmonds style vertex decompositions and their verifiers.

DPM splits vertices by their values in minimum V-covers (always 0, always
at least 2, otherwise); FQN does the same for E-covers (always 0, always 1,
otherwise).  The classic D/A/C split is included for comparison.  Every
"for all optima" quantifier is realized by full enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal

from .balance import is_balanced
from .core import Hypergraph, delete
from .errors import NotBalanced, ResultEmpty, TheoremViolation
from .solve import (
    E_WEIGHTS,
    V_WEIGHTS,
    Weights,
    all_max_matchings,
    all_min_covers,
    matching_number,
)

Tag = Literal["DPM", "FQN", "classicDAC"]
_NAMES: dict[str, tuple[str, str, str]] = {
    "DPM": ("D", "P", "M"),
    "FQN": ("F", "Q", "N"),
    "classicDAC": ("D", "A", "C"),
}


@dataclass(frozen=True)
class Decomposition:
    tag: Tag
    parts: tuple[frozenset[int], frozenset[int], frozenset[int]]

    def __post_init__(self) -> None:
        a, b, c = self.parts
        if a & b or a & c or b & c:
            raise ValueError("decomposition parts overlap")

    @property
    def names(self) -> tuple[str, str, str]:
        return _NAMES[self.tag]

    def __getitem__(self, name: str) -> frozenset[int]:
        return self.parts[self.names.index(name)]

    def as_dict(self) -> dict[str, list[int]]:
        return {k: sorted(p) for k, p in zip(self.names, self.parts)}


def missed_set(h: Hypergraph, d: Weights = V_WEIGHTS) -> frozenset[int]:
    """Vertices left uncovered by at least one d-maximum matching."""
    covered_by_all = h.full_mask
    for mt in all_max_matchings(h, d):
        vm = 0
        for j in mt.edges:
            vm |= h.edge_masks[j]
        covered_by_all &= vm
    return frozenset(h.vertices_of(h.full_mask & ~covered_by_all))


def _require_balanced(h: Hypergraph) -> None:
    if not is_balanced(h).balanced:
        raise NotBalanced("decomposition requires a balanced hypergraph")


def _cover_split(h: Hypergraph, d: Weights, low: Callable[[int], bool],
                 mid: Callable[[int], bool]) -> tuple[frozenset[int], frozenset[int]]:
    covers = all_min_covers(h, d)
    first = frozenset(v for i, v in enumerate(h.vertices)
                      if all(low(cv.values[i]) for cv in covers))
    second = frozenset(v for i, v in enumerate(h.vertices)
                       if all(mid(cv.values[i]) for cv in covers))
    return first, second


def dpm(h: Hypergraph) -> Decomposition:
    """D: some V-maximum matching misses v; P: x_v >= 2 in every minimum V-cover."""
    _require_balanced(h)
    d_match = missed_set(h, V_WEIGHTS)
    d_cover, p = _cover_split(h, V_WEIGHTS, lambda x: x == 0, lambda x: x >= 2)
    if d_match != d_cover:
        raise TheoremViolation(
            f"D by matchings {sorted(d_match)} != D by covers {sorted(d_cover)}")
    rest = frozenset(h.vertices) - d_match - p
    return Decomposition("DPM", (d_match, p, rest))


def fqn(h: Hypergraph) -> Decomposition:
    """F: some E-maximum matching misses v; Q: x_v = 1 in every minimum E-cover."""
    _require_balanced(h)
    f_match = missed_set(h, E_WEIGHTS)
    f_cover, q = _cover_split(h, E_WEIGHTS, lambda x: x == 0, lambda x: x == 1)
    if f_match != f_cover:
        raise TheoremViolation(
            f"F by matchings {sorted(f_match)} != F by covers {sorted(f_cover)}")
    rest = frozenset(h.vertices) - f_match - q
    return Decomposition("FQN", (f_match, q, rest))


def classic_dac(h: Hypergraph) -> Decomposition:
    """D as in dpm; A: outside D but sharing an edge with a vertex of D."""
    d = missed_set(h, V_WEIGHTS)
    dmask = h.mask_of(d)
    near = 0
    for mask in h.edge_masks:
        if mask & dmask:
            near |= mask
    a = frozenset(h.vertices_of(near & ~dmask))
    c = frozenset(h.vertices) - d - a
    return Decomposition("classicDAC", (d, a, c))


def is_factor_critical(h: Hypergraph) -> bool:
    """True iff every H \\ v has a matching covering all of V - {v}."""
    for v in h.vertices:
        try:
            hv = delete(h, "weak-vertex", v)
        except ResultEmpty:
            continue  # nothing left to cover
        if matching_number(hv, V_WEIGHTS) != hv.n:
            return False
    return True


def is_bipartite_graph(h: Hypergraph) -> bool:
    """Every edge has exactly two vertices and the graph has no odd cycle."""
    if any(len(e) != 2 for e in h.edges):
        return False
    side: dict[int, int] = {}
    adj: dict[int, list[int]] = {v: [] for v in h.vertices}
    for e in h.edges:
        a, b = tuple(e)
        adj[a].append(b)
        adj[b].append(a)
    for root in h.vertices:
        if root in side:
            continue
        side[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in side:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return False
    return True


# -- verifiers ------------------------------------------------------------------

@dataclass
class ItemResult:
    passed: bool = True
    vacuous: bool = True
    details: list[str] = field(default_factory=list)

    def check(self, ok: bool, msg: str) -> None:
        self.vacuous = False
        if not ok:
            self.passed = False
            self.details.append(msg)

    def note(self, msg: str) -> None:
        self.details.append(msg)

    def as_dict(self) -> dict:
        return {"passed": self.passed, "vacuous": self.vacuous,
                "details": list(self.details)}


@dataclass
class TheoremReport:
    theorem: str
    decomposition: Decomposition
    items: dict[int, ItemResult]

    @property
    def passed(self) -> bool:
        return all(it.passed for it in self.items.values())

    def as_dict(self) -> dict:
        return {"theorem": self.theorem,
                "sets": self.decomposition.as_dict(),
                "items": {str(k): v.as_dict() for k, v in sorted(self.items.items())},
                "passed": self.passed}


def _gamma_after(h: Hypergraph, v: int, d: Weights) -> int:
    try:
        hv = delete(h, "weak-vertex", v)
    except ResultEmpty:
        return 0
    return matching_number(hv, d)


def _fmt(s: frozenset[int]) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


def _inclusions(item: ItemResult, v: int, pairs: list[tuple[str, frozenset[int], str, frozenset[int]]]) -> None:
    for lname, lhs, rname, rhs in pairs:
        item.check(lhs <= rhs, f"v={v}: {lname}={_fmt(lhs)} not within {rname}={_fmt(rhs)}")


def _equalities(item: ItemResult, v: int, pairs: list[tuple[str, frozenset[int], str, frozenset[int]]]) -> None:
    for lname, lhs, rname, rhs in pairs:
        item.check(lhs == rhs, f"v={v}: {lname}={_fmt(lhs)} != {rname}={_fmt(rhs)}")


def verify_galed2(h: Hypergraph) -> TheoremReport:
    """Check the seven DPM properties item by item."""
    dec = dpm(h)
    D, P, M = dec.parts
    g = matching_number(h, V_WEIGHTS)
    items = {i: ItemResult() for i in range(1, 8)}
    for v in h.vertices:
        if v in D:
            items[1].check(_gamma_after(h, v, "V") == g, f"v={v}: γ_V changes")
        elif v in P:
            items[2].check(_gamma_after(h, v, "V") >= g, f"v={v}: γ_V drops")
        else:
            gv = _gamma_after(h, v, "V")
            items[3].check(gv == g - 1, f"v={v}: γ_V(H\\v)={gv}, γ_V(H)={g}")
    for j, e in enumerate(h.edges):
        items[4].check(not e <= D, f"edge {j} lies inside D")
    for mt in all_max_matchings(h, V_WEIGHTS):
        for j in mt.edges:
            e = h.edges[j]
            items[5].check(len(e) >= 2 * len(e & P), f"edge {j}: |m| < 2|m∩P|")
            if e & M:
                items[5].check(len(e) >= 2 * len(e & P) + 1,
                               f"edge {j}: |m| < 2|m∩P|+1 though m meets M")
    for v in sorted(D | M, key=h.index.__getitem__):
        try:
            sub = dpm(delete(h, "weak-vertex", v))
        except ResultEmpty:
            items[6 if v in D else 7].note(f"v={v}: H\\v empty, vacuous")
            continue
        D2, P2, M2 = sub.parts
        if v in D:
            Dv = D - {v}
            _inclusions(items[6], v, [
                ("M_H", M, "M_H\\v", M2),
                ("M_H\\v", M2, "D_H-v∪P_H∪M_H", Dv | P | M),
                ("P_H", P, "M_H\\v∪P_H\\v", M2 | P2),
                ("P_H\\v", P2, "D_H-v∪P_H", Dv | P),
                ("D_H-v", Dv, "M_H\\v∪P_H\\v∪D_H\\v", M2 | P2 | D2),
                ("D_H\\v", D2, "D_H-v", Dv),
            ])
        else:
            Mv = M - {v}
            _inclusions(items[7], v, [
                ("M_H-v", Mv, "M_H\\v∪P_H\\v∪D_H\\v", M2 | P2 | D2),
                ("M_H\\v", M2, "M_H-v", Mv),
                ("P_H", P, "P_H\\v", P2),
                ("P_H\\v", P2, "M_H-v∪P_H", Mv | P),
                ("D_H", D, "D_H\\v", D2),
                ("D_H\\v", D2, "M_H-v∪D_H", Mv | D),
            ])
    return TheoremReport("galed2", dec, items)


def verify_galed1(h: Hypergraph) -> TheoremReport:
    """Check the seven FQN properties item by item."""
    dec = fqn(h)
    F, Q, N = dec.parts
    g = matching_number(h, E_WEIGHTS)
    in_singleton = {next(iter(e)) for e in h.edges if len(e) == 1}
    items = {i: ItemResult() for i in range(1, 8)}
    for v in h.vertices:
        if v in F:
            items[1].check(_gamma_after(h, v, "E") == g, f"v={v}: γ_E changes")
        elif v in Q:
            if v in in_singleton:
                items[2].note(f"v={v}: lies in a singleton edge, exempt")
            else:
                gv = _gamma_after(h, v, "E")
                items[2].check(g < gv, f"v={v}: γ_E(H\\v)={gv} not above γ_E(H)={g}")
        else:
            gv = _gamma_after(h, v, "E")
            items[3].check(gv == g, f"v={v}: γ_E(H\\v)={gv}, γ_E(H)={g}")
    for j, e in enumerate(h.edges):
        items[4].check(not e <= F, f"edge {j} lies inside F")
    for mt in all_max_matchings(h, E_WEIGHTS):
        for j in mt.edges:
            e = h.edges[j]
            inside = bool(e <= N | Q and e & Q)
            if len(e) == 1:
                # {q} with x_q = 1 is tight; the statement only binds |m| >= 2
                if inside:
                    items[5].note(f"edge {j}={_fmt(e)}: singleton in Q, exempt")
                continue
            items[5].check(not inside,
                           f"edge {j}={_fmt(e)} of an E-maximum matching lies in N∪Q and meets Q")
    for v in sorted(F | N, key=h.index.__getitem__):
        try:
            sub = fqn(delete(h, "weak-vertex", v))
        except ResultEmpty:
            items[6 if v in F else 7].note(f"v={v}: H\\v empty, vacuous")
            continue
        F2, Q2, N2 = sub.parts
        if v in F:
            _equalities(items[6], v, [
                ("N_H", N, "N_H\\v", N2),
                ("Q_H", Q, "Q_H\\v", Q2),
                ("F_H-v", F - {v}, "F_H\\v", F2),
            ])
        else:
            Nv = N - {v}
            _inclusions(items[7], v, [
                ("N_H-v", Nv, "N_H\\v∪Q_H\\v∪F_H\\v", N2 | Q2 | F2),
                ("N_H\\v", N2, "N_H-v", Nv),
                ("Q_H", Q, "Q_H\\v", Q2),
                ("Q_H\\v", Q2, "N_H-v∪Q_H", Nv | Q),
                ("F_H", F, "F_H\\v", F2),
                ("F_H\\v", F2, "N_H-v∪F_H", Nv | F),
            ])
    return TheoremReport("galed1", dec, items)


@dataclass(frozen=True)
class EqualityReport:
    dpm: Decomposition
    fqn: Decomposition
    dac: Decomposition
    factor_critical: bool
    bipartite: bool

    @property
    def equalities(self) -> dict[str, bool]:
        return {
            "A=P": self.dac["A"] == self.dpm["P"],
            "C=M": self.dac["C"] == self.dpm["M"],
            "D=F": self.dac["D"] == self.fqn["F"],
            "A=Q": self.dac["A"] == self.fqn["Q"],
            "C=N": self.dac["C"] == self.fqn["N"],
        }

    @property
    def M_empty(self) -> bool:
        return not self.dpm["M"]

    @property
    def consistent(self) -> bool:
        """Bipartite graphs need all five equalities; M empty needs A=P and C=M."""
        eq = self.equalities
        if self.bipartite and not all(eq.values()):
            return False
        if self.M_empty and not (eq["A=P"] and eq["C=M"]):
            return False
        return True

    def as_dict(self) -> dict:
        return {"equalities": self.equalities, "factor_critical": self.factor_critical,
                "bipartite": self.bipartite, "M_empty": self.M_empty,
                "consistent": self.consistent,
                "DPM": self.dpm.as_dict(), "FQN": self.fqn.as_dict(),
                "classicDAC": self.dac.as_dict()}


def compare_equalities(h: Hypergraph) -> EqualityReport:
    return EqualityReport(dpm(h), fqn(h), classic_dac(h),
                          is_factor_critical(h), is_bipartite_graph(h))


__all__ = ["Decomposition", "missed_set", "dpm", "fqn", "classic_dac",
           "is_factor_critical", "is_bipartite_graph", "verify_galed2",
           "verify_galed1", "compare_equalities", "EqualityReport",
           "TheoremReport", "ItemResult"]
