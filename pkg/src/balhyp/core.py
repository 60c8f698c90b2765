"""Hypergraph data model and structural operators, plus walks and the text format.

Vertices are small integers kept in a fixed order; edges are an ordered
multiset of frozensets addressed by their position in ``edges``.  Every
subset is also available as a Python-int bitset over vertex positions
(``edge_masks``) or edge positions (``star_masks``), which is what the
solvers work on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Literal, Sequence

from .errors import (
    EmptyEdge,
    EmptyEdgeSet,
    EmptyVertexSet,
    InstanceTooLarge,
    ParseError,
    ResultEmpty,
    UncoveredVertex,
    UnknownTarget,
    UnknownVertexInEdge,
)

MAX_VERTICES = 64
MAX_EDGES = 64

DeleteMode = Literal["strong-vertex", "weak-vertex", "edge"]


def bits(mask: int) -> Iterable[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple[int, ...]
    edges: tuple[frozenset[int], ...]
    strict_cover: bool = True

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        if len(self.vertices) > MAX_VERTICES or len(self.edges) > MAX_EDGES:
            raise InstanceTooLarge(
                f"{len(self.vertices)} vertices / {len(self.edges)} edges "
                f"exceeds the {MAX_VERTICES}/{MAX_EDGES} cap")
        known = set(self.vertices)
        for i, e in enumerate(self.edges):
            if not e:
                raise EmptyEdge(f"edge {i} is empty")
            stray = e - known
            if stray:
                raise UnknownVertexInEdge(
                    f"edge {i} mentions unknown vertices {sorted(stray)}")
        if self.strict_cover:
            missing = self.uncovered()
            if missing:
                raise UncoveredVertex(missing[0])

    # -- sizes and indexing -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_masks(self) -> tuple[int, ...]:
        idx = self.index
        return tuple(sum(1 << idx[v] for v in e) for e in self.edges)

    @cached_property
    def star_masks(self) -> tuple[int, ...]:
        stars = [0] * self.n
        for j, mask in enumerate(self.edge_masks):
            for i in bits(mask):
                stars[i] |= 1 << j
        return tuple(stars)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def mask_of(self, vs: Iterable[int]) -> int:
        idx = self.index
        return sum(1 << idx[v] for v in set(vs))

    def vertices_of(self, mask: int) -> list[int]:
        return [self.vertices[i] for i in bits(mask)]

    def uncovered(self) -> list[int]:
        seen: set[int] = set().union(*self.edges) if self.edges else set()
        return [v for v in self.vertices if v not in seen]

    def is_graph(self) -> bool:
        return all(len(e) <= 2 for e in self.edges)

    # -- degrees ------------------------------------------------------------

    def degree(self, v: int) -> int:
        if v not in self.index:
            raise UnknownTarget(v)
        return self.star_masks[self.index[v]].bit_count()

    def max_degree(self) -> int:
        return max((s.bit_count() for s in self.star_masks), default=0)

    # -- conveniences -------------------------------------------------------

    def relabel(self) -> Hypergraph:
        """Rename vertices to 1..n following their current order."""
        mapping = {v: i + 1 for i, v in enumerate(self.vertices)}
        return Hypergraph(
            tuple(range(1, self.n + 1)),
            tuple(frozenset(mapping[v] for v in e) for e in self.edges),
            self.strict_cover)

    def normalized(self) -> Hypergraph:
        """Set semantics: drop repeated edges, keeping first occurrences."""
        seen: set[frozenset[int]] = set()
        kept = []
        for e in self.edges:
            if e not in seen:
                seen.add(e)
                kept.append(e)
        return Hypergraph(self.vertices, tuple(kept), self.strict_cover)

    def restrict_to_covered(self) -> Hypergraph:
        """Drop vertices lying in no edge and mark the result as covering."""
        used: set[int] = set().union(*self.edges)
        return Hypergraph(tuple(v for v in self.vertices if v in used),
                          self.edges, True)

    def __repr__(self) -> str:
        es = ", ".join("{" + ",".join(map(str, sorted(e))) + "}"
                       for e in self.edges)
        return f"Hypergraph(V={list(self.vertices)}, E=[{es}])"


def build(vertices: Iterable[int], edges: Iterable[Iterable[int]],
          strict_cover: bool = True, dedupe: bool = False) -> Hypergraph:
    """Validate and assemble a hypergraph.

    Edges form a multiset unless ``dedupe`` is set.
    """
    h = Hypergraph(tuple(vertices), tuple(frozenset(e) for e in edges),
                   strict_cover)
    return h.normalized() if dedupe else h


def induced_sub(h: Hypergraph, w: Iterable[int]) -> Hypergraph:
    """Subhypergraph induced by ``w``: edges are the nonempty traces e∩W."""
    ws = set(w)
    if not ws:
        raise EmptyVertexSet("induced_sub needs a nonempty vertex set")
    unknown = ws - set(h.vertices)
    if unknown:
        raise UnknownTarget(sorted(unknown)[0])
    verts = tuple(v for v in h.vertices if v in ws)
    edges = tuple(e & ws for e in h.edges if e & ws)
    return Hypergraph(verts, edges, h.strict_cover)


def partial(h: Hypergraph, f: Iterable[int]) -> Hypergraph:
    """Partial hypergraph generated by the edge indices ``f``."""
    fs = sorted(set(f))
    if not fs:
        raise EmptyEdgeSet("partial needs a nonempty edge set")
    for j in fs:
        if not 0 <= j < h.m:
            raise UnknownTarget(j)
    edges = tuple(h.edges[j] for j in fs)
    used = set().union(*edges)
    return Hypergraph(tuple(v for v in h.vertices if v in used), edges, True)


def dual(h: Hypergraph) -> Hypergraph:
    """Dual hypergraph: vertices are edge indices, edges are vertex stars."""
    missing = h.uncovered()
    if missing:
        raise UncoveredVertex(missing[0])
    stars = tuple(frozenset(bits(s)) for s in h.star_masks)
    return Hypergraph(tuple(range(h.m)), stars, True)


def delete(h: Hypergraph, mode: DeleteMode, target: int) -> Hypergraph:
    """Apply one of the three deletion operators.

    ``strong-vertex`` removes v with its incident edges (H - v), which may
    leave uncovered vertices; ``weak-vertex`` removes v from every edge
    (H \\ v); ``edge`` removes one edge and shrinks V to the remaining union.
    """
    if mode == "edge":
        if not 0 <= target < h.m:
            raise UnknownTarget(target)
        edges = h.edges[:target] + h.edges[target + 1:]
        if not edges:
            raise ResultEmpty(f"deleting edge {target} leaves no edges")
        used = set().union(*edges)
        return Hypergraph(tuple(v for v in h.vertices if v in used), edges,
                          True)
    if target not in h.index:
        raise UnknownTarget(target)
    verts = tuple(v for v in h.vertices if v != target)
    if mode == "strong-vertex":
        edges = tuple(e for e in h.edges if target not in e)
        if not edges:
            raise ResultEmpty(f"H - {target} has no edges")
        return Hypergraph(verts, edges, False)
    if mode == "weak-vertex":
        edges = tuple(e - {target} for e in h.edges if e - {target})
        if not edges:
            raise ResultEmpty(f"H \\ {target} has no edges")
        return Hypergraph(verts, edges, h.strict_cover)
    raise ValueError(f"unknown deletion mode {mode!r}")


def weak_delete(h: Hypergraph, v: int) -> Hypergraph:
    return delete(h, "weak-vertex", v)


# -- walks --------------------------------------------------------------------

WalkKind = Literal["path", "cycle", "invalid"]


@dataclass(frozen=True)
class Walk:
    """Alternating sequence v0 e1 v1 ... el vl (edges by index)."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    kind: WalkKind = "path"

    @classmethod
    def from_sequence(cls, seq: Sequence[int], kind: WalkKind = "path") -> Walk:
        if len(seq) % 2 == 0:
            raise ValueError("a walk sequence has odd length (starts and ends at a vertex)")
        return cls(tuple(seq[0::2]), tuple(seq[1::2]), kind)

    @property
    def length(self) -> int:
        return len(self.edges)

    def sequence(self) -> list[int]:
        out = [self.vertices[0]]
        for e, v in zip(self.edges, self.vertices[1:]):
            out += [e, v]
        return out

    def vertex_set(self) -> frozenset[int]:
        if self.kind == "cycle":
            return frozenset(self.vertices[:-1])
        return frozenset(self.vertices)


@dataclass(frozen=True)
class WalkClass:
    kind: WalkKind
    strong: bool = False
    length: int = 0
    reason: str = field(default="", compare=False)


def classify_walk(h: Hypergraph, walk: Walk | Sequence[int]) -> WalkClass:
    """Decide whether a vertex/edge sequence is a path or a cycle, and strong.

    Strong means no edge of the walk contains three or more of its vertices.
    """
    if not isinstance(walk, Walk):
        if len(walk) % 2 == 0:
            return WalkClass("invalid", reason="sequence must end at a vertex")
        walk = Walk.from_sequence(walk)
    vs, es = walk.vertices, walk.edges
    for v in vs:
        if v not in h.index:
            return WalkClass("invalid", reason=f"unknown vertex {v}")
    for j in es:
        if not 0 <= j < h.m:
            return WalkClass("invalid", reason=f"unknown edge {j}")
    if len(set(es)) != len(es):
        return WalkClass("invalid", reason="repeated edge")
    for i, j in enumerate(es):
        if vs[i] not in h.edges[j] or vs[i + 1] not in h.edges[j]:
            return WalkClass("invalid", reason=f"edge {j} misses an endpoint")
    l = len(es)
    if l >= 1 and vs[0] == vs[-1]:
        if len(set(vs[:-1])) != l:
            return WalkClass("invalid", reason="repeated vertex")
        kind: WalkKind = "cycle"
        vset = set(vs[:-1])
    else:
        if len(set(vs)) != len(vs):
            return WalkClass("invalid", reason="repeated vertex")
        kind = "path"
        vset = set(vs)
    strong = all(len(h.edges[j] & vset) < 3 for j in es)
    return WalkClass(kind, strong, l)


# -- text format ----------------------------------------------------------------

_WEIGHT = re.compile(r"^w=(-?\d+)$")


def parse_text(text: str) -> tuple[Hypergraph, list[int] | None]:
    """Parse the ``n m`` / one-edge-per-line format.

    Returns the hypergraph on vertices 1..n and the per-edge weights when
    every edge line carries a ``w=`` field (None when no line does).
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if s and not s.startswith("#"):
            lines.append((lineno, s))
    if not lines:
        raise ParseError("empty instance")
    lineno, header = lines[0]
    try:
        n, m = (int(t) for t in header.split())
    except ValueError:
        raise ParseError(f"line {lineno}: expected 'n m', got {header!r}") from None
    if n < 0 or m < 0:
        raise ParseError(f"line {lineno}: negative size")
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges, found {len(body)}")
    edges: list[list[int]] = []
    weights: list[int | None] = []
    for lineno, s in body:
        toks = s.split()
        w = None
        match = _WEIGHT.match(toks[-1]) if toks else None
        if match:
            w = int(match.group(1))
            if w < 0:
                raise ParseError(f"line {lineno}: negative weight")
            toks = toks[:-1]
        try:
            e = [int(t) for t in toks]
        except ValueError:
            raise ParseError(f"line {lineno}: bad vertex id in {s!r}") from None
        if any(not 1 <= v <= n for v in e):
            raise ParseError(f"line {lineno}: vertex ids must lie in 1..{n}")
        edges.append(e)
        weights.append(w)
    try:
        h = build(range(1, n + 1), edges)
    except (EmptyEdge, UncoveredVertex) as exc:
        raise ParseError(f"invalid hypergraph: {type(exc).__name__}: {exc}") from exc
    if all(w is None for w in weights):
        return h, None
    if any(w is None for w in weights):
        raise ParseError("either every edge carries w= or none does")
    return h, [w for w in weights if w is not None]


def format_text(h: Hypergraph, weights: Sequence[int] | None = None) -> str:
    """Serialize to the text format; vertices are written by position 1..n."""
    if weights is not None and len(weights) != h.m:
        raise ValueError("one weight per edge required")
    pos = {v: i + 1 for i, v in enumerate(h.vertices)}
    out = [f"{h.n} {h.m}"]
    for j, e in enumerate(h.edges):
        line = " ".join(str(pos[v]) for v in sorted(e, key=pos.__getitem__))
        if weights is not None:
            line += f" w={weights[j]}"
        out.append(line)
    return "\n".join(out) + "\n"
