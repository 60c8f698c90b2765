"""Seeded instance generators.

All randomness comes from SplitMix64 (Steele, Lea & Flood 2014): state
advances by 0x9E3779B97F4A7C15 and outputs pass through the standard
two-multiply finalizer.  Keeping the generator in-package pins outputs
across platforms and Python versions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence, TypeVar

from . import core
from .balance import is_balanced
from .core import Hypergraph, build
from .errors import EmptyEdgeSet, EmptyVertexSet, GenerationFailed, NotBalanced, ResultEmpty

MASK64 = (1 << 64) - 1
T = TypeVar("T")


class SplitMix64:
    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def choice(self, seq: Sequence[T]) -> T:
        return seq[self.below(len(seq))]

    def shuffle(self, items: list[T]) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def _tidy(h: Hypergraph) -> Hypergraph:
    return h.restrict_to_covered().relabel()


def gen_interval(n: int, m: int, max_len: int, seed: int) -> Hypergraph:
    """Random contiguous intervals of 1..n; uncovered points are dropped."""
    if n < 1 or m < 1 or max_len < 1:
        raise ValueError("n, m and max_len must be positive")
    rng = SplitMix64(seed)
    edges = []
    for _ in range(m):
        length = 1 + rng.below(min(max_len, n))
        start = rng.below(n - length + 1)
        edges.append(range(start + 1, start + length + 1))
    h = _tidy(build(range(1, n + 1), edges, strict_cover=False))
    if not is_balanced(h).balanced:
        raise GenerationFailed("interval instance came out unbalanced")
    return h


def gen_bipartite(n1: int, n2: int, p: float, seed: int) -> Hypergraph:
    """Random bipartite graph between 1..n1 and n1+1..n1+n2, isolated vertices pruned."""
    if n1 < 1 or n2 < 1 or not 0.0 <= p <= 1.0:
        raise ValueError("need n1, n2 >= 1 and p in [0, 1]")
    rng = SplitMix64(seed)
    edges = [(i, n1 + j) for i in range(1, n1 + 1) for j in range(1, n2 + 1)
             if rng.random() < p]
    if not edges:
        edges = [(1, n1 + 1)]
    h = _tidy(build(range(1, n1 + n2 + 1), edges, strict_cover=False))
    if not is_balanced(h).balanced:
        raise GenerationFailed("bipartite instance came out unbalanced")
    return h


ClosureOp = Literal["induced", "partial", "strong-vertex", "weak-vertex", "edge", "dual"]
CLOSURE_OPS: tuple[ClosureOp, ...] = ("induced", "partial", "strong-vertex",
                                      "weak-vertex", "edge", "dual")


def apply_closure_op(h: Hypergraph, op: ClosureOp, rng: SplitMix64) -> Hypergraph:
    """One random heredity-preserving operation, tidied to vertices 1..n."""
    if op == "induced":
        w = [v for v in h.vertices if rng.below(2)]
        return _tidy(core.induced_sub(h, w))
    if op == "partial":
        f = [j for j in range(h.m) if rng.below(2)]
        return _tidy(core.partial(h, f))
    if op == "dual":
        return _tidy(core.dual(h))
    if op == "edge":
        return _tidy(core.delete(h, "edge", rng.below(h.m)))
    return _tidy(core.delete(h, op, rng.choice(h.vertices)))


def gen_closure(base: Hypergraph, ops_count: int, seed: int,
                max_tries: int = 32) -> Hypergraph:
    """Apply ``ops_count`` random closure operations to a balanced base."""
    if not is_balanced(base).balanced:
        raise NotBalanced("closure generator needs a balanced base")
    rng = SplitMix64(seed)
    h = base
    for _ in range(ops_count):
        for _ in range(max_tries):
            op = rng.choice(CLOSURE_OPS)
            try:
                h = apply_closure_op(h, op, rng)
                break
            except (ResultEmpty, EmptyVertexSet, EmptyEdgeSet):
                continue
        else:
            raise ResultEmpty(f"no nonempty closure result after {max_tries} tries")
    if not is_balanced(h).balanced:
        raise GenerationFailed("closure result is unbalanced")
    return h


def gen_planted(n: int, seed: int) -> Hypergraph:
    """A strong odd cycle spliced into a random interval base.

    Base vertices hang off the cycle through 2-edges, and with some
    probability one cycle edge is widened by a base vertex; neither keeps
    the cycle from being strong.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    rng = SplitMix64(seed)
    lengths = list(range(3, n + 1, 2))
    length = rng.choice(lengths)
    cycle = list(range(1, length + 1))
    rest = list(range(length + 1, n + 1))
    edges: list[set[int]] = [{cycle[i], cycle[(i + 1) % length]} for i in range(length)]
    if rest:
        for _ in range(rng.below(len(rest) + 1)):
            size = 1 + rng.below(min(3, len(rest)))
            start = rng.below(len(rest) - size + 1)
            edges.append(set(rest[start:start + size]))
        for v in rest:
            if rng.below(2) or not any(v in e for e in edges):
                edges.append({v, rng.choice(cycle)})
        if rng.below(2):
            edges[rng.below(length)].add(rng.choice(rest))
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    relabel = dict(zip(range(1, n + 1), labels))
    h = build(range(1, n + 1), [{relabel[v] for v in e} for e in edges])
    cert = is_balanced(h)
    if cert.balanced or cert.witness is None or cert.witness.length % 2 == 0:
        raise GenerationFailed("planted instance is not certified unbalanced")
    return h


Family = Literal["interval", "bipartite", "closure", "planted"]


@dataclass(frozen=True)
class GenSpec:
    family: Family
    n: int = 6
    m: int = 5
    max_len: int = 3
    n2: int = 3
    p: float = 0.5
    ops: int = 3
    seed: int = 0

    def generate(self) -> Hypergraph:
        if self.family == "interval":
            return gen_interval(self.n, self.m, self.max_len, self.seed)
        if self.family == "bipartite":
            return gen_bipartite(self.n, self.n2, self.p, self.seed)
        if self.family == "closure":
            if self.seed % 2:
                base = gen_bipartite(self.n, self.n2, self.p, self.seed)
            else:
                base = gen_interval(self.n, self.m, self.max_len, self.seed)
            return gen_closure(base, self.ops, self.seed ^ 0x5DEECE66D)
        if self.family == "planted":
            return gen_planted(self.n, self.seed)
        raise ValueError(f"unknown family {self.family!r}")
