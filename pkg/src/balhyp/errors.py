"""Exception types and the shared search budget."""

from __future__ import annotations

import contextlib
import contextvars
from typing import Iterator

DEFAULT_MAX_STATES = 10_000_000

_max_states: contextvars.ContextVar[int] = contextvars.ContextVar(
    "balhyp_max_states", default=DEFAULT_MAX_STATES)


class HypergraphError(Exception):
    """Base class for every error raised by this package."""


class EmptyEdge(HypergraphError, ValueError):
    pass


class UncoveredVertex(HypergraphError, ValueError):
    pass


class UnknownVertexInEdge(HypergraphError, ValueError):
    pass


class EmptyVertexSet(HypergraphError, ValueError):
    pass


class EmptyEdgeSet(HypergraphError, ValueError):
    pass


class UnknownTarget(HypergraphError, KeyError):
    pass


class ResultEmpty(HypergraphError):
    """An operation would leave a hypergraph without edges."""


class InstanceTooLarge(HypergraphError):
    """An exhaustive search exceeded its size cap or state budget."""


class NotBalanced(HypergraphError):
    pass


class SearchExhausted(HypergraphError):
    """A search whose success is guaranteed on balanced inputs came up empty."""


class MatchingCoversForbiddenVertex(HypergraphError, ValueError):
    pass


class NotAMatching(HypergraphError, ValueError):
    pass


class GenerationFailed(HypergraphError):
    pass


class ParseError(HypergraphError, ValueError):
    pass


def max_states() -> int:
    return _max_states.get()


@contextlib.contextmanager
def state_budget(limit: int) -> Iterator[None]:
    """Temporarily change the per-search state budget."""
    token = _max_states.set(limit)
    try:
        yield
    finally:
        _max_states.reset(token)


class Budget:
    """Counts search states; raises InstanceTooLarge past the limit."""

    __slots__ = ("limit", "used", "what")

    def __init__(self, what: str, limit: int | None = None) -> None:
        self.limit = max_states() if limit is None else limit
        self.used = 0
        self.what = what

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise InstanceTooLarge(
                f"{self.what}: search exceeded {self.limit} states")


class TheoremViolation(HypergraphError):
    """A property guaranteed for balanced inputs failed; signals a bug or a genuine counterexample."""
