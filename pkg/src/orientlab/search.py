"""Witness search for cycle and path orientations inside a digraph.

Containment is the non-induced kind: an injective vertex map under which
every pattern arc is an arc of the host.  Searches are deterministic; start
vertices are tried in order of descending total degree, ties by id.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from .digraph import Digraph, members
from .pattern import CyclePattern, PathPattern, forbidden_family

__all__ = [
    "Embedding",
    "Status",
    "SearchOutcome",
    "StepCounter",
    "BudgetExhausted",
    "contains_pattern",
    "find_oriented_path",
    "iter_cycle_embeddings",
    "iter_path_embeddings",
    "forbidden_family_check",
    "verify_embedding",
]

Pattern = Union[CyclePattern, PathPattern]


@dataclass(frozen=True)
class Embedding:
    """Images of the pattern's vertices, in pattern order."""

    pattern: Pattern
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))

    @property
    def is_cycle(self) -> bool:
        return isinstance(self.pattern, CyclePattern)

    def arcs(self) -> list[tuple[int, int]]:
        """Host arcs used by the embedding, one per pattern symbol."""
        w = self.pattern.word
        m = self.map
        out = []
        for i, s in enumerate(w):
            a, b = m[i], m[(i + 1) % len(m)]
            out.append((a, b) if s == "F" else (b, a))
        return out


class Status(enum.Enum):
    FOUND = "Found"
    NOT_FOUND = "NotFound"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SearchOutcome:
    status: Status
    embedding: Optional[Embedding] = None
    exhaustive: bool = False
    steps: int = 0

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND

    def __str__(self) -> str:
        if self.status is Status.FOUND:
            return f"Found({list(self.embedding.map)})"
        if self.status is Status.NOT_FOUND:
            return f"NotFound(exhaustive={self.exhaustive})"
        return f"Inconclusive(steps={self.steps})"


class BudgetExhausted(Exception):
    pass


class StepCounter:
    """Counts extension steps and raises once ``budget`` is exceeded."""

    __slots__ = ("steps", "budget")

    def __init__(self, budget: Optional[int] = None):
        self.steps = 0
        self.budget = budget

    def tick(self, k: int = 1) -> None:
        self.steps += k
        if self.budget is not None and self.steps > self.budget:
            raise BudgetExhausted(self.steps)


def _start_order(D: Digraph, mask: int) -> list[int]:
    vs = members(mask)
    vs.sort(key=lambda v: (-((D.out_mask(v) | D.in_mask(v)) & mask).bit_count(), v))
    return vs


def _step_mask(D: Digraph, v: int, symbol: str) -> int:
    # candidates for the next vertex along a pattern symbol leaving v
    return D.out_mask(v) if symbol == "F" else D.in_mask(v)


def iter_path_embeddings(
    D: Digraph,
    word: str,
    within: Optional[int] = None,
    first_within: Optional[int] = None,
    last_within: Optional[int] = None,
    counter: Optional[StepCounter] = None,
) -> Iterator[list[int]]:
    """Yield every injective embedding of the path word, as vertex lists.

    ``first_within`` / ``last_within`` restrict the two endpoints.
    """
    mask = D.vertex_mask if within is None else within
    counter = counter or StepCounter()
    first = mask if first_within is None else mask & first_within
    last = mask if last_within is None else mask & last_within
    k = len(word)
    if k == 0:
        for v in _start_order(D, mask):
            if first >> v & last >> v & 1:
                counter.tick()
                yield [v]
        return
    path: list[int] = []

    def extend(i: int, used: int) -> Iterator[list[int]]:
        cur = path[-1]
        cand = _step_mask(D, cur, word[i]) & mask & ~used
        if i == k - 1:
            cand &= last
        for w in members(cand):
            counter.tick()
            path.append(w)
            if i == k - 1:
                yield list(path)
            else:
                yield from extend(i + 1, used | 1 << w)
            path.pop()

    for v in _start_order(D, mask):
        if not first >> v & 1:
            continue
        counter.tick()
        path.append(v)
        yield from extend(0, 1 << v)
        path.pop()


def iter_cycle_embeddings(
    D: Digraph,
    word: str,
    within: Optional[int] = None,
    counter: Optional[StepCounter] = None,
) -> Iterator[list[int]]:
    """Yield every injective embedding of the cyclic word, as vertex lists."""
    mask = D.vertex_mask if within is None else within
    counter = counter or StepCounter()
    k = len(word)
    path: list[int] = []
    closing = word[-1]

    def extend(i: int, used: int, close: int) -> Iterator[list[int]]:
        cur = path[-1]
        cand = _step_mask(D, cur, word[i]) & mask & ~used
        if i == k - 2:
            cand &= close
        for w in members(cand):
            counter.tick()
            path.append(w)
            if i == k - 2:
                yield list(path)
            else:
                yield from extend(i + 1, used | 1 << w, close)
            path.pop()

    for v in _start_order(D, mask):
        counter.tick()
        # vertex k-1 must relate to v through the closing symbol
        close = D.in_mask(v) if closing == "F" else D.out_mask(v)
        if not close & mask:
            continue
        path.append(v)
        yield from extend(0, 1 << v, close)
        path.pop()


def _run(gen_factory, pattern, budget) -> SearchOutcome:
    counter = StepCounter(budget)
    try:
        for m in gen_factory(counter):
            return SearchOutcome(Status.FOUND, Embedding(pattern, m), False, counter.steps)
    except BudgetExhausted:
        return SearchOutcome(Status.INCONCLUSIVE, None, False, counter.steps)
    return SearchOutcome(Status.NOT_FOUND, None, True, counter.steps)


def contains_pattern(
    D: Digraph,
    p: CyclePattern,
    budget: Optional[int] = None,
    within: Optional[int] = None,
) -> SearchOutcome:
    """Search for a copy of the cycle orientation ``p``.

    The embedding is reported in ``p``'s own vertex order.  ``budget`` counts
    extension steps; running out gives ``Inconclusive``.
    """
    if not isinstance(p, CyclePattern):
        p = CyclePattern(p)
    return _run(lambda c: iter_cycle_embeddings(D, p.word, within, c), p, budget)


def find_oriented_path(
    D: Digraph,
    p: PathPattern,
    forbidden=None,
    budget: Optional[int] = None,
    within: Optional[int] = None,
) -> SearchOutcome:
    """Search for the oriented path ``p`` avoiding the ``forbidden`` vertices."""
    if not isinstance(p, PathPattern):
        p = PathPattern(p)
    mask = D.vertex_mask if within is None else within
    if forbidden is not None:
        fmask = forbidden if isinstance(forbidden, int) else sum(1 << v for v in set(forbidden))
        mask &= ~fmask
    return _run(lambda c: iter_path_embeddings(D, p.word, mask, counter=c), p, budget)


def _two_cycles(D: Digraph, counter: StepCounter) -> Optional[list[int]]:
    for u in range(D.n):
        counter.tick()
        both = D.out_mask(u) & D.in_mask(u)
        if both:
            return [u, members(both)[0]]
    return None


def _directed_triangles(D: Digraph, counter: StepCounter) -> Optional[list[int]]:
    for u, v in D.arcs():
        counter.tick()
        w = D.out_mask(v) & D.in_mask(u)
        if w:
            return [u, v, members(w)[0]]
    return None


def _transitive_triangles(D: Digraph, counter: StepCounter) -> Optional[list[int]]:
    # canonical single-flip triangle FFB: u0 -> u1 -> u2 and u0 -> u2
    for u, v in D.arcs():
        counter.tick()
        w = D.out_mask(u) & D.out_mask(v)
        if w:
            return [u, v, members(w)[0]]
    return None


_SPECIAL = {"FF": _two_cycles, "FFF": _directed_triangles, "FFB": _transitive_triangles}


def forbidden_family_check(
    D: Digraph, k: int, budget: Optional[int] = None
) -> dict[CyclePattern, SearchOutcome]:
    """Search for every directed or single-flip cycle of length at most ``k``.

    Lengths 2 and 3 use dedicated exhaustive scans, so a ``NotFound`` there is
    always exhaustive; longer members go through :func:`contains_pattern`.
    """
    report = {}
    for p in forbidden_family(k):
        scan = _SPECIAL.get(p.word)
        if scan is None:
            report[p] = contains_pattern(D, p, budget)
            continue
        counter = StepCounter()
        m = scan(D, counter)
        if m is None:
            report[p] = SearchOutcome(Status.NOT_FOUND, None, True, counter.steps)
        else:
            report[p] = SearchOutcome(Status.FOUND, Embedding(p, m), False, counter.steps)
    return report


def verify_embedding(D: Digraph, e: Embedding) -> bool:
    """Replay an embedding against ``D``: size, range, injectivity and arcs."""
    p = e.pattern
    m = e.map
    if isinstance(p, CyclePattern):
        if len(m) != p.k:
            return False
    elif isinstance(p, PathPattern):
        if len(m) != p.arcs + 1:
            return False
    else:
        return False
    if any(not (isinstance(v, int) and 0 <= v < D.n) for v in m):
        return False
    if len(set(m)) != len(m):
        return False
    return all(D.has_arc(a, b) for a, b in e.arcs()) if m else False
