"""Orientations of cycles as cyclic words over ``F`` (forward) and ``B`` (backward).

A pattern of length ``k`` has vertices ``u_0 .. u_{k-1}``; symbol ``i`` describes
the arc between ``u_i`` and ``u_{i+1 mod k}``: ``F`` is ``u_i -> u_{i+1}``,
``B`` is ``u_{i+1} -> u_i``.  Path patterns use the same symbols without
wrap-around.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

__all__ = [
    "PatternError",
    "InvalidSegment",
    "CyclePattern",
    "PathPattern",
    "BlockDecomposition",
    "PatternClass",
    "blocks",
    "classify",
    "delete_segment",
    "remaining_positions",
    "find_motif",
    "contains_motif",
    "forbidden_family",
    "all_patterns",
    "parse_word",
    "flip",
    "reverse_flip",
    "RLRL",
    "RRLL",
]

_FLIP = str.maketrans("FB", "BF")
_TO_SIGNS = str.maketrans("FB", "+-")


class PatternError(ValueError):
    pass


class InvalidSegment(PatternError):
    pass


def flip(word: str) -> str:
    return word.translate(_FLIP)


def reverse_flip(word: str) -> str:
    """The same orientation read in the opposite traversal direction."""
    return word[::-1].translate(_FLIP)


def parse_word(text: str) -> str:
    """Accept ``+``/``-`` (CLI syntax), ``F``/``B``, or arrow characters."""
    table = {"+": "F", "-": "B", "F": "F", "B": "B", "f": "F", "b": "B",
             "→": "F", "←": "B", "−": "B"}
    out = []
    for ch in text.strip():
        if ch in " _,":
            continue
        if ch not in table:
            raise PatternError(f"unexpected symbol {ch!r} in pattern {text!r}")
        out.append(table[ch])
    return "".join(out)


def _sort_key(word: str) -> str:
    # F sorts before B, matching '+' < '-' in ASCII
    return word.translate(_TO_SIGNS)


def _canonical_word(word: str) -> str:
    k = len(word)
    if k == 2:
        return "FF"
    cands = []
    for w in (word, reverse_flip(word)):
        for s in range(k):
            cands.append(w[s:] + w[:s])
    return min(cands, key=_sort_key)


@dataclass(frozen=True)
class CyclePattern:
    """A cyclic orientation word of length ``k >= 2``.

    For ``k = 2`` the only orientation without parallel arcs is the directed
    2-cycle, so every two-letter word is normalised to ``FF``.
    """

    word: str

    def __post_init__(self):
        w = parse_word(self.word)
        if len(w) < 2:
            raise PatternError("a cycle pattern needs at least two arcs")
        if len(w) == 2:
            w = "FF"
        object.__setattr__(self, "word", w)

    @classmethod
    def parse(cls, text: str) -> "CyclePattern":
        return cls(text)

    @property
    def k(self) -> int:
        return len(self.word)

    def __len__(self) -> int:
        return len(self.word)

    @cached_property
    def canonical(self) -> "CyclePattern":
        return CyclePattern(_canonical_word(self.word))

    def is_canonical(self) -> bool:
        return self.canonical.word == self.word

    def rotate(self, s: int) -> "CyclePattern":
        s %= self.k
        return CyclePattern(self.word[s:] + self.word[:s])

    def reflect(self) -> "CyclePattern":
        return CyclePattern(reverse_flip(self.word))

    @property
    def signs(self) -> str:
        return self.word.translate(_TO_SIGNS)

    def __str__(self) -> str:
        return self.word


@dataclass(frozen=True)
class PathPattern:
    """A linear orientation word; the empty word is a single vertex."""

    word: str = ""

    def __post_init__(self):
        object.__setattr__(self, "word", parse_word(self.word))

    @property
    def arcs(self) -> int:
        return len(self.word)

    @property
    def order(self) -> int:
        return len(self.word) + 1

    def __len__(self) -> int:
        return len(self.word)

    def reversed(self) -> "PathPattern":
        return PathPattern(reverse_flip(self.word))

    def __str__(self) -> str:
        return self.word or "."


RLRL = PathPattern("FBFB")
RRLL = PathPattern("FFBB")


@dataclass(frozen=True)
class BlockDecomposition:
    """Maximal runs of the cyclic word.

    ``starts[i]`` is the arc index where block ``i`` begins and
    ``directions[i]`` its symbol.  A directed cycle is one block starting at 0.
    """

    block_lengths: tuple[int, ...]
    starts: tuple[int, ...]
    directions: tuple[str, ...]

    @property
    def block_count(self) -> int:
        return len(self.block_lengths)


class PatternClass(enum.Enum):
    ALWAYS_APPEARS = "AlwaysAppears"
    DIRECTED_CYCLE = "DirectedCycle"
    SINGLE_FLIP = "SingleFlip"

    def __str__(self) -> str:
        return self.value


def _as_pattern(p) -> CyclePattern:
    return p if isinstance(p, CyclePattern) else CyclePattern(p)


def blocks(p) -> BlockDecomposition:
    p = _as_pattern(p)
    w, k = p.word, p.k
    if all(c == w[0] for c in w):
        return BlockDecomposition((k,), (0,), (w[0],))
    # first run boundary at or after position 0
    start = next(i for i in range(k) if w[i] != w[i - 1])
    lengths, starts, dirs = [], [], []
    i = start
    while True:
        j = i
        n = 0
        while True:
            n += 1
            j = (j + 1) % k
            if w[j] != w[i] or j == start:
                break
        lengths.append(n)
        starts.append(i)
        dirs.append(w[i])
        i = j
        if i == start:
            break
    return BlockDecomposition(tuple(lengths), tuple(starts), tuple(dirs))


def classify(p) -> PatternClass:
    b = blocks(p)
    if b.block_count == 1:
        return PatternClass.DIRECTED_CYCLE
    if b.block_count == 2 and min(b.block_lengths) == 1:
        return PatternClass.SINGLE_FLIP
    return PatternClass.ALWAYS_APPEARS


def remaining_positions(p, positions: Iterable[int]) -> list[int]:
    """Cycle positions left after deleting a consecutive run, in path order."""
    p = _as_pattern(p)
    k = p.k
    pos = set(positions)
    if not pos or len(pos) >= k or any(not 0 <= x < k for x in pos):
        raise InvalidSegment(f"segment {sorted(pos)} invalid for k={k}")
    # the run must have exactly one entry point
    firsts = [x for x in pos if (x - 1) % k not in pos]
    if len(firsts) != 1:
        raise InvalidSegment(f"segment {sorted(pos)} is not a consecutive run")
    first = firsts[0]
    last = (first + len(pos) - 1) % k
    return [(last + 1 + j) % k for j in range(k - len(pos))]


def delete_segment(p, positions: Iterable[int]) -> PathPattern:
    """Orientation of the path left after deleting consecutive vertices of ``p``.

    The path runs from the vertex after the segment around to the vertex
    before it.
    """
    p = _as_pattern(p)
    rest = remaining_positions(p, positions)
    return PathPattern("".join(p.word[v] for v in rest[:-1]))


def find_motif(p, motif) -> Optional[tuple[int, bool]]:
    """First occurrence of ``motif`` as a consecutive subword of ``p``.

    Returns ``(start, reflected)``.  With ``reflected`` false the motif's arc
    ``j`` is arc ``start + j`` of ``p``; otherwise the motif occurs in the
    reflected word at ``start``.  ``None`` if absent.
    """
    p = _as_pattern(p)
    m = motif.word if isinstance(motif, (PathPattern, CyclePattern)) else parse_word(motif)
    k = p.k
    if len(m) > k:
        return None
    for reflected, w in ((False, p.word), (True, reverse_flip(p.word))):
        ww = w + w
        for s in range(k):
            if ww[s:s + len(m)] == m:
                return s, reflected
    return None


def contains_motif(p, motif) -> bool:
    return find_motif(p, motif) is not None


def all_patterns(k: int) -> list[CyclePattern]:
    """Every canonical cycle pattern of length ``k``, sorted by sign word."""
    if k < 2:
        return []
    seen = set()
    for bits in itertools.product("FB", repeat=k):
        seen.add(_canonical_word("".join(bits)))
    return [CyclePattern(w) for w in sorted(seen, key=_sort_key)]


def forbidden_family(k: int) -> list[CyclePattern]:
    """Directed cycles of length 2..k and single-flip cycles of length 3..k."""
    if k < 2:
        raise PatternError("k must be at least 2")
    fam = []
    for j in range(2, k + 1):
        fam.append(CyclePattern("F" * j))
        if j >= 3:
            fam.append(CyclePattern("F" * (j - 1) + "B").canonical)
    out, seen = [], set()
    for p in fam:
        if p.canonical.word not in seen:
            seen.add(p.canonical.word)
            out.append(p.canonical)
    return out
