"""Loop-free, parallel-free digraphs over dense integer vertex ids.

Adjacency is kept as Python integers used as bitsets: bit ``v`` of
``out_mask(u)`` is set iff ``u -> v`` is an arc.  This keeps membership
tests O(1) and neighbourhood intersections a single ``&``.
"""

from __future__ import annotations

import io
import re
from typing import Iterable, Iterator, Optional

import numpy as np

__all__ = [
    "Digraph",
    "DigraphError",
    "LoopRejected",
    "ParallelArcRejected",
    "EmptyDigraph",
    "InvalidVertex",
    "FormatError",
    "mask_of",
    "members",
    "clone_vertex",
    "r_in_dominated",
    "min_out_degree",
    "min_in_degree",
    "degree_histograms",
    "induced",
    "read_digraph",
    "write_digraph",
    "to_text",
    "from_text",
    "to_dot",
]


class DigraphError(Exception):
    pass


class LoopRejected(DigraphError):
    pass


class ParallelArcRejected(DigraphError):
    pass


class EmptyDigraph(DigraphError):
    pass


class InvalidVertex(DigraphError, IndexError):
    pass


class FormatError(DigraphError, ValueError):
    pass


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    """Ascending vertex ids whose bits are set in ``mask``."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _as_mask(s) -> int:
    if isinstance(s, int):
        return s
    return mask_of(s)


class Digraph:
    """A digraph with anti-parallel arcs allowed and no loops or parallel arcs."""

    __slots__ = ("_out", "_in", "_labels", "_arc_count")

    def __init__(self, n: int = 0, arcs: Iterable[tuple[int, int]] = (), labels=None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self._out = [0] * n
        self._in = [0] * n
        self._labels: list[Optional[str]] = [None] * n
        self._arc_count = 0
        if labels is not None:
            labels = list(labels)
            if len(labels) != n:
                raise ValueError("need one label per vertex")
            self._labels = labels
        for u, v in arcs:
            self.add_arc(u, v)

    # -- construction ---------------------------------------------------------

    def add_vertex(self, label: Optional[str] = None) -> int:
        self._out.append(0)
        self._in.append(0)
        self._labels.append(label)
        return len(self._out) - 1

    def add_vertices(self, count: int, labels=None) -> range:
        start = len(self._out)
        self._out.extend([0] * count)
        self._in.extend([0] * count)
        self._labels.extend(labels if labels is not None else [None] * count)
        return range(start, start + count)

    def _check(self, v: int) -> None:
        if not 0 <= v < len(self._out):
            raise InvalidVertex(f"vertex {v} not in [0, {len(self._out)})")

    def add_arc(self, u: int, v: int) -> None:
        self._check(u)
        self._check(v)
        if u == v:
            raise LoopRejected(f"loop at {u}")
        bit = 1 << v
        if self._out[u] & bit:
            raise ParallelArcRejected(f"arc ({u}, {v}) already present")
        self._out[u] |= bit
        self._in[v] |= 1 << u
        self._arc_count += 1

    def add_arcs_from(self, u: int, heads: int) -> None:
        """Add ``u -> h`` for every bit ``h`` of the mask ``heads`` (bulk, same checks)."""
        self._check(u)
        if heads >> len(self._out):
            raise InvalidVertex("head mask out of range")
        if heads >> u & 1:
            raise LoopRejected(f"loop at {u}")
        if self._out[u] & heads:
            raise ParallelArcRejected(f"parallel arc out of {u}")
        self._out[u] |= heads
        ubit = 1 << u
        for h in members(heads):
            self._in[h] |= ubit
        self._arc_count += heads.bit_count()

    def clone(self, v: int, label: Optional[str] = None) -> int:
        """Add a clone of ``v`` in place and return its id.

        The clone gets exactly ``v``'s in- and out-neighbourhoods and is not
        adjacent to ``v``.
        """
        self._check(v)
        if label is None:
            label = _clone_label(self._labels[v])
        c = self.add_vertex(label)
        cbit = 1 << c
        outs, ins = self._out[v], self._in[v]
        self._out[c] = outs
        self._in[c] = ins
        for h in members(outs):
            self._in[h] |= cbit
        for t in members(ins):
            self._out[t] |= cbit
        self._arc_count += outs.bit_count() + ins.bit_count()
        return c

    def copy(self) -> "Digraph":
        d = Digraph.__new__(Digraph)
        d._out = list(self._out)
        d._in = list(self._in)
        d._labels = list(self._labels)
        d._arc_count = self._arc_count
        return d

    # -- queries --------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._out)

    def __len__(self) -> int:
        return len(self._out)

    @property
    def arc_count(self) -> int:
        return self._arc_count

    @property
    def vertex_mask(self) -> int:
        return (1 << len(self._out)) - 1

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self._out[u] >> v & 1)

    def out_mask(self, v: int) -> int:
        return self._out[v]

    def in_mask(self, v: int) -> int:
        return self._in[v]

    def adj_mask(self, v: int) -> int:
        """Underlying undirected neighbourhood of ``v``."""
        return self._out[v] | self._in[v]

    def out_neighbors(self, v: int) -> list[int]:
        return members(self._out[v])

    def in_neighbors(self, v: int) -> list[int]:
        return members(self._in[v])

    def out_degree(self, v: int) -> int:
        return self._out[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self._in[v].bit_count()

    def arcs(self) -> Iterator[tuple[int, int]]:
        """All arcs in ascending (tail, head) order."""
        for u, m in enumerate(self._out):
            for v in members(m):
                yield u, v

    def label(self, v: int) -> Optional[str]:
        return self._labels[v]

    def set_label(self, v: int, label: Optional[str]) -> None:
        self._check(v)
        self._labels[v] = label

    @property
    def labels(self) -> list[Optional[str]]:
        return list(self._labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._out == other._out and self._labels == other._labels

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.arc_count})"

    def audit(self) -> None:
        """Full invariant scan; raises ``AssertionError`` on any breach."""
        n = self.n
        count = 0
        for u in range(n):
            assert not self._out[u] >> u & 1, f"loop at {u}"
            assert self._out[u] >> n == 0 and self._in[u] >> n == 0
            for v in members(self._out[u]):
                assert self._in[v] >> u & 1, f"in-mask missing ({u}, {v})"
            for t in members(self._in[u]):
                assert self._out[t] >> u & 1, f"out-mask missing ({t}, {u})"
            count += self._out[u].bit_count()
        assert count == self._arc_count


_CLONE_SUFFIX = re.compile(r"^(.*)~c(\d+)$")


def _clone_label(label: Optional[str]) -> Optional[str]:
    if label is None:
        return None
    m = _CLONE_SUFFIX.match(label)
    if m:
        return f"{m.group(1)}~c{int(m.group(2)) + 1}"
    return f"{label}~c1"


def clone_vertex(D: Digraph, v: int) -> tuple[Digraph, int]:
    """Return a copy of ``D`` with a clone of ``v`` appended, and the clone's id."""
    E = D.copy()
    return E, E.clone(v)


def r_in_dominated(D: Digraph, S, r: int) -> frozenset[int]:
    """Vertices outside ``S`` with at least ``r`` out-neighbours in ``S``."""
    return frozenset(members(r_in_dominated_mask(D, _as_mask(S), r)))


def r_in_dominated_mask(D: Digraph, S: int, r: int) -> int:
    if r <= 0:
        raise ValueError("r must be positive")
    out = 0
    rest = D.vertex_mask & ~S
    for v in members(rest):
        if (D.out_mask(v) & S).bit_count() >= r:
            out |= 1 << v
    return out


def min_out_degree(D: Digraph) -> int:
    if D.n == 0:
        raise EmptyDigraph("minimum out-degree of the empty digraph")
    return min(D.out_degree(v) for v in range(D.n))


def min_in_degree(D: Digraph) -> int:
    if D.n == 0:
        raise EmptyDigraph("minimum in-degree of the empty digraph")
    return min(D.in_degree(v) for v in range(D.n))


def degree_histograms(D: Digraph) -> tuple[np.ndarray, np.ndarray]:
    """(out-degree histogram, in-degree histogram); entry ``d`` counts vertices of degree ``d``."""
    if D.n == 0:
        raise EmptyDigraph("degree histogram of the empty digraph")
    outs = np.array([D.out_degree(v) for v in range(D.n)])
    ins = np.array([D.in_degree(v) for v in range(D.n)])
    return np.bincount(outs), np.bincount(ins)


def induced(D: Digraph, S) -> tuple[Digraph, list[int]]:
    """Induced subdigraph ``D[S]`` and the list mapping new ids to old ids.

    New vertex ``i`` corresponds to ``old[i]``; ``old`` is ascending.
    """
    mask = _as_mask(S)
    if mask >> D.n:
        raise InvalidVertex("vertex set exceeds digraph")
    old = members(mask)
    index = {v: i for i, v in enumerate(old)}
    H = Digraph(len(old), labels=[D.label(v) for v in old])
    for i, v in enumerate(old):
        heads = 0
        for w in members(D.out_mask(v) & mask):
            heads |= 1 << index[w]
        if heads:
            H.add_arcs_from(i, heads)
    return H, old


# -- text format ----------------------------------------------------------------

def to_text(D: Digraph) -> str:
    buf = io.StringIO()
    buf.write(f"{D.n} {D.arc_count}\n")
    for u, v in D.arcs():
        buf.write(f"{u} {v}\n")
    for v, lab in enumerate(D._labels):
        if lab is not None:
            if "\n" in lab:
                raise FormatError("labels may not contain newlines")
            buf.write(f"# label {v} {lab}\n")
    return buf.getvalue()


def from_text(text: str) -> Digraph:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise FormatError("empty input")
    head = lines[0].split()
    try:
        n, m = int(head[0]), int(head[1])
    except (IndexError, ValueError):
        raise FormatError(f"bad header line: {lines[0]!r}") from None
    if len(head) != 2 or n < 0 or m < 0:
        raise FormatError(f"bad header line: {lines[0]!r}")
    if len(lines) < 1 + m:
        raise FormatError(f"expected {m} arc lines, got {len(lines) - 1}")
    D = Digraph(n)
    for lineno, line in enumerate(lines[1:1 + m], start=2):
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            D.add_arc(int(parts[0]), int(parts[1]))
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer vertex in {line!r}") from None
        except DigraphError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
    for lineno, line in enumerate(lines[1 + m:], start=2 + m):
        if not line.startswith("# label "):
            raise FormatError(f"line {lineno}: unexpected trailer {line!r}")
        rest = line[len("# label "):]
        vid, _, lab = rest.partition(" ")
        try:
            v = int(vid)
        except ValueError:
            raise FormatError(f"line {lineno}: bad label vertex {vid!r}") from None
        if not 0 <= v < n:
            raise FormatError(f"line {lineno}: label for unknown vertex {v}")
        D.set_label(v, lab)
    return D


def write_digraph(D: Digraph, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(to_text(D))


def read_digraph(path) -> Digraph:
    with open(path, newline="") as fh:
        return from_text(fh.read())


def to_dot(D: Digraph, name: str = "D") -> str:
    lines = [f"digraph {name} {{"]
    for v in range(D.n):
        lab = D.label(v)
        if lab is None:
            lines.append(f"  {v};")
        else:
            esc = lab.replace("\\", "\\\\").replace('"', '\\"')
            lines.append(f'  {v} [label="{esc}"];')
    for u, v in D.arcs():
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
