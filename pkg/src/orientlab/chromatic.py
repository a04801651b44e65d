"""Chromatic number of the underlying graph of a digraph.

``u ~ v`` in the underlying graph iff ``(u, v)`` or ``(v, u)`` is an arc.
Every routine accepts an optional vertex mask ``within`` so that induced
subdigraphs can be coloured without being materialised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .digraph import Digraph, EmptyDigraph, members

__all__ = [
    "Coloring",
    "ChromaticResult",
    "BurrBounds",
    "chromatic_exact",
    "chromatic_bounds",
    "chromatic_number",
    "greedy_clique",
    "dsatur_coloring",
    "is_proper",
    "is_clique",
    "gallai_roy_path",
    "burr_surrogate",
]


@dataclass(frozen=True)
class Coloring:
    color: dict[int, int]
    color_count: int

    def classes(self) -> list[list[int]]:
        out = [[] for _ in range(self.color_count)]
        for v in sorted(self.color):
            out[self.color[v]].append(v)
        return out


@dataclass(frozen=True)
class ChromaticResult:
    lower: int
    upper: int
    coloring: Coloring
    clique: tuple[int, ...] = ()
    nodes: int = 0
    budget_exhausted: bool = False
    # "clique" when lower == len(clique), "search" when a complete branch and bound proved it
    lower_by: str = "clique"

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"chromatic number only bracketed: [{self.lower}, {self.upper}]")
        return self.upper


@dataclass(frozen=True)
class BurrBounds:
    k: int
    lower: int
    surrogate_upper: int


def burr_surrogate(k: int) -> BurrBounds:
    """Known bounds on the oriented-tree constant for trees of order ``k``.

    ``surrogate_upper`` is ``(k-1)**2`` (1 for ``k <= 1``) and stands in for
    the unknown optimal constant wherever a threshold needs it.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    return BurrBounds(k, 2 * k, (k - 1) ** 2 if k >= 2 else 1)


def _adjacency(D: Digraph, within: Optional[int]) -> tuple[list[int], int]:
    mask = D.vertex_mask if within is None else within
    adj = [0] * D.n
    for v in members(mask):
        adj[v] = (D.out_mask(v) | D.in_mask(v)) & mask
    return adj, mask


def is_proper(D: Digraph, coloring: Coloring, within: Optional[int] = None) -> bool:
    mask = D.vertex_mask if within is None else within
    col = coloring.color
    verts = members(mask)
    if set(col) != set(verts):
        return False
    used = set(col.values())
    if used != set(range(coloring.color_count)):
        return False
    for v in verts:
        for w in members(D.out_mask(v) & mask):
            if col[v] == col[w]:
                return False
    return True


def is_clique(D: Digraph, vertices) -> bool:
    vs = list(vertices)
    for i, a in enumerate(vs):
        for b in vs[i + 1:]:
            if not (D.has_arc(a, b) or D.has_arc(b, a)):
                return False
    return len(set(vs)) == len(vs)


def _greedy_clique(adj: list[int], mask: int) -> list[int]:
    best: list[int] = []
    for v in members(mask):
        # skip starts that cannot beat the incumbent
        if adj[v].bit_count() + 1 <= len(best):
            continue
        clique = [v]
        cand = adj[v]
        while cand:
            pick, score = -1, -1
            for u in members(cand):
                s = (adj[u] & cand).bit_count()
                if s > score:
                    pick, score = u, s
            clique.append(pick)
            cand &= adj[pick]
        if len(clique) > len(best):
            best = clique
    return best


def greedy_clique(D: Digraph, within: Optional[int] = None) -> list[int]:
    adj, mask = _adjacency(D, within)
    return _greedy_clique(adj, mask)


def _dsatur(adj: list[int], mask: int) -> dict[int, int]:
    verts = members(mask)
    color: dict[int, int] = {}
    nbr_cols = {v: 0 for v in verts}
    uncol = mask
    while uncol:
        best, key = -1, None
        for v in members(uncol):
            k = (nbr_cols[v].bit_count(), (adj[v] & uncol).bit_count())
            if key is None or k > key:
                best, key = v, k
        used = nbr_cols[best]
        c = 0
        while used >> c & 1:
            c += 1
        color[best] = c
        uncol &= ~(1 << best)
        for u in members(adj[best] & uncol):
            nbr_cols[u] |= 1 << c
    return color


def dsatur_coloring(D: Digraph, within: Optional[int] = None) -> Coloring:
    adj, mask = _adjacency(D, within)
    col = _dsatur(adj, mask)
    return Coloring(col, max(col.values()) + 1 if col else 0)


def chromatic_bounds(D: Digraph, within: Optional[int] = None) -> ChromaticResult:
    """Cheap sandwich: greedy clique below, DSATUR colouring above."""
    adj, mask = _adjacency(D, within)
    if not mask:
        return ChromaticResult(0, 0, Coloring({}, 0))
    clique = _greedy_clique(adj, mask)
    col = _dsatur(adj, mask)
    upper = max(col.values()) + 1
    return ChromaticResult(len(clique), upper, Coloring(col, upper), tuple(clique))


class _Budget(Exception):
    pass


def chromatic_exact(
    D: Digraph,
    budget: Optional[int] = None,
    within: Optional[int] = None,
) -> ChromaticResult:
    """Exact chromatic number by saturation-order branch and bound.

    ``budget`` caps the number of search nodes.  When it runs out the best
    sandwich found so far is returned with ``budget_exhausted`` set; that is
    a partial answer, not an error.
    """
    adj, mask = _adjacency(D, within)
    if not mask:
        return ChromaticResult(0, 0, Coloring({}, 0))
    clique = _greedy_clique(adj, mask)
    lower = len(clique)
    best = _dsatur(adj, mask)
    best_k = max(best.values()) + 1
    if best_k == lower:
        return ChromaticResult(lower, best_k, Coloring(best, best_k), tuple(clique))

    verts = members(mask)
    deg = {v: adj[v].bit_count() for v in verts}
    nodes = 0
    color: dict[int, int] = {}

    # start from the clique: its colouring is forced up to symmetry
    nbr = {v: 0 for v in verts}
    uncol = mask
    for c, v in enumerate(clique):
        color[v] = c
        uncol &= ~(1 << v)
        for u in members(adj[v] & uncol):
            nbr[u] |= 1 << c

    def search(uncol: int, used: int) -> None:
        nonlocal best, best_k, nodes
        if used >= best_k:
            return
        if not uncol:
            best = dict(color)
            best_k = used
            return
        nodes += 1
        if budget is not None and nodes > budget:
            raise _Budget
        pick, key = -1, None
        for v in members(uncol):
            k = (nbr[v].bit_count(), (adj[v] & uncol).bit_count(), deg[v])
            if key is None or k > key:
                pick, key = v, k
        sat = key[0]
        if sat >= used and used + 1 >= best_k:
            return
        bit = 1 << pick
        rest = uncol & ~bit
        nb = members(adj[pick] & rest)
        forbidden = nbr[pick]
        for c in range(min(used + 1, best_k - 1)):
            if forbidden >> c & 1:
                continue
            cbit = 1 << c
            saved = [(u, nbr[u]) for u in nb]
            for u in nb:
                nbr[u] |= cbit
            color[pick] = c
            search(rest, max(used, c + 1))
            del color[pick]
            for u, val in saved:
                nbr[u] = val
            if best_k == lower:
                return

    exhausted = False
    try:
        search(uncol, lower)
    except _Budget:
        exhausted = True
    lower_by = "clique"
    if not exhausted and best_k > lower:
        # the search space is closed: nothing below best_k exists
        lower, lower_by = best_k, "search"
    return ChromaticResult(
        lower, best_k, Coloring(best, best_k), tuple(clique), nodes, exhausted, lower_by
    )


def chromatic_number(D: Digraph, within: Optional[int] = None) -> int:
    return chromatic_exact(D, within=within).value


def gallai_roy_path(D: Digraph) -> tuple[list[int], Coloring]:
    """Directed path and level colouring from a maximal acyclic subdigraph.

    Arcs are offered in ascending ``(tail, head)`` order and kept unless they
    close a cycle.  The colour of ``v`` is the number of arcs on the longest
    kept path ending at ``v``; that colouring is proper for all of ``D``, so
    the returned path has at least ``chi(D) - 1`` arcs.
    """
    n = D.n
    if n == 0:
        raise EmptyDigraph("gallai_roy_path needs at least one vertex")
    hout = [0] * n
    hin = [0] * n
    for u, v in D.arcs():
        # does v already reach u?
        seen = 1 << v
        frontier = seen
        hit = False
        while frontier:
            nxt = 0
            for x in members(frontier):
                nxt |= hout[x]
            nxt &= ~seen
            if nxt >> u & 1:
                hit = True
                break
            seen |= nxt
            frontier = nxt
        if not hit:
            hout[u] |= 1 << v
            hin[v] |= 1 << u

    indeg = [hin[v].bit_count() for v in range(n)]
    ready = [v for v in range(n) if indeg[v] == 0]
    level = [0] * n
    order = []
    while ready:
        ready.sort()
        v = ready.pop(0)
        order.append(v)
        for w in members(hout[v]):
            level[w] = max(level[w], level[v] + 1)
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    assert len(order) == n

    top = max(level)
    end = min(v for v in range(n) if level[v] == top)
    path = [end]
    while level[path[-1]] > 0:
        cur = path[-1]
        prev = min(u for u in members(hin[cur]) if level[u] == level[cur] - 1)
        path.append(prev)
    path.reverse()
    return path, Coloring({v: level[v] for v in range(n)}, top + 1)
