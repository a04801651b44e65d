"""Dense, highly chromatic digraphs that avoid directed and single-flip cycles."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .digraph import Digraph, members

__all__ = [
    "SizeRejected",
    "DEFAULT_CAP",
    "GROUPS",
    "blowup_cycle",
    "shift_digraph",
    "general_shift_digraph",
    "AugmentedLayout",
    "augmented_flip_free",
    "balance_target",
    "doubling_schedule",
    "balance_by_cloning",
    "GroupAudit",
    "audit_groups",
    "audit_balanced_implicit",
]

DEFAULT_CAP = 5000
GROUPS = ("CoreG", "S", "T", "P")


class SizeRejected(ValueError):
    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what} would have {size} vertices (cap {cap})")
        self.size = size
        self.cap = cap


def _fmt(t) -> str:
    return "(" + ",".join(map(str, t)) + ")"


def blowup_cycle(k: int, blob: int) -> Digraph:
    """Directed ``(k+1)``-cycle with every vertex blown up into a transitive tournament.

    Blob ``i`` holds vertices ``i*blob .. i*blob + blob - 1``, ordered so that
    lower ids beat higher ids; blob ``i`` is out-complete to blob ``i+1``.
    """
    if k < 2 or blob < 1:
        raise ValueError("need k >= 2 and blob >= 1")
    nb = k + 1
    D = Digraph(nb * blob, labels=[f"b{i}.{j}" for i in range(nb) for j in range(blob)])
    for i in range(nb):
        base = i * blob
        nxt = ((i + 1) % nb) * blob
        nxt_mask = ((1 << blob) - 1) << nxt
        for j in range(blob):
            v = base + j
            later = ((1 << (blob - j - 1)) - 1) << (v + 1)
            D.add_arcs_from(v, later | nxt_mask)
    return D


def shift_digraph(m: int, r: int) -> Digraph:
    """Ascending ``r``-tuples over ``1..m``; ``a -> b`` iff ``a[1:] == b[:-1]``."""
    if not 1 <= r <= m:
        raise ValueError("need 1 <= r <= m")
    tuples = list(itertools.combinations(range(1, m + 1), r))
    index = {t: i for i, t in enumerate(tuples)}
    D = Digraph(len(tuples), labels=[_fmt(t) for t in tuples])
    by_prefix: dict[tuple, int] = {}
    for t, i in index.items():
        by_prefix[t[:-1]] = by_prefix.get(t[:-1], 0) | 1 << i
    for t, i in index.items():
        heads = by_prefix.get(t[1:], 0) & ~(1 << i)
        if heads:
            D.add_arcs_from(i, heads)
    return D


def general_shift_digraph(m: int, k: int, cap: int = DEFAULT_CAP) -> Digraph:
    """Shift digraph on all injective ``2k``-tuples over ``1..2m`` (not only ascending)."""
    if not 1 <= k <= m:
        raise ValueError("need 1 <= k <= m")
    size = math.perm(2 * m, 2 * k)
    if size > cap:
        raise SizeRejected(f"general shift digraph (2m={2*m}, 2k={2*k}) = (2m)!/(2m-2k)!", size, cap)
    tuples = list(itertools.permutations(range(1, 2 * m + 1), 2 * k))
    index = {t: i for i, t in enumerate(tuples)}
    D = Digraph(len(tuples), labels=["g" + _fmt(t) for t in tuples])
    alphabet = range(1, 2 * m + 1)
    for t, i in index.items():
        suffix = t[1:]
        heads = 0
        for x in alphabet:
            if x not in suffix:
                heads |= 1 << index[suffix + (x,)]
        D.add_arcs_from(i, heads)
    return D


@dataclass
class AugmentedLayout:
    """Group bookkeeping for the augmented construction and its clones.

    ``origin[v]`` is the pre-cloning vertex that ``v`` copies (itself for
    originals); ``partition[v]`` is the ordered pair ``(A, B)`` for S and T
    vertices.
    """

    m: int
    k: int
    group: list[str]
    partition: dict[int, tuple[tuple[int, ...], tuple[int, ...]]]
    path: list[int]
    origin: list[int]
    generations: dict[str, int] = field(default_factory=lambda: {g: 0 for g in GROUPS})

    @property
    def q(self) -> int:
        return balance_target(self.m, self.k)

    def members(self, g: str) -> list[int]:
        return [v for v, h in enumerate(self.group) if h == g]

    def sizes(self) -> dict[str, int]:
        out = {g: 0 for g in GROUPS}
        for h in self.group:
            out[h] += 1
        return out

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "q": self.q,
            "group": self.group,
            "partition": {str(v): [list(a), list(b)] for v, (a, b) in sorted(self.partition.items())},
            "path": self.path,
            "origin": self.origin,
            "generations": self.generations,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AugmentedLayout":
        return cls(
            m=d["m"],
            k=d["k"],
            group=list(d["group"]),
            partition={int(v): (tuple(a), tuple(b)) for v, (a, b) in d["partition"].items()},
            path=list(d["path"]),
            origin=list(d["origin"]),
            generations=dict(d["generations"]),
        )


def augmented_flip_free(m: int, k: int, cap: int = DEFAULT_CAP) -> tuple[Digraph, AugmentedLayout]:
    """General shift digraph plus the S, T and P gadgets that raise out-degrees.

    For each ordered balanced partition ``(A, B)`` of ``1..2m`` there is a
    sink-side vertex ``s`` receiving arcs from every tuple whose first ``k``
    entries lie in ``A`` and last ``k`` in ``B``, and a source-side vertex
    ``t`` sending arcs to the same tuples.  ``S`` feeds ``p_1`` of a directed
    path ``p_1 .. p_k`` whose end ``p_k`` feeds ``T``.
    """
    if k < 3 or m < k:
        raise ValueError("need k >= 3 and m >= k")
    core_n = math.perm(2 * m, 2 * k)
    parts_n = math.comb(2 * m, m)
    total = core_n + 2 * parts_n + k
    if total > cap:
        raise SizeRejected(
            f"augmented construction: (2m)!/(2m-2k)! = {core_n}, binom(2m,m) = {parts_n}, k = {k}",
            total,
            cap,
        )
    D = general_shift_digraph(m, k, cap=cap)
    core_tuples = list(itertools.permutations(range(1, 2 * m + 1), 2 * k))
    ground = frozenset(range(1, 2 * m + 1))
    parts = []
    for A in itertools.combinations(sorted(ground), m):
        B = tuple(sorted(ground - set(A)))
        parts.append((A, B))
    part_index = {A: i for i, (A, _) in enumerate(parts)}

    def plabel(A, B):
        return ",".join(map(str, A)) + "|" + ",".join(map(str, B))

    s_ids = D.add_vertices(len(parts), [f"s[{plabel(A, B)}]" for A, B in parts])
    t_ids = D.add_vertices(len(parts), [f"t[{plabel(A, B)}]" for A, B in parts])
    p_ids = D.add_vertices(k, [f"p{i + 1}" for i in range(k)])

    t_heads = [0] * len(parts)
    for v, t in enumerate(core_tuples):
        first, last = set(t[:k]), set(t[k:])
        rest = sorted(ground - first - last)
        heads = 0
        for extra in itertools.combinations(rest, m - k):
            i = part_index[tuple(sorted(first | set(extra)))]
            heads |= 1 << s_ids[i]
            t_heads[i] |= 1 << v
        D.add_arcs_from(v, heads)
    for i, heads in enumerate(t_heads):
        D.add_arcs_from(t_ids[i], heads)
    for s in s_ids:
        D.add_arc(s, p_ids[0])
    for a, b in zip(p_ids, p_ids[1:]):
        D.add_arc(a, b)
    tmask = 0
    for t in t_ids:
        tmask |= 1 << t
    D.add_arcs_from(p_ids[-1], tmask)

    group = ["CoreG"] * core_n + ["S"] * len(parts) + ["T"] * len(parts) + ["P"] * k
    partition = {}
    for i, ab in enumerate(parts):
        partition[s_ids[i]] = ab
        partition[t_ids[i]] = ab
    layout = AugmentedLayout(m, k, group, partition, list(p_ids), list(range(D.n)))
    return D, layout


def balance_target(m: int, k: int) -> int:
    return max(math.perm(2 * m, 2 * k), math.comb(2 * m, m), k)


def doubling_schedule(layout: AugmentedLayout) -> dict[str, list[int]]:
    """Sizes each group passes through while doubling up to half the target."""
    q = layout.q
    out = {}
    for g, size in layout.sizes().items():
        seq = [size]
        while 2 * seq[-1] < q:
            seq.append(2 * seq[-1])
        out[g] = seq
    return out


def balance_by_cloning(D: Digraph, layout: AugmentedLayout) -> tuple[Digraph, AugmentedLayout]:
    """Double each group by cloning every member until it reaches half the target.

    Groups are processed in the order CoreG, S, T, P and members in ascending
    id, so the output is reproducible.  Clone labels get a ``~g<round>``
    suffix.
    """
    E = D.copy()
    lay = AugmentedLayout(
        layout.m,
        layout.k,
        list(layout.group),
        dict(layout.partition),
        list(layout.path),
        list(layout.origin),
        dict(layout.generations),
    )
    q = lay.q
    for g in GROUPS:
        current = lay.members(g)
        while 2 * len(current) < q:
            lay.generations[g] += 1
            rnd = lay.generations[g]
            new = []
            for v in current:
                lab = E.label(v)
                c = E.clone(v, None if lab is None else f"{lab}~g{rnd}")
                lay.group.append(g)
                lay.origin.append(lay.origin[v])
                if v in lay.partition:
                    lay.partition[c] = lay.partition[v]
                new.append(c)
            current = current + new
    return E, lay


@dataclass(frozen=True)
class GroupAudit:
    """Degree and size audit of a (possibly implicit) balanced construction."""

    total: int
    group_sizes: dict[str, int]
    min_out_degree: int
    min_out_fraction: Fraction
    min_t_to_core: Fraction
    min_core_to_s: Fraction

    def groups_at_least_eighth(self) -> bool:
        return all(8 * s >= self.total for s in self.group_sizes.values())


def audit_groups(D: Digraph, layout: AugmentedLayout) -> GroupAudit:
    """Audit computed directly on an explicit digraph."""
    masks = {g: 0 for g in GROUPS}
    for v, g in enumerate(layout.group):
        masks[g] |= 1 << v
    sizes = {g: masks[g].bit_count() for g in GROUPS}
    min_out = min(D.out_degree(v) for v in range(D.n))
    t_core = min(
        Fraction((D.out_mask(v) & masks["CoreG"]).bit_count(), sizes["CoreG"])
        for v in members(masks["T"])
    )
    core_s = min(
        Fraction((D.out_mask(v) & masks["S"]).bit_count(), sizes["S"])
        for v in members(masks["CoreG"])
    )
    return GroupAudit(D.n, sizes, min_out, Fraction(min_out, D.n), t_core, core_s)


def audit_balanced_implicit(D: Digraph, layout: AugmentedLayout) -> GroupAudit:
    """Audit of ``balance_by_cloning(D, layout)`` without building it.

    Repeatedly cloning every member of a group yields the uniform blow-up of
    ``D`` in which each vertex of group ``g`` becomes ``2**generations(g)``
    pairwise non-adjacent copies, with all copies of ``u`` pointing at all
    copies of ``w`` whenever ``u -> w``.  Degrees and sizes follow from the
    multiplicities alone.
    """
    if len(layout.group) != D.n:
        raise ValueError("layout must describe the pre-cloning digraph")
    sched = doubling_schedule(layout)
    mult = {g: 1 << (len(seq) - 1) for g, seq in sched.items()}
    masks = {g: 0 for g in GROUPS}
    for v, g in enumerate(layout.group):
        masks[g] |= 1 << v
    sizes = {g: masks[g].bit_count() * mult[g] for g in GROUPS}
    total = sum(sizes.values())

    def out_into(v, g):
        return (D.out_mask(v) & masks[g]).bit_count() * mult[g]

    min_out = min(sum(out_into(v, g) for g in GROUPS) for v in range(D.n))
    t_core = min(Fraction(out_into(v, "CoreG"), sizes["CoreG"]) for v in members(masks["T"]))
    core_s = min(Fraction(out_into(v, "S"), sizes["S"]) for v in members(masks["CoreG"]))
    return GroupAudit(total, sizes, min_out, Fraction(min_out, total), t_core, core_s)
