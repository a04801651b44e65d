"""Constructive extraction of cycle orientations from dense, highly chromatic digraphs.

Four routes, picked by the shape of the pattern:

``rlrl``
    patterns containing the motif ``FBFB``; grows a sequence of vertices
    with mostly fresh out-neighbourhoods and closes the cycle through one of
    them.
``rrll``
    patterns containing ``FFBB``; the same with fresh in-neighbourhoods,
    plus a degree dichotomy that extends the sequence when it was not
    maximal.
``three-blocks``
    patterns with at least four blocks and neither motif; builds on a
    cohesive set.
``two-blocks``
    two blocks of length at least two; the ``FFBB`` motif sits at a block
    junction, so this defers to ``rrll``.

The guarantees hold above thresholds built from the oriented-tree constant,
which are far beyond desk scale.  Every route therefore runs unconditionally
as a best-effort search, reports whether the thresholds were met, and never
returns an embedding that fails :func:`verify_embedding`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .chromatic import BurrBounds, burr_surrogate, chromatic_bounds, chromatic_exact
from .digraph import Digraph, mask_of, members, min_out_degree, r_in_dominated_mask
from .pattern import (
    CyclePattern,
    PatternClass,
    blocks,
    classify,
    contains_motif,
    delete_segment,
    find_motif,
    reverse_flip,
)
from .search import (
    BudgetExhausted,
    Embedding,
    StepCounter,
    iter_path_embeddings,
    verify_embedding,
)

__all__ = [
    "ExtractionError",
    "PatternNotGuaranteed",
    "RouteMismatch",
    "ParameterRejected",
    "ExtractionFailed",
    "NotFoundWithinBudget",
    "ExtractionParams",
    "Thresholds",
    "ExtractionTrace",
    "CohesiveResult",
    "route_for",
    "thresholds",
    "cohesive_thresholds",
    "is_cohesive",
    "find_cohesive",
    "extract_rlrl",
    "extract_rrll",
    "extract_three_blocks",
    "extract_two_blocks",
    "extract_any",
]


class ExtractionError(Exception):
    pass


class PatternNotGuaranteed(ExtractionError):
    pass


class RouteMismatch(ExtractionError):
    pass


class ParameterRejected(ExtractionError, ValueError):
    pass


class ExtractionFailed(ExtractionError):
    def __init__(self, message: str, trace: "ExtractionTrace"):
        super().__init__(message)
        self.trace = trace


class NotFoundWithinBudget(ExtractionError):
    def __init__(self, message: str, chain: list[frozenset[int]]):
        super().__init__(message)
        self.chain = chain


_NOT_GUARANTEED = (
    "{word} is a {cls}: high chromatic number and linear minimum out-degree do not "
    "force it (the only orientations that are forced have at least three blocks, or "
    "two blocks of length at least two). See orientlab.construct for digraphs avoiding it."
)


@dataclass(frozen=True)
class ExtractionParams:
    """Knobs for an extraction run.

    ``epsilon`` is the assumed minimum out-degree fraction.  Budgets are in
    search extension steps (``search_budget``), branch-and-bound nodes per
    exact chromatic call (``chi_budget``) and chromatic evaluations for the
    cohesive-set search (``cohesive_budget``); ``None`` means unlimited.
    """

    epsilon: Fraction
    surrogate: Callable[[int], BurrBounds] = burr_surrogate
    search_budget: Optional[int] = None
    chi_budget: Optional[int] = 50_000
    cohesive_budget: Optional[int] = 300
    sequence_limit: Optional[int] = None
    max_restarts: int = 10_000

    def __post_init__(self):
        eps = Fraction(self.epsilon)
        if not 0 < eps < 1:
            raise ParameterRejected(f"epsilon must lie in (0, 1), got {eps}")
        object.__setattr__(self, "epsilon", eps)

    @classmethod
    def from_digraph(cls, D: Digraph, cap: Optional[Fraction] = None, **kw) -> "ExtractionParams":
        """Use the digraph's own minimum out-degree fraction, optionally capped."""
        eps = Fraction(min_out_degree(D), D.n)
        if cap is not None:
            eps = min(eps, Fraction(cap))
        if eps <= 0:
            raise ParameterRejected("digraph has a vertex of out-degree 0")
        return cls(eps, **kw)

    def cbar(self, order: int) -> int:
        return self.surrogate(order).surrogate_upper


@dataclass(frozen=True)
class Thresholds:
    route: str
    min_n: int
    min_chi: int
    exact_min_n: Fraction
    exact_min_chi: Fraction


@dataclass
class ExtractionTrace:
    """Step-by-step record of an extraction attempt.

    ``word`` is the working orientation (rotated/reflected so the route's
    anchor sits at position 0) and ``perm[j]`` the position in the caller's
    pattern that working vertex ``j`` stands for.
    """

    route: str
    pattern: CyclePattern
    word: str = ""
    perm: list[int] = field(default_factory=list)
    thresholds: Optional[Thresholds] = None
    conditions: dict = field(default_factory=dict)
    sequence: list[int] = field(default_factory=list)
    sets: list[frozenset[int]] = field(default_factory=list)
    partition: dict[str, frozenset[int]] = field(default_factory=dict)
    paths: dict[str, list[int]] = field(default_factory=dict)
    attachments: dict[str, int] = field(default_factory=dict)
    restarts: int = 0
    phase: Optional[str] = None
    steps: int = 0
    notes: list[str] = field(default_factory=list)
    embedding: Optional[Embedding] = None

    def note(self, msg: str) -> None:
        self.notes.append(msg)

    def to_dict(self) -> dict:
        return {
            "route": self.route,
            "pattern": self.pattern.word,
            "word": self.word,
            "perm": self.perm,
            "thresholds": None
            if self.thresholds is None
            else {
                "route": self.thresholds.route,
                "min_n": self.thresholds.min_n,
                "min_chi": self.thresholds.min_chi,
            },
            "conditions": self.conditions,
            "sequence": self.sequence,
            "set_sizes": [len(s) for s in self.sets],
            "sets": [sorted(s) for s in self.sets],
            "partition": {k: sorted(v) for k, v in self.partition.items()},
            "paths": self.paths,
            "attachments": self.attachments,
            "restarts": self.restarts,
            "phase": self.phase,
            "steps": self.steps,
            "notes": self.notes,
            "embedding": None if self.embedding is None else list(self.embedding.map),
        }


# -- routing and thresholds -----------------------------------------------------

def _as_pattern(p) -> CyclePattern:
    return p if isinstance(p, CyclePattern) else CyclePattern(p)


def _require_guaranteed(p: CyclePattern) -> None:
    cls = classify(p)
    if cls is not PatternClass.ALWAYS_APPEARS:
        raise PatternNotGuaranteed(_NOT_GUARANTEED.format(word=p.signs, cls=cls))


def route_for(p) -> str:
    p = _as_pattern(p)
    _require_guaranteed(p)
    if contains_motif(p, "FBFB"):
        return "rlrl"
    if contains_motif(p, "FFBB"):
        return "rrll"
    if blocks(p).block_count >= 3:
        return "three-blocks"
    return "two-blocks"


def _ceil(x: Fraction) -> int:
    return math.ceil(x)


def thresholds(p, params: ExtractionParams) -> Thresholds:
    """Order and chromatic thresholds above which the selected route must succeed.

    The unknown oriented-tree constant is replaced by ``params.surrogate``.
    """
    p = _as_pattern(p)
    route = route_for(p)
    eps = params.epsilon
    k = p.k
    c = params.cbar(k - 1)
    if route == "rlrl":
        n_, chi = 12 / eps**2, 4 * c / eps
    elif route in ("rrll", "two-blocks"):
        n_, chi = 48 / eps**3, 16 * c / eps**2
    else:
        if eps >= Fraction(1, 2):
            raise ParameterRejected("the three-block route needs epsilon < 1/2")
        n_ = 48 * k / eps**3
        chi = 16 * c / (eps ** math.ceil(2 / eps) * (1 - 2 * eps))
    return Thresholds(route, _ceil(n_), _ceil(chi), Fraction(n_), Fraction(chi))


def cohesive_thresholds(epsilon, c, r: int, m) -> Thresholds:
    eps, c = Fraction(epsilon), Fraction(c)
    ell = math.ceil(2 / eps)
    n_ = Fraction(ell * ell * (r - 1))
    chi = Fraction(m) / c ** (ell - 1)
    return Thresholds("cohesive", _ceil(n_), _ceil(chi), n_, chi)


# -- chromatic comparisons ------------------------------------------------------

class _Chi:
    """Cached chromatic sandwiches keyed by vertex mask."""

    def __init__(self, D: Digraph, budget: Optional[int]):
        self.D = D
        self.budget = budget
        self.bounds: dict[int, tuple[int, int]] = {}
        self.exact_done: set[int] = set()
        self.evaluations = 0

    def sandwich(self, mask: int) -> tuple[int, int]:
        got = self.bounds.get(mask)
        if got is None:
            self.evaluations += 1
            r = chromatic_bounds(self.D, within=mask)
            got = (r.lower, r.upper)
            self.bounds[mask] = got
        return got

    def tighten(self, mask: int) -> tuple[int, int]:
        if mask not in self.exact_done:
            self.exact_done.add(mask)
            self.evaluations += 1
            r = chromatic_exact(self.D, budget=self.budget, within=mask)
            lo, hi = self.bounds.get(mask, (r.lower, r.upper))
            self.bounds[mask] = (max(lo, r.lower), min(hi, r.upper))
        return self.bounds[mask]

    def at_least(self, mask: int, target) -> Optional[bool]:
        """Is chi(D[mask]) >= target?  ``None`` if the budget cannot decide."""
        lo, hi = self.sandwich(mask)
        if lo >= target:
            return True
        if hi < target:
            return False
        lo, hi = self.tighten(mask)
        if lo >= target:
            return True
        if hi < target:
            return False
        return None


def _threshold_conditions(D: Digraph, th: Thresholds, params: ExtractionParams, chi: _Chi) -> dict:
    n = D.n
    ok_chi = chi.at_least(D.vertex_mask, th.min_chi)
    lo, hi = chi.bounds[D.vertex_mask]
    return {
        "n": n,
        "n_ok": n >= th.exact_min_n,
        "min_out_degree": min_out_degree(D) if n else 0,
        "out_degree_ok": bool(n) and min_out_degree(D) >= params.epsilon * n,
        "chi_sandwich": [lo, hi],
        "chi_ok": ok_chi,
    }


# -- orientation helpers --------------------------------------------------------

def _orientation(p: CyclePattern, start: int, reflected: bool) -> tuple[str, list[int]]:
    k = p.k
    if not reflected:
        word = p.word[start:] + p.word[:start]
        perm = [(start + j) % k for j in range(k)]
    else:
        w = reverse_flip(p.word)
        word = w[start:] + w[:start]
        perm = [(-(j + start)) % k for j in range(k)]
    return word, perm


def _orient_on_motif(p: CyclePattern, motif: str) -> tuple[str, list[int]]:
    hit = find_motif(p, motif)
    if hit is None:
        raise RouteMismatch(f"{p.signs} does not contain the motif {motif}")
    return _orientation(p, *hit)


def _finish(D: Digraph, p: CyclePattern, perm: list[int], qmap: list[int], trace: ExtractionTrace, phase: str):
    pmap = [0] * p.k
    for j, v in enumerate(qmap):
        pmap[perm[j]] = v
    emb = Embedding(p, tuple(pmap))
    if not verify_embedding(D, emb):
        raise AssertionError(f"internal error: {phase} produced an invalid embedding {pmap}")
    trace.embedding = emb
    trace.phase = phase
    return emb, trace


def _start_trace(D, p, route, params, word, perm) -> tuple[ExtractionTrace, _Chi]:
    trace = ExtractionTrace(route, p, word, perm)
    chi = _Chi(D, params.chi_budget)
    if route == "three-blocks" or classify(p) is PatternClass.ALWAYS_APPEARS:
        th = thresholds(p, params)
        th = Thresholds(route, th.min_n, th.min_chi, th.exact_min_n, th.exact_min_chi) if th.route != route else th
        trace.thresholds = th
        trace.conditions = _threshold_conditions(D, th, params, chi)
    return trace, chi


def _argmax_partition(D: Digraph, X: int, sets: list[int]) -> list[int]:
    parts = [0] * len(sets)
    if not sets:
        return parts
    for x in members(X):
        out = D.out_mask(x)
        scores = [(out & s).bit_count() for s in sets]
        j = scores.index(max(scores))
        parts[j] |= 1 << x
    return parts


def _order_by_chi(chi: _Chi, parts: list[int]) -> list[int]:
    keyed = []
    for i, m in enumerate(parts):
        lo, hi = chi.sandwich(m)
        keyed.append((-hi, -lo, i))
    return [i for _, _, i in sorted(keyed)]


def _with_endpoint_out_into(D: Digraph, candidates: int, target: int, need: int = 1) -> int:
    out = 0
    for x in members(candidates):
        if (D.out_mask(x) & target).bit_count() >= need:
            out |= 1 << x
    return out


# -- the FBFB route -------------------------------------------------------------

def _fresh_out_sequence(D: Digraph, limit: Optional[int]) -> tuple[list[int], list[int]]:
    seq, sets = [], []
    covered = 0  # union of closed out-neighbourhoods so far
    while limit is None or len(seq) < limit:
        pick = None
        for v in range(D.n):
            out = D.out_mask(v)
            if 2 * (out & covered).bit_count() < out.bit_count():
                pick = v
                break
        if pick is None:
            break
        out = D.out_mask(pick)
        seq.append(pick)
        sets.append(out & ~covered)
        covered |= out | 1 << pick
    return seq, sets


def extract_rlrl(D: Digraph, p, params: ExtractionParams) -> tuple[Embedding, ExtractionTrace]:
    """Find ``p`` (which must contain ``FBFB``) via fresh out-neighbourhoods.

    Working vertices ``u0 -> u1 <- u2 -> u3 <- u4`` carry the motif (``u4 = u0``
    when ``k = 4``).  First a maximal sequence ``v_1 .. v_l`` is grown in which
    each ``v_i`` has fewer than half of its out-neighbours in earlier closed
    out-neighbourhoods; ``S_i`` are the fresh parts.  Then:

    1. the path ``C - u2`` is sought inside some ``S_i`` and closed through
       ``v_i``;
    2. otherwise the leftover vertices ``X`` are split by which ``S_j`` receives
       most of their out-arcs, the path ``C - {u1, u2, u3}`` is sought in the
       most chromatic part ``X_i``, and its ends are attached to two distinct
       out-neighbours in ``S_i``, both dominated by ``v_i``.
    """
    p = _as_pattern(p)
    word, perm = _orient_on_motif(p, "FBFB")
    k = p.k
    trace, chi = _start_trace(D, p, "rlrl", params, word, perm)
    counter = StepCounter(params.search_budget)
    wp = CyclePattern(word)

    seq, sets = _fresh_out_sequence(D, params.sequence_limit)
    trace.sequence = seq
    trace.sets = [frozenset(members(s)) for s in sets]
    eps_n = params.epsilon * D.n
    trace.conditions["sets_at_least_half_out_degree"] = all(
        2 * s.bit_count() >= D.out_degree(v) for v, s in zip(seq, sets)
    )
    trace.conditions["sequence_length_bound"] = (
        len(seq) <= 2 / params.epsilon if trace.conditions.get("out_degree_ok") else None
    )

    try:
        tail = delete_segment(wp, {2}).word  # u3 .. u_{k-1}, u0, u1
        for i, (v, S) in enumerate(zip(seq, sets)):
            for path in iter_path_embeddings(D, tail, within=S, counter=counter):
                trace.paths["P"] = path
                trace.attachments["v"] = v
                trace.note(f"path C-u2 found inside S_{i + 1}; closed through v_{i + 1}={v}")
                qmap = [0] * k
                qmap[2] = v
                for j, x in enumerate(path):
                    qmap[(3 + j) % k] = x
                return _finish(D, p, perm, qmap, trace, "fresh-set")
        trace.note("no S_i hosts C-u2")

        used = 0
        for v, S in zip(seq, sets):
            used |= S | 1 << v
        X = D.vertex_mask & ~used
        parts = _argmax_partition(D, X, sets)
        trace.partition["X"] = frozenset(members(X))
        for i, part in enumerate(parts):
            trace.partition[f"X_{i + 1}"] = frozenset(members(part))
        order = _order_by_chi(chi, parts)
        trace.note("X parts tried in order " + ", ".join(f"X_{i + 1}{list(chi.sandwich(parts[i]))}" for i in order))
        inner = delete_segment(wp, {1, 2, 3}).word  # u4 .. u0
        for i in order:
            S, Xi, v = sets[i], parts[i], seq[i]
            ends = _with_endpoint_out_into(D, Xi, S, 2 if k == 4 else 1)
            for path in iter_path_embeddings(D, inner, within=Xi, first_within=ends, last_within=ends, counter=counter):
                a, b = path[0], path[-1]  # images of u4 and u0
                for y in members(D.out_mask(a) & S):
                    xs = D.out_mask(b) & S & ~(1 << y)
                    if not xs:
                        continue
                    x = members(xs)[0]
                    trace.paths["P"] = path
                    trace.attachments.update({"v": v, "x'": x, "y'": y})
                    trace.note(f"path C-{{u1,u2,u3}} found in X_{i + 1}; attached via S_{i + 1} and v_{i + 1}={v}")
                    qmap = [0] * k
                    qmap[0], qmap[1], qmap[2], qmap[3] = b, x, v, y
                    for j, w in enumerate(path[:-1]):
                        qmap[4 + j] = w
                    return _finish(D, p, perm, qmap, trace, "leftover-part")
        trace.note("no part X_i hosts an attachable C-{u1,u2,u3}")
    except BudgetExhausted:
        trace.note("search budget exhausted")
    trace.steps = counter.steps
    raise ExtractionFailed(f"rlrl extraction of {p.signs} failed", trace)


# -- the FFBB route -------------------------------------------------------------

def _fresh_in_sequence(D: Digraph, threshold: Fraction, seq: list[int], sets: list[int], limit: Optional[int]) -> None:
    covered = 0
    for v, s in zip(seq, sets):
        covered |= s | 1 << v
    while limit is None or len(seq) < limit:
        pick = None
        for v in range(D.n):
            if v in seq:
                continue
            if (D.in_mask(v) & ~covered).bit_count() >= threshold:
                pick = v
                break
        if pick is None:
            break
        seq.append(pick)
        s = D.in_mask(pick) & ~covered
        sets.append(s)
        covered |= s | 1 << pick


def extract_rrll(D: Digraph, p, params: ExtractionParams, route: str = "rrll") -> tuple[Embedding, ExtractionTrace]:
    """Find ``p`` (which must contain ``FFBB``) via fresh in-neighbourhoods.

    Working vertices ``u0 -> u1 -> u2 <- u3 <- u4``.  The sequence condition
    is that ``v_i`` has at least ``eps^2 n / 8`` in-neighbours outside the
    earlier closed in-neighbourhoods.  Phases:

    1. ``C - u2`` inside some ``S_i``, closed into ``v_i``;
    2. leftover ``X`` split into ``X_A`` (at least ``eps n / 2`` out-arcs into
       the covered part) and ``X_B``; ``X_A`` split by argmax over ``S_j``; the
       path ``C - {u1, u2, u3}`` in some ``X_{A,i}`` is attached through two
       distinct vertices of ``S_i`` into ``v_i``;
    3. otherwise the degree dichotomy on ``X_B`` names a vertex with enough
       fresh in-neighbours; it is appended to the sequence and the phases
       restart.  Without a ``sequence_limit`` the greedy sequence is already
       maximal and no such vertex exists.
    """
    p = _as_pattern(p)
    word, perm = _orient_on_motif(p, "FFBB")
    k = p.k
    trace, chi = _start_trace(D, p, route, params, word, perm)
    counter = StepCounter(params.search_budget)
    wp = CyclePattern(word)
    n = D.n
    eps = params.epsilon
    fresh = eps * eps * n / 8

    seq: list[int] = []
    sets: list[int] = []
    _fresh_in_sequence(D, fresh, seq, sets, params.sequence_limit)
    tail = delete_segment(wp, {2}).word
    inner = delete_segment(wp, {1, 2, 3}).word
    tried_fresh = 0

    try:
        while True:
            trace.sequence = list(seq)
            trace.sets = [frozenset(members(s)) for s in sets]
            for i in range(tried_fresh, len(seq)):
                v, S = seq[i], sets[i]
                for path in iter_path_embeddings(D, tail, within=S, counter=counter):
                    trace.paths["P"] = path
                    trace.attachments["v"] = v
                    trace.note(f"path C-u2 found inside S_{i + 1}; closed into v_{i + 1}={v}")
                    qmap = [0] * k
                    qmap[2] = v
                    for j, x in enumerate(path):
                        qmap[(3 + j) % k] = x
                    return _finish(D, p, perm, qmap, trace, "fresh-set")
            tried_fresh = len(seq)

            covered = 0
            for v, S in zip(seq, sets):
                covered |= S | 1 << v
            X = D.vertex_mask & ~covered
            XA = 0
            for x in members(X):
                if 2 * (D.out_mask(x) & covered).bit_count() >= eps * n:
                    XA |= 1 << x
            XB = X & ~XA
            parts = _argmax_partition(D, XA, sets)
            trace.partition = {"X": frozenset(members(X)), "X_A": frozenset(members(XA)), "X_B": frozenset(members(XB))}
            for i, part in enumerate(parts):
                trace.partition[f"X_A,{i + 1}"] = frozenset(members(part))
            for i in _order_by_chi(chi, parts):
                S, Xi, v = sets[i], parts[i], seq[i]
                ends = _with_endpoint_out_into(D, Xi, S, 2 if k == 4 else 1)
                for path in iter_path_embeddings(D, inner, within=Xi, first_within=ends, last_within=ends, counter=counter):
                    a, b = path[0], path[-1]  # images of u4 and u0
                    for y in members(D.out_mask(a) & S):
                        xs = D.out_mask(b) & S & ~(1 << y)
                        if not xs:
                            continue
                        x = members(xs)[0]
                        trace.paths["P"] = path
                        trace.attachments.update({"v": v, "x'": x, "y'": y})
                        trace.note(f"path C-{{u1,u2,u3}} found in X_A,{i + 1}; attached via S_{i + 1} into v_{i + 1}={v}")
                        qmap = [0] * k
                        qmap[0], qmap[1], qmap[2], qmap[3] = b, x, v, y
                        for j, w in enumerate(path[:-1]):
                            qmap[4 + j] = w
                        return _finish(D, p, perm, qmap, trace, "leftover-part")

            witness = _rrll_dichotomy(D, seq, sets, X, XA, XB, eps, fresh, trace)
            if witness is None or trace.restarts >= params.max_restarts:
                trace.note("dichotomy produced no new sequence vertex")
                break
            s = D.in_mask(witness) & ~covered
            seq.append(witness)
            sets.append(s)
            trace.restarts += 1
    except BudgetExhausted:
        trace.note("search budget exhausted")
    trace.steps = counter.steps
    raise ExtractionFailed(f"{route} extraction of {p.signs} failed", trace)


def _rrll_dichotomy(D, seq, sets, X, XA, XB, eps, fresh, trace) -> Optional[int]:
    """A vertex that may extend the sequence, found through the X_B dichotomy."""
    n = D.n
    if not XB:
        trace.note("X_B is empty")
        return None
    xb = members(XB)
    low = [v for v in xb if 4 * (D.out_mask(v) & XB).bit_count() < eps * n]
    if not low:
        # every X_B vertex sends eps*n/4 arcs inside X_B, so some vertex receives as many
        star = max(xb, key=lambda v: ((D.in_mask(v) & XB).bit_count(), -v))
        trace.note(f"X_B dichotomy: all out-degrees into X_B large; v*={star}")
        if (D.in_mask(star) & X).bit_count() >= fresh:
            return star
        return None
    trace.note(f"X_B dichotomy: v'={low[0]} has few out-neighbours in X_B")
    in_sets = 0
    for s in sets:
        in_sets |= s
    in_sets &= ~mask_of(seq)
    for v in members(in_sets):
        if (D.in_mask(v) & XA).bit_count() >= fresh and v not in seq:
            trace.note(f"v''={v} has at least eps^2 n/8 in-neighbours in X_A")
            return v
    return None


# -- cohesive sets --------------------------------------------------------------

@dataclass
class CohesiveResult:
    X: frozenset[int]
    chi: tuple[int, int]
    method: str
    chain: list[frozenset[int]]
    witnesses: list[int]
    evaluations: int


def _cohesive_check(D: Digraph, X: int, c: Fraction, r: int, chi: _Chi) -> tuple[Optional[int], list]:
    """First vertex of ``X`` violating cohesiveness (or undecidable), else ``None``."""
    lo_x, hi_x = chi.sandwich(X)
    records = []
    for v in members(X):
        R = X & ~r_in_dominated_mask(D, D.out_mask(v), r)
        lo_r, hi_r = chi.sandwich(R)
        if hi_r <= c * lo_x:
            records.append((v, "ok-bounds"))
            continue
        if lo_r > c * hi_x:
            return v, records
        lo_x, hi_x = chi.tighten(X)
        lo_r, hi_r = chi.tighten(R)
        if hi_r <= c * lo_x:
            records.append((v, "ok-exact"))
            continue
        return v, records
    return None, records


def is_cohesive(D: Digraph, X, c, r: int, chi_budget: Optional[int] = None) -> bool:
    Xm = X if isinstance(X, int) else mask_of(X)
    bad, _ = _cohesive_check(D, Xm, Fraction(c), r, _Chi(D, chi_budget))
    return bad is None


def find_cohesive(
    D: Digraph,
    c,
    r: int,
    m: int,
    budget: Optional[int] = 2_000,
    chi_budget: Optional[int] = 50_000,
    within: Optional[int] = None,
) -> CohesiveResult:
    """A ``(c, r)``-cohesive set ``X`` with ``chi(D[X]) >= m``.

    First follows the shrinking chain ``X_1 = V``,
    ``X_{i+1} = X_i - N_r^-(N^+(v_i))`` with ``v_i`` the first vertex
    witnessing that ``X_i`` is not cohesive.  If the chain drops below
    chromatic number ``m`` first, a greedy descent removes one vertex at a
    time, always the one leaving the smallest total cohesiveness deficit.
    ``budget`` caps chromatic evaluations.
    """
    c = Fraction(c)
    if not 0 < c < 1:
        raise ParameterRejected("c must lie in (0, 1)")
    chi = _Chi(D, chi_budget)
    start = D.vertex_mask if within is None else within
    chain = [frozenset(members(start))]
    witnesses: list[int] = []

    def over_budget():
        return budget is not None and chi.evaluations > budget

    X = start
    while X and chi.at_least(X, m) and not over_budget():
        bad, _ = _cohesive_check(D, X, c, r, chi)
        if bad is None:
            return CohesiveResult(frozenset(members(X)), chi.tighten(X), "chain", chain, witnesses, chi.evaluations)
        witnesses.append(bad)
        nxt = X & ~r_in_dominated_mask(D, D.out_mask(bad), r)
        if nxt == X:
            break
        X = nxt
        chain.append(frozenset(members(X)))

    def deficit(Y: int) -> Fraction:
        lo_y, hi_y = chi.tighten(Y)
        total = Fraction(0)
        for v in members(Y):
            R = Y & ~r_in_dominated_mask(D, D.out_mask(v), r)
            lo_r, hi_r = chi.sandwich(R)
            if hi_r > c * lo_y:
                lo_r, hi_r = chi.tighten(R)
            total += max(Fraction(0), hi_r - c * lo_y)
        return total

    X = start
    while X and not over_budget():
        if chi.at_least(X, m) is not True:
            break
        bad, _ = _cohesive_check(D, X, c, r, chi)
        if bad is None:
            return CohesiveResult(frozenset(members(X)), chi.tighten(X), "descent", chain, witnesses, chi.evaluations)
        best, best_score = None, None
        for u in members(X):
            Y = X & ~(1 << u)
            if chi.at_least(Y, m) is not True:
                continue
            score = deficit(Y)
            if best_score is None or score < best_score:
                best, best_score = u, score
            if over_budget():
                break
        if best is None:
            break
        X &= ~(1 << best)
    raise NotFoundWithinBudget(
        f"no ({c}, {r})-cohesive set with chromatic number >= {m} found", chain
    )


# -- at least four blocks ---------------------------------------------------------

def _three_block_orientation(p: CyclePattern) -> tuple[str, list[int], int]:
    """Rotate/reflect so a forward block of length >= 2 starts at position 0.

    Returns the working word, the vertex permutation and that block's length.
    The first qualifying block in canonical order is used.
    """
    for reflected in (False, True):
        w = reverse_flip(p.word) if reflected else p.word
        bd = blocks(w)
        for start, length, d in zip(bd.starts, bd.block_lengths, bd.directions):
            if d == "F" and length >= 2:
                word, perm = _orientation(p, start, reflected)
                return word, perm, length
    raise RouteMismatch(f"{p.signs} has no block of length two or more")


def extract_three_blocks(D: Digraph, p, params: ExtractionParams) -> tuple[Embedding, ExtractionTrace]:
    """Find a pattern with at least four blocks and neither ``FBFB`` nor ``FFBB``.

    Such a pattern alternates forward blocks of length >= 2 with single
    backward arcs.  With the first long block ``u0 -> .. -> u_{l-1}``:

    1. take a cohesive set ``S`` (``c = eps``, ``r = k + 1``); below the
       thresholds none may exist and the whole vertex set is used instead;
    2. a directed path ``P`` on ``l - 1`` vertices inside ``S``, with ends
       ``v_1`` and ``v_{l-1}``;
    3. ``S'`` is ``S`` minus ``P`` and minus everything that is not an
       ``r``-in-dominator of both ``N^+(v_1)`` and ``N^+(v_{l-1})``;
    4. the path ``Q = C - {u0 .. u_{l-1}, u_{k-1}}`` inside ``S'``, closed by
       ``y' in N^+(v_{l-1})`` and ``z' in N^+(v_1)``.

    When no strict ``S'`` works (in a complete digraph it is always empty), a
    second pass searches ``Q`` in ``S`` minus ``P``.
    """
    p = _as_pattern(p)
    _require_guaranteed(p)
    if params.epsilon >= Fraction(1, 2):
        raise ParameterRejected("the three-block route needs epsilon < 1/2")
    if blocks(p).block_count < 3:
        raise RouteMismatch(f"{p.signs} has fewer than three blocks")
    if contains_motif(p, "FBFB") or contains_motif(p, "FFBB"):
        raise RouteMismatch(f"{p.signs} contains FBFB or FFBB; use the motif routes")
    word, perm, first_len = _three_block_orientation(p)
    k = p.k
    ell = first_len + 1
    trace, chi = _start_trace(D, p, "three-blocks", params, word, perm)
    trace.note(f"first long block has length {first_len}; working word {word}")
    counter = StepCounter(params.search_budget)
    eps = params.epsilon
    r = k + 1
    cbar = params.cbar(k - 1)
    m_needed = _ceil(16 * cbar / (1 - 2 * eps))
    ell_c = math.ceil(2 / eps)
    trace.conditions["cohesive_m"] = m_needed
    trace.note(
        f"cohesive-set guarantee needs chi >= m/eps^{ell_c - 1}; the stated threshold uses "
        f"eps^{ell_c}, a factor 1/eps more than necessary (kept as stated)"
    )

    candidates = []
    lo_all, _ = chi.sandwich(D.vertex_mask)
    m_eff = max(1, min(m_needed, lo_all))
    try:
        found = find_cohesive(D, eps, r, m_eff, budget=params.cohesive_budget, chi_budget=params.chi_budget)
        candidates.append(("cohesive", mask_of(found.X)))
        trace.partition["S"] = found.X
        trace.note(f"cohesive set of size {len(found.X)} with chi in {list(found.chi)} (asked m={m_eff})")
    except NotFoundWithinBudget as exc:
        trace.note(f"no cohesive set certified (asked m={m_eff}, chain length {len(exc.chain)}); using V(D)")
    candidates.append(("all", D.vertex_mask))

    qword = word[ell:k - 2]
    try:
        # the relaxed pass drops the dominator filter on S'; the endpoint
        # filters below still demand the attachment out-neighbours
        passes = [(tag, S, relaxed) for relaxed in (False, True) for tag, S in candidates]
        for tag, S, relaxed in passes:
            if relaxed:
                tag += "-relaxed"
            for P in iter_path_embeddings(D, "F" * (ell - 2), within=S, counter=counter):
                pmask = mask_of(P)
                v1, vl = P[0], P[-1]
                X1 = D.out_mask(v1) & ~pmask
                Xl = D.out_mask(vl) & ~pmask
                Y1 = S & ~r_in_dominated_mask(D, D.out_mask(v1), r)
                Yl = S & ~r_in_dominated_mask(D, D.out_mask(vl), r)
                Sp = S & ~pmask if relaxed else S & ~(Y1 | Yl | pmask)
                if not Sp:
                    continue
                first = _with_endpoint_out_into(D, Sp, Xl)
                last = _with_endpoint_out_into(D, Sp, X1)
                for Q in iter_path_embeddings(D, qword, within=Sp, first_within=first, last_within=last, counter=counter):
                    used = pmask | mask_of(Q)
                    y, z = Q[0], Q[-1]
                    for yp in members(D.out_mask(y) & Xl & ~used):
                        zs = D.out_mask(z) & X1 & ~used & ~(1 << yp)
                        if not zs:
                            continue
                        zp = members(zs)[0]
                        trace.partition.setdefault("S", frozenset(members(S)))
                        trace.partition["S'"] = frozenset(members(Sp))
                        trace.partition["X_1"] = frozenset(members(X1))
                        trace.partition["X_l-1"] = frozenset(members(Xl))
                        trace.paths.update({"P": P, "Q": Q})
                        trace.attachments.update({"y'": yp, "z'": zp})
                        trace.note(f"built from the {tag} set")
                        qmap = P + [yp] + Q + [zp]
                        return _finish(D, p, perm, qmap, trace, f"cohesive-{tag}")
    except BudgetExhausted:
        trace.note("search budget exhausted")
    trace.steps = counter.steps
    raise ExtractionFailed(f"three-block extraction of {p.signs} failed", trace)


def extract_two_blocks(D: Digraph, p, params: ExtractionParams) -> tuple[Embedding, ExtractionTrace]:
    """Two blocks of length at least two: the ``FFBB`` route applies directly."""
    p = _as_pattern(p)
    _require_guaranteed(p)
    bd = blocks(p)
    if bd.block_count != 2:
        raise RouteMismatch(f"{p.signs} does not have exactly two blocks")
    return extract_rrll(D, p, params, route="two-blocks")


def extract_any(D: Digraph, p, params: ExtractionParams) -> tuple[Embedding, ExtractionTrace]:
    """Dispatch to the route matching ``p``'s shape."""
    p = _as_pattern(p)
    route = route_for(p)
    if route == "rlrl":
        return extract_rlrl(D, p, params)
    if route == "rrll":
        return extract_rrll(D, p, params)
    if route == "three-blocks":
        return extract_three_blocks(D, p, params)
    return extract_two_blocks(D, p, params)
