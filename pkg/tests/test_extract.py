from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orientlab import (
    CyclePattern,
    Digraph,
    ExtractionFailed,
    ExtractionParams,
    PatternClass,
    PatternNotGuaranteed,
    all_patterns,
    classify,
    extract_any,
    find_cohesive,
    random_digraph,
    thresholds,
    verify_embedding,
)
from orientlab.extract import (
    NotFoundWithinBudget,
    ParameterRejected,
    RouteMismatch,
    cohesive_thresholds,
    extract_rlrl,
    extract_rrll,
    extract_three_blocks,
    extract_two_blocks,
    is_cohesive,
    route_for,
)
from orientlab.pattern import blocks, contains_motif

import oracles
from strategies import digraphs
from test_acceptance import blob_cycle

HALF = Fraction(1, 2)
TWO_FIFTHS = Fraction(2, 5)


def complete(n):
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def forced(kmax=6):
    return [p for k in range(4, kmax + 1) for p in all_patterns(k) if classify(p) is PatternClass.ALWAYS_APPEARS]


# -- thresholds -------------------------------------------------------------------

def test_thresholds_alternating():
    th = thresholds(CyclePattern("FBFB"), ExtractionParams(HALF))
    assert (th.route, th.min_n, th.min_chi) == ("rlrl", 48, 32)


def test_thresholds_converging():
    th = thresholds(CyclePattern("FFBB"), ExtractionParams(HALF))
    assert (th.min_n, th.min_chi) == (384, 256)


def test_thresholds_three_blocks():
    th = thresholds(CyclePattern("FFBFFB"), ExtractionParams(TWO_FIFTHS))
    assert th.route == "three-blocks"
    assert (th.min_n, th.min_chi) == (4500, 125000)
    with pytest.raises(ParameterRejected):
        thresholds(CyclePattern("FFBFFB"), ExtractionParams(HALF))


def test_cohesive_thresholds():
    th = cohesive_thresholds(HALF, HALF, 3, 4)
    assert (th.min_n, th.min_chi) == (32, 32)


@pytest.mark.parametrize("word", ["FFF", "FFFF", "FFFB", "FF"])
def test_unforced_patterns_are_refused(word):
    with pytest.raises(PatternNotGuaranteed, match="orientlab.construct"):
        thresholds(CyclePattern(word), ExtractionParams(HALF))
    with pytest.raises(PatternNotGuaranteed):
        extract_any(complete(8), word, ExtractionParams(HALF))


@pytest.mark.parametrize("eps", [0, 1, Fraction(3, 2), -1])
def test_epsilon_must_be_a_proper_fraction(eps):
    with pytest.raises(ParameterRejected):
        ExtractionParams(eps)


def test_dispatch_preconditions_up_to_twelve():
    for k in range(4, 13):
        for p in all_patterns(k):
            if classify(p) is not PatternClass.ALWAYS_APPEARS:
                continue
            route = route_for(p)
            if route == "rlrl":
                assert contains_motif(p, "FBFB")
            elif route == "rrll":
                assert contains_motif(p, "FFBB")
            elif route == "three-blocks":
                assert blocks(p).block_count >= 3
                assert not contains_motif(p, "FBFB") and not contains_motif(p, "FFBB")
            else:
                bd = blocks(p)
                assert bd.block_count == 2 and min(bd.block_lengths) >= 2


# -- routes -------------------------------------------------------------------------

def test_rlrl_on_complete_digraph():
    D = complete(10)
    emb, trace = extract_rlrl(D, "FBFB", ExtractionParams(TWO_FIFTHS))
    assert verify_embedding(D, emb) and trace.route == "rlrl"


def test_rlrl_fails_on_directed_four_cycle():
    D = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    with pytest.raises(ExtractionFailed) as info:
        extract_rlrl(D, "FBFB", ExtractionParams(Fraction(1, 4)))
    assert info.value.trace.embedding is None


def test_rlrl_needs_the_motif():
    with pytest.raises(RouteMismatch):
        extract_rlrl(complete(6), "FFBB", ExtractionParams(HALF))


def test_rrll_on_complete_digraph():
    D = complete(12)
    emb, _ = extract_rrll(D, "FFBB", ExtractionParams(TWO_FIFTHS))
    assert verify_embedding(D, emb)


def test_rrll_fails_on_arcless_digraph():
    with pytest.raises(ExtractionFailed) as info:
        extract_rrll(Digraph(10), "FFBB", ExtractionParams(HALF))
    trace = info.value.trace
    assert trace.sequence == [] and trace.restarts == 0
    assert any("X_B" in note for note in trace.notes)


def test_rrll_restart_extends_sequence():
    D = random_digraph(12, 0.3, seed=26)
    emb, trace = extract_rrll(D, "FFBB", ExtractionParams(HALF, sequence_limit=1))
    assert trace.restarts == 1 and len(trace.sequence) == 2
    assert verify_embedding(D, emb)
    # the appended vertex has enough fresh in-neighbours
    fresh = HALF * HALF * D.n / 8
    assert len(trace.sets[1]) >= fresh


def test_three_blocks_on_complete_digraph():
    D = complete(14)
    emb, trace = extract_three_blocks(D, "FFBFFB", ExtractionParams(TWO_FIFTHS))
    assert verify_embedding(D, emb)
    assert set(trace.paths) == {"P", "Q"} and set(trace.attachments) == {"y'", "z'"}


def test_three_blocks_refusals():
    with pytest.raises(RouteMismatch):
        extract_three_blocks(complete(10), "FBFB", ExtractionParams(TWO_FIFTHS))
    with pytest.raises(ParameterRejected):
        extract_three_blocks(complete(10), "FFBFFB", ExtractionParams(HALF))


def test_two_blocks():
    emb, trace = extract_two_blocks(complete(10), "FFBB", ExtractionParams(TWO_FIFTHS))
    assert trace.route == "two-blocks"
    with pytest.raises(PatternNotGuaranteed):
        extract_two_blocks(complete(10), "FFFB", ExtractionParams(TWO_FIFTHS))
    D = random_digraph(40, 0.6, seed=1)
    emb, _ = extract_two_blocks(D, "FFFBBB", ExtractionParams.from_digraph(D, cap=TWO_FIFTHS))
    assert verify_embedding(D, emb)


@pytest.mark.parametrize("p", forced(), ids=lambda p: p.word)
def test_every_forced_pattern_in_every_orientation(p):
    D = complete(14)
    for q in (p, p.rotate(1), p.reflect(), p.rotate(2).reflect()):
        emb, _ = extract_any(D, q, ExtractionParams(TWO_FIFTHS))
        assert emb.pattern.word == q.word
        assert verify_embedding(D, emb)


def test_trace_invariants_on_random_digraphs():
    for seed in range(5):
        D = random_digraph(40, 0.6, seed=seed)
        params = ExtractionParams.from_digraph(D, cap=TWO_FIFTHS, sequence_limit=None)
        n, eps = D.n, params.epsilon
        _, t1 = extract_rlrl(D, "FBFBF", params)
        _, t2 = extract_rrll(D, "FFBBF", params)
        for t in (t1, t2):
            sets = t.sets
            assert all(a.isdisjoint(b) for i, a in enumerate(sets) for b in sets[i + 1:])
        assert all(2 * len(s) >= D.out_degree(v) for v, s in zip(t1.sequence, t1.sets))
        assert all(len(s) >= eps * eps * n / 8 for s in t2.sets)
        assert len(t1.sequence) <= 2 / eps
        assert len(t2.sequence) <= 8 / eps**2
        assert t1.conditions["n_ok"] is False  # desk scale is below the thresholds


@settings(max_examples=60, deadline=None)
@given(digraphs(min_n=4, max_n=8), st.sampled_from([p.word for p in forced(5)]))
def test_extraction_is_sound(D, word):
    params = ExtractionParams(Fraction(1, 3), search_budget=20_000)
    try:
        emb, trace = extract_any(D, word, params)
    except ExtractionFailed:
        return
    assert verify_embedding(D, emb)
    assert oracles.brute_contains(D, CyclePattern(word).word)


def test_trace_serialises():
    import json

    D = complete(10)
    _, trace = extract_any(D, "FBFB", ExtractionParams(TWO_FIFTHS))
    d = json.loads(json.dumps(trace.to_dict()))
    assert d["route"] == "rlrl" and len(d["embedding"]) == 4


# -- cohesive sets ----------------------------------------------------------------

def test_cohesive_blob_cycle():
    D = blob_cycle(3, 5)
    res = find_cohesive(D, HALF, 2, 3)
    assert oracles.brute_chi(D, res.X) >= 3
    assert oracles.brute_cohesive(D, res.X, HALF, 2)
    assert is_cohesive(D, res.X, HALF, 2)


def test_complete_digraph_has_no_spanning_cohesive_set():
    D = complete(6)
    assert not oracles.brute_cohesive(D, range(6), HALF, 1)
    with pytest.raises(NotFoundWithinBudget) as info:
        find_cohesive(D, HALF, 1, 6)
    assert info.value.chain[0] == frozenset(range(6))


def test_arcless_digraph_has_no_two_chromatic_set():
    with pytest.raises(NotFoundWithinBudget):
        find_cohesive(Digraph(5), HALF, 1, 2)


def test_cohesive_chain_descends():
    D = random_digraph(20, 0.3, seed=0)
    res = find_cohesive(D, Fraction(2, 3), 2, 3)
    chain = res.chain
    assert all(b < a for a, b in zip(chain, chain[1:]))
    assert oracles.brute_cohesive(D, res.X, Fraction(2, 3), 2)


def test_cohesive_rejects_bad_c():
    with pytest.raises(ParameterRejected):
        find_cohesive(complete(3), 1, 1, 1)
