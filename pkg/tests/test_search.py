import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orientlab import (
    CyclePattern,
    Digraph,
    Embedding,
    PathPattern,
    Status,
    blowup_cycle,
    contains_pattern,
    find_oriented_path,
    forbidden_family_check,
    verify_embedding,
)
from orientlab.pattern import RLRL

import oracles
from strategies import digraphs, words


def directed_cycle(n):
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def test_directed_five_cycle():
    o = contains_pattern(directed_cycle(5), CyclePattern("FFFFF"))
    assert o.found and verify_embedding(directed_cycle(5), o.embedding)


def test_blowup_has_no_directed_four_cycle():
    o = contains_pattern(blowup_cycle(4, 2), CyclePattern("FFFF"))
    assert o.status is Status.NOT_FOUND and o.exhaustive


def test_alternating_path_in_complete_digraph():
    D = complete(6)
    o = find_oriented_path(D, RLRL)
    assert o.found and len(set(o.embedding.map)) == 5
    assert verify_embedding(D, o.embedding)


def test_forbidden_vertices_are_avoided():
    D = directed_cycle(4)
    o = find_oriented_path(D, PathPattern("FF"), forbidden={0})
    assert o.found and 0 not in o.embedding.map
    o = find_oriented_path(D, PathPattern("FFF"), forbidden={0})
    assert o.status is Status.NOT_FOUND


def test_single_vertex_path():
    o = find_oriented_path(Digraph(1), PathPattern(""))
    assert o.embedding.map == (0,)


def test_budget_gives_inconclusive():
    o = contains_pattern(blowup_cycle(4, 3), CyclePattern("FFFF"), budget=5)
    assert o.status is Status.INCONCLUSIVE and o.steps > 5


def test_verify_embedding_rejects_bad_maps():
    D = directed_cycle(5)
    good = Embedding(CyclePattern("FFFFF"), (0, 1, 2, 3, 4))
    assert verify_embedding(D, good)
    assert not verify_embedding(D, Embedding(CyclePattern("FFFFF"), (1, 0, 2, 3, 4)))
    assert not verify_embedding(D, Embedding(CyclePattern("FFFFF"), (0, 1, 2, 3)))
    assert not verify_embedding(D, Embedding(CyclePattern("FFFFF"), (0, 1, 2, 3, 9)))
    assert not verify_embedding(D, Embedding(CyclePattern("FFF"), (0, 0, 1)))


def test_family_check_on_transitive_triangle():
    T = Digraph(3, [(0, 1), (1, 2), (0, 2)])
    rep = forbidden_family_check(T, 3)
    assert rep[CyclePattern("FFB")].found
    assert not rep[CyclePattern("FFF")].found and rep[CyclePattern("FFF")].exhaustive


@settings(max_examples=150, deadline=None)
@given(digraphs(max_n=7), words.filter(lambda w: len(w) <= 6))
def test_search_agrees_with_oracle(D, w):
    p = CyclePattern(w)
    o = contains_pattern(D, p)
    assert o.found == oracles.brute_contains(D, p.word)
    if o.found:
        assert verify_embedding(D, o.embedding)
    else:
        assert o.exhaustive


@settings(max_examples=80, deadline=None)
@given(digraphs(max_n=7), words.filter(lambda w: len(w) <= 6), st.integers(0, 6), st.booleans())
def test_outcome_is_symmetric(D, w, s, reflect):
    p = CyclePattern(w)
    q = p.rotate(s).reflect() if reflect else p.rotate(s)
    assert contains_pattern(D, p).found == contains_pattern(D, q).found


@settings(max_examples=80, deadline=None)
@given(digraphs(max_n=8), st.integers(3, 4))
def test_family_check_matches_oracle(D, k):
    rep = forbidden_family_check(D, k)
    clear = all(not o.found for o in rep.values())
    assert clear == oracles.brute_family_free(D, k)


@pytest.mark.parametrize("k", [3, 4])
def test_cloning_keeps_family_free_examples(k):
    D = directed_cycle(k + 2)
    assert all(not o.found for o in forbidden_family_check(D, k).values())
    for v in range(D.n):
        E = D.copy()
        E.clone(v)
        rep = forbidden_family_check(E, k)
        assert all(o.exhaustive and not o.found for o in rep.values())
