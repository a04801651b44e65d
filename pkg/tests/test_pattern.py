import pytest
from hypothesis import given
from hypothesis import strategies as st

from orientlab import CyclePattern, PathPattern, PatternClass, PatternError, all_patterns, blocks, classify
from orientlab.pattern import (
    InvalidSegment,
    contains_motif,
    delete_segment,
    find_motif,
    forbidden_family,
    parse_word,
    remaining_positions,
    reverse_flip,
)

from strategies import words


def test_parse_accepts_sign_syntax():
    assert parse_word("++--") == "FFBB"
    assert CyclePattern("+-+-").word == "FBFB"
    with pytest.raises(PatternError):
        parse_word("+x")
    with pytest.raises(PatternError):
        CyclePattern("F")


@pytest.mark.parametrize(
    "word,lengths",
    [("FFFF", (4,)), ("FFFB", (3, 1)), ("FBFB", (1, 1, 1, 1)), ("FFBFBB", (2, 1, 1, 2)), ("BFFB", (2, 2))],
)
def test_blocks(word, lengths):
    assert blocks(word).block_lengths == lengths


@pytest.mark.parametrize(
    "word,cls",
    [
        ("FFFF", PatternClass.DIRECTED_CYCLE),
        ("FFFB", PatternClass.SINGLE_FLIP),
        ("FFBB", PatternClass.ALWAYS_APPEARS),
        ("FBFB", PatternClass.ALWAYS_APPEARS),
        ("FFB", PatternClass.SINGLE_FLIP),
        ("FB", PatternClass.DIRECTED_CYCLE),
    ],
)
def test_classify(word, cls):
    assert classify(word) is cls


def test_two_letter_words_are_the_directed_two_cycle():
    assert CyclePattern("FB").word == "FF"
    assert CyclePattern("+-").canonical.signs == "++"


@given(words, st.integers(0, 10), st.booleans())
def test_class_and_canonical_form_are_symmetric(w, s, reflect):
    p = CyclePattern(w)
    q = p.rotate(s)
    if reflect:
        q = q.reflect()
    assert classify(q) is classify(p)
    assert q.canonical == p.canonical
    assert p.canonical.canonical == p.canonical


def test_pattern_counts():
    # necklaces over {F, B} up to rotation and reverse-with-flip
    assert [len(all_patterns(k)) for k in range(3, 7)] == [2, 4, 4, 9]
    forced = [p.word for k in (4, 5, 6) for p in all_patterns(k) if classify(p) is PatternClass.ALWAYS_APPEARS]
    assert forced == [
        "FFBB", "FBFB", "FFFBB", "FFBFB", "FFFFBB", "FFFBFB", "FFFBBB", "FFBFFB", "FFBFBB", "FFBBFB", "FBFBFB",
    ]


def test_motif_implies_always_appears_up_to_twelve():
    for k in range(4, 13):
        for p in all_patterns(k):
            if contains_motif(p, "FBFB") or contains_motif(p, "FFBB"):
                assert classify(p) is PatternClass.ALWAYS_APPEARS


def test_find_motif_reports_reflection():
    assert find_motif("FFBB", "FFBB") == (0, False)
    assert find_motif("BBFF", "FFBB") == (2, False)
    assert find_motif("FFFF", "FBFB") is None
    # FFF only appears when FBBB is read backwards
    p = CyclePattern("FBBB")
    hit = find_motif(p, "FFF")
    assert hit is not None and hit[1] is True


def test_delete_segment():
    p = CyclePattern("FBFB")
    assert remaining_positions(p, {2}) == [3, 0, 1]
    assert delete_segment(p, {2}) == PathPattern("BF")
    assert delete_segment(p, {1, 2, 3}) == PathPattern("")
    assert delete_segment("FFBBF", {1, 2, 3}).word == "F"
    with pytest.raises(InvalidSegment):
        delete_segment(p, {0, 2})
    with pytest.raises(InvalidSegment):
        delete_segment(p, {0, 1, 2, 3})


def test_forbidden_family():
    assert [p.word for p in forbidden_family(3)] == ["FF", "FFF", "FFB"]
    assert [p.word for p in forbidden_family(4)] == ["FF", "FFF", "FFB", "FFFF", "FFFB"]
    with pytest.raises(PatternError):
        forbidden_family(1)


def test_path_pattern_reverse():
    assert PathPattern("FFB").reversed().word == "FBB"
    assert PathPattern().order == 1
    assert reverse_flip("FFB") == "FBB"
