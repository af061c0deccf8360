import itertools

import pytest

from rpqkit.lang import parse
from rpqkit.nfa import to_nfa, words_up_to
from rpqkit.ste import (
    EmptyLanguageError,
    SteProfile,
    bordered_value,
    classify,
    conflict_positions,
    cut_borders,
    recognize_ste,
    ste_derivative,
)

STE_EXPRESSIONS = [
    "a*", "a*b", "a{2}b*", "a{2}ba*", "(a+b){2}a*", "abc*", "a?b?", "a{3}", "(a+b)*",
    "a+", "ab", "a{2}a*", "a*b?", "a1 a2?", "(a+b)+", "b?a*c", "a*(a+b)(a+b)", "a?a*",
]


def fs(*symbols):
    return frozenset(symbols)


def test_profile_of_a_star_b():
    p = recognize_ste("a*b")
    assert (p.k1, p.k2, p.k_r) == (0, 1, 1)
    assert p.star_atom == fs("a")
    assert p.suffix_atoms == (fs("b"),)


def test_union_of_non_atoms_is_rejected():
    p = recognize_ste("(a b*)+c")
    assert not p
    assert p.reason


def test_plus_rewrites_to_atom_then_star():
    p = recognize_ste("(a+b)+")
    assert p.k1 == 1 and p.star_atom == fs("a", "b")
    assert p.prefix_atoms == (fs("a", "b"),)


def test_empty_language_is_an_error():
    with pytest.raises(EmptyLanguageError):
        recognize_ste("a∅")


@pytest.mark.parametrize("text", STE_EXPRESSIONS)
def test_profile_language_equals_expression(text):
    p = recognize_ste(text)
    assert p
    n = to_nfa(text)
    m = to_nfa(p.to_ast())
    for w in words_up_to("abc", 6):
        assert n.accepts(w) == m.accepts(w) == p.accepts(w), w


@pytest.mark.parametrize(
    "text, borders",
    [("a*b", (0, 1)), ("abc*", (2, 0)), ("(a+b)(a+b)(a+b)a*", (0, 0)), ("aaaab*", (4, 0)), ("a?b?c?", (0, 0))],
)
def test_cut_borders(text, borders):
    br = cut_borders(recognize_ste(text))
    assert (br.left_cut_border, br.right_cut_border) == borders
    assert br.bordered_value == max(borders)


@pytest.mark.parametrize(
    "text, positions",
    [("aaab*", []), ("aaaba*", [("left", 1), ("left", 2), ("left", 3)]), ("bba*", [])],
)
def test_conflict_positions(text, positions):
    assert conflict_positions(recognize_ste(text)) == positions


@pytest.mark.parametrize("text, value", [("a*b", 1), ("a?b?c?", 0), ("aaaab*", 4)])
def test_bordered_value(text, value):
    assert bordered_value(recognize_ste(text)) == value


@pytest.mark.parametrize("text", STE_EXPRESSIONS)
def test_border_invariants(text):
    p = recognize_ste(text)
    br = cut_borders(p)
    assert br.left_cut_border <= p.k1 and br.right_cut_border <= p.k2
    for side, index in br.conflict_positions:
        limit = br.left_cut_border if side == "left" else br.right_cut_border
        assert 1 <= index <= limit
    if br.bordered_value == 0:
        assert not br.conflict_positions


def test_profiles_normalize_empty_sides():
    assert SteProfile((), False, fs("a")) == SteProfile((), True, fs("a"))
    assert SteProfile((fs("a"),)).accepts(("a",))
    assert not SteProfile((fs("a"),)).accepts_empty()


@pytest.mark.parametrize("text", ["a{2}ba*", "(a+b){2}a*", "a*b?", "abc*", "a?b?", "a*(a+b)b"])
def test_derivative_is_union_of_profiles(text):
    p = recognize_ste(text)
    full = to_nfa(text)
    for cut in range(0, 4):
        for w in itertools.product("abc", repeat=cut):
            parts = ste_derivative(p, w)
            for v in words_up_to("abc", 4):
                expected = full.accepts(w + v)
                assert any(q.accepts(v) for q in parts) == expected, (w, v)


def test_classify_report():
    report = classify("abc*")
    assert report["ste"] is True
    assert report["cut_borders"] == [2, 0]
    assert report["k_r"] == 2
    assert classify("(a+b)*")["downward_closed"] is True
    assert classify("(a b*)+c")["ste"] is False


def test_classify_accepts_parsed_trees():
    assert classify(parse("a*b"))["cut_borders"] == [0, 1]
