import numpy as np
import pytest
from hypothesis import given, strategies as st

from omega_frag.algebra import syntactic_quotient, up_membership
from omega_frag.buchi import (
    Buchi,
    Concat,
    Inf,
    Klass,
    Letter,
    Omega,
    Star,
    Union,
    lasso_accepts,
    letter_matrix,
    matrix_product,
    parse_regex,
    recognize,
    regex_language,
    to_automaton,
    tree_size,
)
from omega_frag.errors import NullableOmega, RegexSyntaxError
from omega_frag.oracle import naive_regex_membership
from omega_frag.words import up

from conftest import EXAMPLE, lassos

REGEXES = [EXAMPLE, "[ab]*a[b]^w", "[ab]^inf", "(ab)^w|b*", "a*b[ab]*a^w", "(a[ab])*b^inf", "([b]*a)^w"]


def test_parse_trees():
    r = parse_regex("[ab]*a[b]^w")
    assert r == Concat((Star(Klass(frozenset("ab"))), Letter("a"), Omega(Letter("b"))))
    r = parse_regex(EXAMPLE)
    assert isinstance(r, Omega) and isinstance(r.body, Concat)
    assert parse_regex("a|b*") == Union((Letter("a"), Star(Letter("b"))))
    assert parse_regex("[a]^inf") == Inf(Letter("a"))
    assert parse_regex("a^omega") == Omega(Letter("a"))


@pytest.mark.parametrize("text", REGEXES)
def test_print_parse_round_trip(text):
    r = parse_regex(text)
    assert parse_regex(str(r)) == r


@pytest.mark.parametrize("text,pos", [("(1)^w", 3), ("a^w b", 4), ("(a", 2), ("a^x", 2), ("[]", 0), ("a^w*", 3)])
def test_syntax_errors_carry_positions(text, pos):
    with pytest.raises(RegexSyntaxError) as info:
        parse_regex(text)
    assert info.value.position == pos
    assert f"position {pos}" in str(info.value)


def test_nullable_omega():
    with pytest.raises(NullableOmega):
        parse_regex("(1)^w")
    with pytest.raises(NullableOmega):
        parse_regex("(a*)^inf")


def test_automaton_sizes():
    assert to_automaton("a").n_states == 2
    a = to_automaton(EXAMPLE)
    assert lasso_accepts(a, up("", "aa"))
    assert not lasso_accepts(a, up("aa", "ab"))
    assert a.mode == "INFINITE"
    assert to_automaton("[ab]^inf").mode == "MIXED"
    assert to_automaton("a*").mode == "FINITE"


@given(st.lists(st.sampled_from(["a", "[ab]", "b*", "(ab)*"]), min_size=1, max_size=6))
def test_construction_size_linear(parts):
    r = parse_regex("(a" + "".join(parts) + ")^w")
    assert to_automaton(r).n_states <= 2 * tree_size(r) + 2


def test_full_language_automaton():
    a = to_automaton("[ab]^inf")
    lang = recognize(a)
    assert syntactic_quotient(lang).monoid.size == 1
    for alpha in [up(""), up("ab"), up("", "ab"), up("b", "a")]:
        assert lasso_accepts(a, alpha) and up_membership(lang, alpha)


def test_recognize_example_and_sigma2_language():
    assert syntactic_quotient(regex_language(EXAMPLE)).monoid.size == 6
    lang = regex_language("[ab]*a[b]^w")
    assert up_membership(lang, up("a", "b"))
    assert not up_membership(lang, up("", "ab"))
    assert not up_membership(lang, up("ab"))


@pytest.mark.parametrize("text", REGEXES)
@given(alpha=lassos(max_prefix=4, max_loop=4))
def test_three_way_agreement(text, alpha):
    a = to_automaton(text, "ab")
    lang = recognize(a)
    expected = naive_regex_membership(text, alpha)
    assert lasso_accepts(a, alpha) == expected
    assert up_membership(lang, alpha) == expected


def test_matrix_product_associative():
    a = to_automaton(EXAMPLE)
    ms = [letter_matrix(a, x) for x in "ab"]
    for x in ms:
        for y in ms:
            for z in ms:
                assert np.array_equal(matrix_product(matrix_product(x, y), z),
                                      matrix_product(x, matrix_product(y, z)))


def test_deterministic_input_rows():
    aut = Buchi(2, ("a", "b"), frozenset({(0, "a", 1), (0, "b", 0), (1, "a", 1), (1, "b", 0)}),
                frozenset({0}), frozenset({1}))
    lang = recognize(aut)
    # x mats from generate are not exposed; check letter matrices and membership instead
    for x in "ab":
        assert ((letter_matrix(aut, x) > 0).sum(axis=1) <= 1).all()
    assert up_membership(lang, up("", "ab")) and not up_membership(lang, up("a", "b"))


def test_automaton_json_round_trip():
    a = to_automaton(EXAMPLE)
    b = Buchi.from_json(a.to_json())
    assert b == a
    d = a.to_dict()
    d["initial"] = []
    with pytest.raises(ValueError):
        Buchi.from_dict(d)


def test_automaton_with_named_states():
    d = {"states": ["p", "q"], "alphabet": ["a", "b"], "transitions": [["p", "a", "q"], ["q", "b", "q"]],
         "initial": ["p"], "buchi_accepting": ["q"], "finite_accepting": ["q"]}
    lang = recognize(Buchi.from_dict(d))
    assert up_membership(lang, up("a", "b"))
    assert up_membership(lang, up("abb"))
    assert not up_membership(lang, up("b"))
