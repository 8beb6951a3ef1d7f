import itertools
import re

import pytest
from hypothesis import given, strategies as st

from omega_frag.errors import BudgetExceeded, NotMember, TailKindMismatch
from omega_frag.logic import eval_fo_finite
from omega_frag.monomials import (
    Monomial,
    contains_finite,
    contains_up,
    count_k_monomials,
    enumerate_k_monomials,
    equiv_k,
    equiv_k_inf,
    included,
    leftmost_factorization,
    membership_vector,
    n_k,
    refine,
    to_sigma2_formula,
)
from omega_frag.oracle import monomial_pattern, words_upto
from omega_frag.words import UPWord, up

from conftest import lassos, words

M = Monomial.parse
FINITE_2 = enumerate_k_monomials("ab", 2)
INFINITE_2 = enumerate_k_monomials("ab", 2, infinite=True)
finite_monomials = st.sampled_from(FINITE_2)
infinite_monomials = st.sampled_from(INFINITE_2)


def brute_up_member(m: Monomial, alpha: UPWord) -> bool:
    """Split search on a long unrolling: marks in the unrolled part, remainder over the tail block."""
    if alpha.is_finite:
        return re.fullmatch(monomial_pattern(m), alpha.prefix) is not None
    if not set(alpha.loop) <= m.alphabets[-1]:
        return False
    text = alpha.prefix + alpha.loop * (m.degree + 3)
    finite = Monomial(m.alphabets, m.markers, False)
    return any(re.fullmatch(monomial_pattern(finite), text[:p]) for p in range(len(text) + 1)
               if set(text[p:]) <= m.alphabets[-1])


def test_parse_and_text_form():
    m = M("[ab]* a [b]* b [ab]^inf")
    assert m.degree == 2 and m.infinite
    assert m.markers == "ab"
    assert str(m) == "[ab]* a [b]* b [ab]^inf"
    assert M("[]*").alphabets == (frozenset(),) and not M("[]*").infinite
    with pytest.raises(ValueError):
        M("[a]^inf b [a]*")


def test_contains_finite_examples():
    assert contains_finite(M("[a]* b [b]*"), "ab")
    assert not contains_finite(M("[]* a []*"), "aa")
    assert contains_finite(M("[ab]* a [b]^inf"), "ab")
    assert contains_finite(M("[]*"), "")


def test_contains_up_examples():
    assert contains_up(M("[ab]* a [b]^inf"), up("a", "b"))
    assert not contains_up(M("[ab]* a [b]^inf"), up("", "ab"))
    assert contains_up(M("[ab]^inf"), up("ab", "ba"))
    with pytest.raises(TailKindMismatch):
        contains_up(M("[ab]* a [b]*"), up("", "b"))


@given(infinite_monomials, lassos(max_prefix=4, max_loop=3))
def test_contains_up_matches_split_search(m, alpha):
    assert contains_up(m, alpha) == brute_up_member(m, alpha)


@given(finite_monomials, words())
def test_contains_finite_matches_regex(m, w):
    assert contains_finite(m, w) == (re.fullmatch(monomial_pattern(m), w) is not None)


def test_enumeration_counts():
    assert [str(m) for m in enumerate_k_monomials("a", 0)] == ["[]*", "[a]*"]
    assert len(enumerate_k_monomials("a", 1)) == 6 == count_k_monomials(1, 1)
    assert [str(m) for m in enumerate_k_monomials("ab", 0, infinite=True)] == [
        "[]^inf", "[a]^inf", "[b]^inf", "[ab]^inf"]
    assert n_k("ab", 2) == len(set(FINITE_2)) == count_k_monomials(2, 2)


def test_enumeration_guard():
    with pytest.raises(BudgetExceeded):
        enumerate_k_monomials("abcd", 1)
    with pytest.raises(BudgetExceeded):
        enumerate_k_monomials("ab", 4)
    assert len(enumerate_k_monomials("abcd", 0, force=True)) == 16


def test_leftmost_factorization_is_earliest():
    m = M("[ab]* a [ab]* b [ab]*")
    assert leftmost_factorization(m, "babab") == [1, 2]
    assert leftmost_factorization(M("[a]* b [b]*"), "aab") == [2]
    assert leftmost_factorization(M("[]* a []*"), "aa") is None


def test_refine_examples():
    assert refine("ab", [M("[a]* b [ab]*"), M("[ab]* b [b]*")]) == M("[a]* b [b]*")
    assert refine("ab", [M("[]* a [b]*"), M("[a]* b []*")]) == M("[]* a []* b []*")
    single = M("[ab]* a [b]*")
    n = refine("bab", [single])
    assert contains_finite(n, "bab") and included(n, single)
    with pytest.raises(NotMember):
        refine("b", [M("[ab]* a [ab]*")])
    with pytest.raises(TailKindMismatch):
        refine("a", [M("[ab]* a [ab]^inf")])


def test_inclusion():
    assert included(M("[a]* b [b]*"), M("[ab]* b [ab]*"))
    assert not included(M("[ab]* b [ab]*"), M("[a]* b [b]*"))
    assert included(M("[]* a []* b []*"), M("[ab]*"))
    assert not included(M("[ab]*"), M("[a]*"))


@given(finite_monomials, finite_monomials)
def test_inclusion_matches_bounded_word_check(n, m):
    # inclusion must at least hold on all short words
    if included(n, m):
        for w in words_upto("ab", 6):
            if contains_finite(n, w):
                assert contains_finite(m, w)


@given(words(), st.data())
def test_refine_soundness(w, data):
    containing = [m for m in FINITE_2 if contains_finite(m, w)]
    m1 = data.draw(st.sampled_from(containing))
    m2 = data.draw(st.sampled_from(containing))
    n = refine(w, [m1, m2])
    assert contains_finite(n, w)
    assert included(n, m1) and included(n, m2)
    assert n.degree <= m1.degree + m2.degree
    for x in words_upto("ab", 5):
        if contains_finite(n, x):
            assert contains_finite(m1, x) and contains_finite(m2, x)


def test_equiv_k_examples():
    assert equiv_k("abba", "abba", 2)
    assert not equiv_k("a", "aa", 1, "a")
    assert equiv_k("aa", "aaa", 1, "a")
    assert not equiv_k("aa", "aaa", 2, "a")


def test_equiv_k_inf_examples():
    assert equiv_k_inf(up("ab", "a"), up("ab", "a"), 2)
    assert not equiv_k_inf(up("a", "b"), up("aa", "b"), 1, "ab")
    for k in range(4):
        assert equiv_k_inf(up("", "b"), up("b", "bb"), k, "ab")


@given(words(), words(), words(max_size=3), words(max_size=3), st.integers(0, 2))
def test_equiv_k_is_a_congruence(u, v, x, y, k):
    if equiv_k(u, v, k, "ab"):
        assert equiv_k(x + u + y, x + v + y, k, "ab")


@given(words(), words(), st.integers(0, 1))
def test_equiv_k_refines(u, v, k):
    if equiv_k(u, v, k + 1, "ab"):
        assert equiv_k(u, v, k, "ab")


def test_equiv_k_classes_are_unions_of_finer_classes():
    ws = list(words_upto("ab", 4))
    for u, v in itertools.combinations(ws, 2):
        if membership_vector(u, "ab", 2) == membership_vector(v, "ab", 2):
            assert membership_vector(u, "ab", 1) == membership_vector(v, "ab", 1)


def test_sigma2_formula_shapes():
    f = to_sigma2_formula(M("[ab]^inf"))
    assert str(f) == "∀y: λ(y)∈{a,b}" and f.depth == 1
    f = to_sigma2_formula(M("[ab]* a [b]^inf"))
    assert str(f) == "∃x1 ∀y: λ(x1)=a ∧ (x1<y ⇒ λ(y)=b) ∧ (y<x1 ⇒ λ(y)∈{a,b})"
    f = to_sigma2_formula(M("[a]* b [ab]* a [b]^inf"))
    assert f.exists == ("x1", "x2") and f.depth == 3


@given(infinite_monomials, words())
def test_formula_agrees_with_membership_on_finite_words(m, w):
    assert eval_fo_finite(to_sigma2_formula(m), w) == contains_up(m, UPWord(w, ""))


def test_formula_needs_ordered_marks():
    # without x1 < x2 the sentence would also accept "ba"
    m = M("[]* a []* b []^inf")
    assert not eval_fo_finite(to_sigma2_formula(m), "ba")
    assert eval_fo_finite(to_sigma2_formula(m), "ab")


@pytest.mark.parametrize("k", [1, 2])
def test_degree0_monomials_do_not_change_classes(k):
    with_0, without_0 = {}, {}
    for w in words_upto("ab", 6):
        with_0.setdefault(membership_vector(w, "ab", k), set()).add(w)
        without_0.setdefault(membership_vector(w, "ab", k, include_degree0=False), set()).add(w)
    assert sorted(map(sorted, with_0.values())) == sorted(map(sorted, without_0.values()))
