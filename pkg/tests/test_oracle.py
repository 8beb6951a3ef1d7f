import itertools

import pytest
from hypothesis import given

from omega_frag.errors import BudgetExceeded, DepthExceeded
from omega_frag.monomials import equiv_k
from omega_frag.oracle import enumerate_lassos, naive_equiv_class, naive_regex_membership, words_upto
from omega_frag.oracle import _unroll
from omega_frag.words import UPWord, canonicalize, up

from conftest import EXAMPLE, words


def test_lasso_examples():
    assert list(enumerate_lassos("a", 1, 1)) == [up(""), up("", "a"), up("a")]
    assert list(enumerate_lassos("a", 0, 0)) == [up("")]
    assert set(enumerate_lassos("ab", 0, 1)) == {up(""), up("", "a"), up("", "b")}


@pytest.mark.parametrize("bounds", [(2, 2), (3, 2), (1, 4)])
def test_lasso_stream_is_exact(bounds):
    got = list(enumerate_lassos("ab", *bounds))
    assert len(got) == len(set(got))
    direct = {canonicalize(UPWord(u, v)) for u in words_upto("ab", bounds[0]) for v in words_upto("ab", bounds[1])}
    assert set(got) == direct
    sizes = [len(a.prefix) + len(a.loop) for a in got]
    assert sizes == sorted(sizes)


def test_lasso_guard():
    with pytest.raises(BudgetExceeded):
        enumerate_lassos("ab", 9, 1)


def test_naive_membership_examples():
    assert naive_regex_membership("[ab]^inf", up("ab", "ba"))
    assert naive_regex_membership("[ab]^inf", up("ab"))
    assert naive_regex_membership(EXAMPLE, up("", "aa"))
    assert not naive_regex_membership(EXAMPLE, up("aa", "ab"))
    assert naive_regex_membership("(ab|b)^w", up("", "abb"))
    assert not naive_regex_membership("(ab|b)^w", up("", "aab"))
    assert naive_regex_membership("a[ab]*(ba)^w", up("aa", "ab"))


def test_unroll_depth_guard():
    with pytest.raises(DepthExceeded):
        _unroll(up("", "ab"), 10**6)


def test_equiv_class_examples():
    ones = naive_equiv_class("", 1, "a")
    assert ones[:2] == (True, True)
    assert all(not bit for bit in ones[2:4])
    assert naive_equiv_class("aa", 1, "a") == naive_equiv_class("aaa", 1, "a")
    assert naive_equiv_class("a", 1, "a") != naive_equiv_class("aa", 1, "a")


@given(words(max_size=5), words(max_size=5))
def test_equiv_k_is_vector_equality(u, v):
    for k in (0, 1, 2):
        assert equiv_k(u, v, k, "ab") == (naive_equiv_class(u, k, "ab") == naive_equiv_class(v, k, "ab"))


def test_words_upto_counts():
    assert [len(list(words_upto("ab", n))) for n in range(4)] == [1, 3, 7, 15]
    assert list(itertools.islice(words_upto("ab", 2), 4)) == ["", "a", "b", "aa"]
