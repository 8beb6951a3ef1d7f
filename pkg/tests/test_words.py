import pytest
from hypothesis import given

from omega_frag.words import (
    UPWord,
    alph,
    canonicalize,
    fmt_alphabet,
    im,
    is_subword,
    primitive_root,
    subsets,
    up,
)

from conftest import lassos, words


def brute_subword(u, v):
    if not u:
        return True
    if not v:
        return False
    if u[0] == v[0] and brute_subword(u[1:], v[1:]):
        return True
    return brute_subword(u, v[1:])


def same_word(x: UPWord, y: UPWord) -> bool:
    if x.is_finite or y.is_finite:
        return x.is_finite and y.is_finite and x.prefix == y.prefix
    n = max(len(x.prefix), len(y.prefix)) + 2 * len(x.loop) * len(y.loop)
    return x.unroll(n) == y.unroll(n)


def test_alph():
    assert alph("") == frozenset()
    assert alph("aab") == {"a", "b"}
    assert alph("bab") == {"a", "b"}


def test_im():
    assert im(up("", "ab")) == {"a", "b"}
    assert im(up("a", "b")) == {"b"}
    assert im(up("aab")) == frozenset()


@pytest.mark.parametrize("u,v,expected", [("", "abc", True), ("ab", "ba", False), ("abab", "aabbab", True),
                                          ("aa", "a", False), ("", "", True)])
def test_is_subword(u, v, expected):
    assert is_subword(u, v) is expected


@given(words(max_size=4), words(max_size=7))
def test_is_subword_matches_brute_force(u, v):
    assert is_subword(u, v) == brute_subword(u, v)


def test_canonical_examples():
    # a(ba)^w and (ab)^w are the same word; the shortest prefix is empty
    assert canonicalize(UPWord("a", "baba")) == UPWord("", "ab")
    assert canonicalize(UPWord("", "aa")) == UPWord("", "a")
    assert canonicalize(UPWord("ab", "")) == UPWord("ab", "")
    assert canonicalize(UPWord("ab", "ab")) == UPWord("", "ab")
    assert canonicalize(UPWord("b", "ab")) == UPWord("b", "ab")
    # rotating the loop to its least rotation lengthens the prefix
    assert canonicalize(UPWord("aab", "ba")) == UPWord("aabb", "ab")


@given(lassos())
def test_canonicalize_idempotent_and_faithful(alpha):
    c = canonicalize(alpha)
    assert canonicalize(c) == c
    assert same_word(alpha, c)
    if not c.is_finite:
        assert primitive_root(c.loop) == c.loop
        assert c.loop == min(c.loop[i:] + c.loop[:i] for i in range(len(c.loop)))


@given(lassos(max_loop=3), words(max_size=2))
def test_canonical_form_absorbs_loop_shifts(alpha, extra):
    if alpha.is_finite:
        return
    u, v = alpha.prefix, alpha.loop
    assert up(u, v) == up(u + v, v) == up(u, v * 3)
    # pushing letters of the loop into the prefix does not change the word
    assert up(u, v) == up(u + v[:1], v[1:] + v[:1])


@given(lassos(), lassos())
def test_equality_of_canonical_forms_is_equality_of_words(x, y):
    assert (canonicalize(x) == canonicalize(y)) == same_word(x, y)


@given(lassos())
def test_im_within_letters_and_invariant(alpha):
    assert im(alpha) <= alph(alpha.prefix) | alph(alpha.loop)
    assert im(canonicalize(alpha)) == im(alpha)


@pytest.mark.parametrize("text,expected", [
    ("ab(ab)^w", UPWord("", "ab")),
    ("aab", UPWord("aab", "")),
    ("1", UPWord("", "")),
    ("1(b)^omega", UPWord("", "b")),
    ("ba(aab)^w", UPWord("ba", "aab")),
])
def test_parse(text, expected):
    assert UPWord.parse(text) == expected


@given(lassos())
def test_text_round_trip(alpha):
    c = canonicalize(alpha)
    assert UPWord.parse(str(c)) == c


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        UPWord.parse("a(b")


def test_subsets_in_bitmask_order():
    assert [fmt_alphabet(c) for c in subsets("ba")] == ["[]", "[a]", "[b]", "[ab]"]
