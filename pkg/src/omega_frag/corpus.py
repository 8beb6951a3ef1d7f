"""Fixture languages used by the tests and the experiment scripts."""
from __future__ import annotations

from dataclasses import dataclass

from .monomials import Monomial


@dataclass(frozen=True)
class Fixture:
    name: str
    regex: str
    alphabet: str = "ab"


# Every transition monoid here stays well below 100 elements.
CORPUS = (
    Fixture("everything", "[ab]^inf"),
    Fixture("example", "([ab]*aa[ab]*)^w"),
    Fixture("a-then-b-tail", "[ab]*a[b]^w"),
    Fixture("a-then-b-inf", "[ab]*a[b]^inf"),
    Fixture("contains-a", "[ab]*a[ab]^inf"),
    Fixture("starts-a", "a[ab]^inf"),
    Fixture("finitely-many-a", "[ab]*[b]^w"),
    Fixture("infinitely-many-a", "([b]*a)^w"),
    Fixture("infinite-words", "[ab]^w"),
    Fixture("finite-words", "[ab]*"),
    Fixture("even-a", "(aa)*"),
    Fixture("ab-power", "(ab)^w"),
    Fixture("ab-star-inf", "(ab)^inf"),
    Fixture("a-omega-or-b-omega", "a^w|b^w"),
    Fixture("abab-infix", "[ab]*abab[ab]^inf"),
    Fixture("two-a-marks", "[b]*a[b]*a[ab]^inf"),
    Fixture("b-tail-after-aa", "[ab]*aa[b]^inf"),
    Fixture("a-tail-or-b-tail", "[ab]*([a]^w|[b]^w)"),
    Fixture("aab-infinitely", "([ab]*aab)^w"),
    Fixture("finite-or-b-loop", "[ab]*|[ab]*b^w"),
    Fixture("first-b-then-a-tail", "a*b[ab]*a^w"),
    Fixture("even-prefix-then-b", "(aa)*b[ab]^inf"),
    Fixture("ba-omega", "[ab]*(ba)^w"),
    Fixture("three-letters", "[abc]*c[ab]^inf", "abc"),
    Fixture("c-infinitely", "([ab]*c)^w", "abc"),
)


# Monomials with infinite tail, all open in the alphabetic topology.
MONOMIALS = tuple(
    Monomial.parse(t)
    for t in (
        "[ab]^inf",
        "[]^inf",
        "[ab]* a [b]^inf",
        "[b]* a [ab]^inf",
        "[a]* b [a]* b [ab]^inf",
        "[ab]* a []* a [b]^inf",
        "[]* a [ab]* b [a]^inf",
        "[ab]* b [a]* a [ab]^inf",
    )
)


def monomial_regex(m: Monomial) -> str:
    """Regex text for an infinite-tail monomial (an empty block contributes only the empty word)."""
    def block(a, tail):
        if not a:
            return ""
        return "[" + "".join(sorted(a)) + "]" + ("^inf" if tail else "*")
    out = block(m.alphabets[0], m.degree == 0)
    for i, a in enumerate(m.markers):
        out += a + block(m.alphabets[i + 1], i + 1 == m.degree)
    return out or "1"


def by_name(name: str) -> Fixture:
    for f in CORPUS:
        if f.name == name:
            return f
    raise KeyError(name)
