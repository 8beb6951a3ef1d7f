"""Finite words, ultimately periodic words and their alphabets.

Letters are single characters and finite words are plain ``str`` values; the
empty word is ``""`` (printed as ``1``).  Sub-alphabets are ``frozenset``s of
letters.  An ultimately periodic word ``u v^w`` is a :class:`UPWord`; a finite
word is the special case with an empty loop.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

Alphabet = frozenset

EMPTY = ""


def make_alphabet(letters: Iterable[str]) -> tuple[str, ...]:
    """Sorted, duplicate-free tuple of letters."""
    out = sorted(set(letters))
    for a in out:
        if len(a) != 1:
            raise ValueError(f"letters must be single characters, got {a!r}")
    return tuple(out)


def subsets(alphabet: Iterable[str]) -> Iterator[frozenset]:
    """All sub-alphabets, in increasing bitmask order over the sorted letters."""
    letters = make_alphabet(alphabet)
    for mask in range(1 << len(letters)):
        yield frozenset(a for i, a in enumerate(letters) if mask >> i & 1)


def alphabet_mask(letters: Iterable[str], alphabet: Iterable[str]) -> int:
    order = {a: i for i, a in enumerate(make_alphabet(alphabet))}
    m = 0
    for a in letters:
        m |= 1 << order[a]
    return m


def fmt_alphabet(c: Iterable[str]) -> str:
    return "[" + "".join(sorted(c)) + "]"


def fmt_word(w: str) -> str:
    return w if w else "1"


def alph(w: str) -> frozenset:
    return frozenset(w)


def is_subword(u: str, v: str) -> bool:
    """True iff ``u`` is a scattered subword of ``v``."""
    it = iter(v)
    return all(a in it for a in u)


def primitive_root(v: str) -> str:
    n = len(v)
    for d in range(1, n + 1):
        if n % d == 0 and v[:d] * (n // d) == v:
            return v[:d]
    return v


def _min_rotation(v: str) -> int:
    rotations = [v[i:] + v[:i] for i in range(len(v))]
    return rotations.index(min(rotations))


@dataclass(frozen=True)
class UPWord:
    """The word ``prefix . loop^omega``, or the finite word ``prefix`` if the loop is empty.

    Instances built through :func:`up` or :meth:`parse` are canonical, so ``==``
    is equality of the denoted words.
    """

    prefix: str = ""
    loop: str = ""

    @property
    def is_finite(self) -> bool:
        return not self.loop

    def __str__(self) -> str:
        if self.is_finite:
            return fmt_word(self.prefix)
        return f"{self.prefix}({self.loop})^w"

    def letter(self, i: int) -> str:
        if i < len(self.prefix):
            return self.prefix[i]
        if not self.loop:
            raise IndexError(i)
        return self.loop[(i - len(self.prefix)) % len(self.loop)]

    def unroll(self, n: int) -> str:
        """The first ``n`` letters (the whole word if it is shorter)."""
        if self.is_finite:
            return self.prefix[:n]
        return "".join(self.letter(i) for i in range(n))

    def canonical(self) -> "UPWord":
        return canonicalize(self)

    @classmethod
    def parse(cls, text: str) -> "UPWord":
        """Read ``u(v)^w``, a plain finite word, or ``1`` for the empty word."""
        text = text.strip()
        m = re.fullmatch(r"([^()^]*)\(([^()^]+)\)\^(w|omega)", text)
        if m:
            u, v = m.group(1), m.group(2)
        elif re.fullmatch(r"[^()^\s]+", text):
            u, v = text, ""
        else:
            raise ValueError(f"cannot parse ultimately periodic word {text!r}")
        u = "" if u == "1" else u
        v = "" if v == "1" else v
        return canonicalize(cls(u, v))


def canonicalize(alpha: UPWord) -> UPWord:
    """Primitive, rotation-minimal loop with the shortest prefix that fits it."""
    u, v = alpha.prefix, alpha.loop
    if not v:
        return UPWord(u, "")
    v = primitive_root(v)
    # shortest prefix, loop rotated along
    while u and u[-1] == v[-1]:
        u, v = u[:-1], v[-1] + v[:-1]
    j = _min_rotation(v)
    return UPWord(u + v[:j], v[j:] + v[:j])


def up(prefix: str = "", loop: str = "") -> UPWord:
    return canonicalize(UPWord(prefix, loop))


def im(alpha: UPWord) -> frozenset:
    """Letters occurring infinitely often (empty for finite words)."""
    return frozenset(alpha.loop)


def suffix(alpha: UPWord, p: int) -> UPWord:
    """The (not necessarily canonical) suffix of ``alpha`` starting at position ``p``."""
    if p <= len(alpha.prefix):
        return UPWord(alpha.prefix[p:], alpha.loop)
    if alpha.is_finite:
        raise IndexError(p)
    r = (p - len(alpha.prefix)) % len(alpha.loop)
    return UPWord("", alpha.loop[r:] + alpha.loop[:r])
