"""Brute-force reference implementations for differential testing.

Nothing here reuses the membership logic it is compared against: regex
membership goes through Python's ``re`` on unrolled lassos, and monomial
membership through regex translation.
"""
from __future__ import annotations

import itertools
import re
from functools import lru_cache
from typing import Iterator

from . import buchi as rx
from .errors import BudgetExceeded, DepthExceeded
from .monomials import enumerate_k_monomials
from .words import UPWord, canonicalize, make_alphabet

MAX_LASSO_BOUND = 8
MAX_UNROLL = 20000


def words_upto(alphabet, n: int) -> Iterator[str]:
    """All words of length at most ``n``, shortlex."""
    letters = make_alphabet(alphabet)
    for k in range(n + 1):
        for t in itertools.product(letters, repeat=k):
            yield "".join(t)


class LassoEnumerator:
    """Every word ``u v^w`` with ``|u| <= bu`` and ``|v| <= bv``, once each, in canonical form."""

    def __init__(self, alphabet, bu: int, bv: int, force: bool = False):
        if not force and max(bu, bv) > MAX_LASSO_BOUND:
            raise BudgetExceeded(f"lasso bounds above {MAX_LASSO_BOUND}")
        self.alphabet = make_alphabet(alphabet)
        self.bounds = (bu, bv)

    def __iter__(self) -> Iterator[UPWord]:
        return iter(_lassos(self.alphabet, *self.bounds))


@lru_cache(maxsize=16)
def _lassos(alphabet: tuple, bu: int, bv: int) -> tuple:
    prefixes = list(words_upto(alphabet, bu))
    found = set()
    for v in words_upto(alphabet, bv):
        for u in prefixes:
            found.add(canonicalize(UPWord(u, v)))
    key = lambda a: (len(a.prefix) + len(a.loop), len(a.prefix), a.prefix, a.loop)
    return tuple(sorted(found, key=key))


def enumerate_lassos(alphabet, bu: int, bv: int, force: bool = False) -> Iterator[UPWord]:
    return iter(LassoEnumerator(alphabet, bu, bv, force))


# -- regex membership by unrolling ---------------------------------------------------


def _py(r) -> str:
    if isinstance(r, rx.Letter):
        return re.escape(r.letter)
    if isinstance(r, rx.Klass):
        return "[" + "".join(re.escape(a) for a in sorted(r.letters)) + "]"
    if isinstance(r, rx.Eps):
        return ""
    if isinstance(r, rx.Concat):
        return "".join(f"(?:{_py(p)})" for p in r.parts)
    if isinstance(r, rx.Union):
        return "(?:" + "|".join(_py(p) for p in r.parts) + ")"
    if isinstance(r, rx.Star):
        return f"(?:{_py(r.body)})*"
    raise TypeError(f"{r} is not an expression of finite words")


def _positions(r) -> int:
    if isinstance(r, (rx.Letter, rx.Klass)):
        return 1
    return sum(_positions(c) for c in rx.children(r))


def _unroll(alpha: UPWord, n: int) -> str:
    if n > MAX_UNROLL:
        raise DepthExceeded(f"unrolling to {n} letters")
    if alpha.is_finite:
        return alpha.prefix[:n]
    reps = (max(0, n - len(alpha.prefix)) // len(alpha.loop)) + 1
    return (alpha.prefix + alpha.loop * reps)[:n]


def _tail(alpha: UPWord, p: int) -> UPWord:
    if p <= len(alpha.prefix):
        return UPWord(alpha.prefix[p:], alpha.loop)
    r = (p - len(alpha.prefix)) % len(alpha.loop)
    return UPWord("", alpha.loop[r:] + alpha.loop[:r])


def _split_points(alpha: UPWord, head_pattern: str, bound: int) -> Iterator[int]:
    """Positions ``p`` with ``alpha[:p]`` matching, at most one per loop residue past the prefix."""
    head = re.compile(head_pattern)
    if alpha.is_finite:
        for p in range(len(alpha.prefix) + 1):
            if head.fullmatch(alpha.prefix[:p]):
                yield p
        return
    u, v = len(alpha.prefix), len(alpha.loop)
    for p in range(u):
        if head.fullmatch(alpha.prefix[:p]):
            yield p
    # an NFA with s states needs at most s-1 extra loop copies to reach a residue
    for r in range(v):
        for j in range(bound + 1):
            p = u + r + j * v
            if head.fullmatch(_unroll(alpha, p)):
                yield p
                break


def _omega_member(body, alpha: UPWord) -> bool:
    if alpha.is_finite:
        return False
    s = _positions(body) + 1
    piece = re.compile(f"(?:{_py(body)})+")
    for p in _split_points(alpha, f"(?:{_py(body)})*", s):
        if p < len(alpha.prefix):
            continue
        # a cut point past the prefix whose loop rotation is a nonempty power of pieces
        w = _tail(alpha, p).loop
        if any(piece.fullmatch(w * m) for m in range(1, s + 2)):
            return True
    return False


def naive_regex_membership(r, alpha: UPWord) -> bool:
    """Membership of a lasso in an omega-regular expression, by structural recursion."""
    if isinstance(r, str):
        r = rx.parse_regex(r)
    if rx.finite_only(r):
        return alpha.is_finite and re.fullmatch(_py(r), alpha.prefix) is not None
    if isinstance(r, rx.Union):
        return any(naive_regex_membership(p, alpha) for p in r.parts)
    if isinstance(r, rx.Concat):
        head = rx.Concat(r.parts[:-1]) if len(r.parts) > 2 else r.parts[0]
        last = r.parts[-1]
        return any(
            naive_regex_membership(last, _tail(alpha, p))
            for p in _split_points(alpha, _py(head), _positions(head) + 1)
        )
    if isinstance(r, rx.Omega):
        return _omega_member(r.body, alpha)
    if isinstance(r, rx.Inf):
        if alpha.is_finite:
            return re.fullmatch(f"(?:{_py(r.body)})*", alpha.prefix) is not None
        return _omega_member(r.body, alpha)
    raise TypeError(f"unexpected node {r!r}")


# -- monomial classes ------------------------------------------------------------------


def monomial_pattern(m) -> str:
    """Python regex for a finite-tail monomial."""
    def block(a):
        return f"[{''.join(sorted(a))}]*" if a else ""
    out = block(m.alphabets[0])
    for i, a in enumerate(m.markers):
        out += re.escape(a) + block(m.alphabets[i + 1])
    return out


def naive_equiv_class(w: str, k: int, alphabet=None, *, include_degree0=True, force=False) -> tuple:
    """Membership bits of ``w`` over the k-monomials of the finite words, in enumeration order."""
    alphabet = make_alphabet(alphabet if alphabet is not None else set(w) or "a")
    ms = enumerate_k_monomials(alphabet, k, False, include_degree0=include_degree0, force=force)
    return tuple(re.fullmatch(monomial_pattern(m), w) is not None for m in ms)
