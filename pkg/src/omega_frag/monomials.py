"""Monomials ``A0* a1 A1* ... an An^inf`` (or ``An*``) and the equivalences they induce."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import BudgetExceeded, NotMember, TailKindMismatch
from .logic import And, Implies, LetterIn, Less, Sigma2Formula
from .words import UPWord, canonicalize, fmt_alphabet, make_alphabet, subsets

MAX_ENUM_DEGREE = 3
MAX_ENUM_LETTERS = 3


@dataclass(frozen=True)
class Monomial:
    alphabets: tuple  # A_0 .. A_n, frozensets
    markers: str  # a_1 .. a_n
    infinite: bool = True

    def __post_init__(self):
        if len(self.alphabets) != len(self.markers) + 1:
            raise ValueError("a monomial of degree n needs n+1 block alphabets")
        object.__setattr__(self, "alphabets", tuple(frozenset(a) for a in self.alphabets))

    @property
    def degree(self) -> int:
        return len(self.markers)

    @property
    def letters(self) -> frozenset:
        return frozenset(self.markers).union(*self.alphabets)

    def __str__(self):
        parts = []
        for i, a in enumerate(self.markers):
            parts += [fmt_alphabet(self.alphabets[i]) + "*", a]
        parts.append(fmt_alphabet(self.alphabets[-1]) + ("^inf" if self.infinite else "*"))
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        """Read the text form, e.g. ``[ab]* a [b]* b [ab]^inf``."""
        tokens = re.findall(r"\[[^\]]*\](?:\*|\^inf)|\S", text)
        if "".join(tokens) != re.sub(r"\s", "", text):
            raise ValueError(f"cannot parse monomial {text!r}")
        alphabets, markers = [], []
        infinite = None
        for i, tok in enumerate(tokens):
            block = i % 2 == 0
            if block != tok.startswith("["):
                raise ValueError(f"unexpected token {tok!r} in monomial {text!r}")
            if block:
                star = tok.endswith("*")
                last = i == len(tokens) - 1
                if not star and not last:
                    raise ValueError("only the last block may carry ^inf")
                alphabets.append(frozenset(tok[1 : tok.index("]")]))
                if last:
                    infinite = not star
            else:
                markers.append(tok)
        if infinite is None:
            raise ValueError(f"monomial must end with a block: {text!r}")
        return cls(tuple(alphabets), "".join(markers), infinite)


def _step(m: Monomial, states: frozenset, c: str) -> frozenset:
    n = m.degree
    out = set()
    for i in states:
        if c in m.alphabets[i]:
            out.add(i)
        if i < n and m.markers[i] == c:
            out.add(i + 1)
    return frozenset(out)


def _run(m: Monomial, word: str, states=frozenset({0})) -> frozenset:
    for c in word:
        states = _step(m, states, c)
        if not states:
            break
    return states


def contains_finite(m: Monomial, w: str) -> bool:
    return m.degree in _run(m, w)


def contains_up(m: Monomial, alpha: UPWord) -> bool:
    if alpha.is_finite:
        return contains_finite(m, alpha.prefix)
    if not m.infinite:
        raise TailKindMismatch(f"{m} has a finite tail but {alpha} is infinite")
    if not set(alpha.loop) <= m.alphabets[-1]:
        return False
    # all n marks fit into prefix . loop^n (gaps spanning a full loop can be pumped down)
    return m.degree in _run(m, alpha.prefix + alpha.loop * (m.degree + 1))


def contains(m: Monomial, w) -> bool:
    if isinstance(w, UPWord):
        return contains_up(m, w)
    return contains_finite(m, w)


def count_k_monomials(n_letters: int, k: int, include_degree0: bool = True) -> int:
    return sum(
        n_letters**n * 2 ** (n_letters * (n + 1))
        for n in range(0 if include_degree0 else 1, k + 1)
    )


def _check_budget(alphabet, k, force):
    if not force and (k > MAX_ENUM_DEGREE or len(alphabet) > MAX_ENUM_LETTERS):
        raise BudgetExceeded(
            f"enumerating {k}-monomials over {len(alphabet)} letters "
            f"({count_k_monomials(len(alphabet), k)} monomials) exceeds the guard "
            f"k<={MAX_ENUM_DEGREE}, |alphabet|<={MAX_ENUM_LETTERS}; pass force=True"
        )


@lru_cache(maxsize=64)
def _enumerate(alphabet: tuple, k: int, infinite: bool, include_degree0: bool) -> tuple:
    blocks = list(subsets(alphabet))
    out = []
    for n in range(0 if include_degree0 else 1, k + 1):
        for markers in itertools.product(alphabet, repeat=n):
            for alphs in itertools.product(blocks, repeat=n + 1):
                out.append(Monomial(alphs, "".join(markers), infinite))
    return tuple(out)


def enumerate_k_monomials(
    alphabet: Iterable[str],
    k: int,
    infinite: bool = False,
    *,
    include_degree0: bool = True,
    force: bool = False,
) -> list[Monomial]:
    """Every monomial of degree at most ``k`` over ``alphabet``, without duplicates.

    Ordered by degree, then markers, then block alphabets (bitmask order).
    """
    alphabet = make_alphabet(alphabet)
    _check_budget(alphabet, k, force)
    return list(_enumerate(alphabet, k, infinite, include_degree0))


def n_k(alphabet: Iterable[str], k: int, *, force: bool = False) -> int:
    """Number of distinct k-monomials over the finite words, by enumeration."""
    return len(enumerate_k_monomials(alphabet, k, False, force=force))


# -- refinement ---------------------------------------------------------------


def leftmost_factorization(m: Monomial, w: str) -> list[int] | None:
    """Marker positions of the factorization placing each marker as early as possible."""
    n, size = m.degree, len(w)
    # feasible[i][p]: from gap i at position p the rest of w can be matched
    feasible = [[False] * (size + 2) for _ in range(n + 1)]
    ok_tail = True
    for p in range(size, -1, -1):
        if p < size:
            ok_tail = ok_tail and w[p] in m.alphabets[n]
        feasible[n][p] = ok_tail
    for i in range(n - 1, -1, -1):
        for p in range(size, -1, -1):
            if p < size:
                here = w[p] == m.markers[i] and feasible[i + 1][p + 1]
                skip = w[p] in m.alphabets[i] and feasible[i][p + 1]
                feasible[i][p] = here or skip
    if not feasible[0][0]:
        return None
    positions, p = [], 0
    for i in range(n):
        q = p
        while not (w[q] == m.markers[i] and feasible[i + 1][q + 1]):
            q += 1
        positions.append(q)
        p = q + 1
    return positions


def merge(w: str, m1: Monomial, m2: Monomial) -> Monomial:
    """One refinement step: a monomial containing ``w`` and included in ``m1`` and ``m2``."""
    facts = []
    for m in (m1, m2):
        f = leftmost_factorization(m, w)
        if f is None:
            raise NotMember(f"{w or '1'!r} is not in {m}")
        facts.append(f)
    marks = sorted(set(facts[0]) | set(facts[1]))
    alphabets = []
    for g in range(len(marks) + 1):
        start = marks[g - 1] + 1 if g else 0
        end = marks[g] if g < len(marks) else len(w)
        if 0 < g < len(marks) and start == end:
            alphabets.append(frozenset())
            continue
        c = None
        for m, f in zip((m1, m2), facts):
            block = m.alphabets[sum(1 for p in f if p < start)]
            c = block if c is None else c & block
        alphabets.append(c)
    return Monomial(tuple(alphabets), "".join(w[p] for p in marks), False)


def refine(w: str, monomials: Sequence[Monomial]) -> Monomial:
    """A monomial ``N`` over finite words with ``w`` in ``N`` and ``N`` inside every input.

    Duplicates are dropped first, so the degree is at most the sum of the input
    degrees over distinct monomials.
    """
    ms = list(dict.fromkeys(monomials))
    if not ms:
        raise ValueError("refine needs at least one monomial")
    for m in ms:
        if m.infinite:
            raise TailKindMismatch(f"refine works on finite-tail monomials, got {m}")
        if not contains_finite(m, w):
            raise NotMember(f"{w or '1'!r} is not in {m}")
    acc = merge(w, ms[0], ms[0])
    for m in ms[1:]:
        acc = merge(w, acc, m)
    return acc


def included(n: Monomial, m: Monomial) -> bool:
    """Language inclusion of finite-tail monomials, by subset construction on ``m``."""
    if n.infinite or m.infinite:
        raise TailKindMismatch("inclusion is implemented for finite-tail monomials")
    start = (0, frozenset({0}))
    seen = {start}
    stack = [start]
    while stack:
        i, states = stack.pop()
        if i == n.degree and m.degree not in states:
            return False
        letters = set(n.alphabets[i])
        if i < n.degree:
            letters.add(n.markers[i])
        for c in letters:
            targets = []
            if c in n.alphabets[i]:
                targets.append(i)
            if i < n.degree and n.markers[i] == c:
                targets.append(i + 1)
            nxt_states = _step(m, states, c)
            for j in targets:
                node = (j, nxt_states)
                if node not in seen:
                    seen.add(node)
                    stack.append(node)
    return True


# -- equivalences ---------------------------------------------------------------


def membership_vector(w, alphabet, k: int, *, include_degree0=True, force=False) -> tuple:
    """Membership bits of ``w`` over all k-monomials (finite tail for ``str``, infinite for ``UPWord``)."""
    infinite = isinstance(w, UPWord)
    ms = enumerate_k_monomials(alphabet, k, infinite, include_degree0=include_degree0, force=force)
    return tuple(contains(m, w) for m in ms)


def equiv_k(u: str, v: str, k: int, alphabet=None, *, include_degree0=True, force=False) -> bool:
    alphabet = make_alphabet(alphabet if alphabet is not None else set(u) | set(v) or "a")
    ms = enumerate_k_monomials(alphabet, k, False, include_degree0=include_degree0, force=force)
    return all(contains_finite(m, u) == contains_finite(m, v) for m in ms)


def equiv_k_inf(alpha: UPWord, beta: UPWord, k: int, alphabet=None, *, force=False) -> bool:
    alpha, beta = canonicalize(alpha), canonicalize(beta)
    if alphabet is None:
        alphabet = set(alpha.prefix + alpha.loop + beta.prefix + beta.loop) or "a"
    ms = enumerate_k_monomials(make_alphabet(alphabet), k, True, force=force)
    return all(contains_up(m, alpha) == contains_up(m, beta) for m in ms)


# -- logic ---------------------------------------------------------------------


def to_sigma2_formula(m: Monomial) -> Sigma2Formula:
    """``∃x1..∃xn ∀y`` sentence defining ``m``; quantifier depth ``degree + 1``.

    The marks are additionally required to be strictly increasing; without those
    conjuncts the sentence would accept words with the markers out of order.
    """
    n = m.degree
    xs = tuple(f"x{i}" for i in range(1, n + 1))
    y = "y"
    if n == 0:
        return Sigma2Formula((), (y,), LetterIn(y, m.alphabets[0]))
    parts = [LetterIn(x, frozenset(a)) for x, a in zip(xs, m.markers)]
    parts += [Less(xs[i], xs[i + 1]) for i in range(n - 1)]
    parts += [
        Implies(And((Less(xs[i - 1], y), Less(y, xs[i]))), LetterIn(y, m.alphabets[i]))
        for i in range(1, n)
    ]
    parts.append(Implies(Less(xs[-1], y), LetterIn(y, m.alphabets[n])))
    parts.append(Implies(Less(y, xs[0]), LetterIn(y, m.alphabets[0])))
    return Sigma2Formula(xs, (y,), And(tuple(parts)))
