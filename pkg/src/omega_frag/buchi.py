"""omega-regular expressions, extended Büchi automata and their transition monoids.

Grammar (whitespace ignored)::

    expr   := concat ('|' concat)*
    concat := power+
    power  := atom ('*' | '^w' | '^inf')*
    atom   := letter | '1' | '[' letter+ ']' | '(' expr ')'

``1`` is the empty word, ``X^w`` the infinite concatenations of nonempty words of
``X`` and ``X^inf`` is ``X* | X^w``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import RecognizedLanguage, generate
from .errors import NullableOmega, RegexSyntaxError
from .words import UPWord, make_alphabet

# -- syntax tree ---------------------------------------------------------------


@dataclass(frozen=True)
class Letter:
    letter: str

    def __str__(self):
        return self.letter


@dataclass(frozen=True)
class Klass:
    letters: frozenset

    def __str__(self):
        return "[" + "".join(sorted(self.letters)) + "]"


@dataclass(frozen=True)
class Eps:
    def __str__(self):
        return "1"


@dataclass(frozen=True)
class Concat:
    parts: tuple

    def __str__(self):
        return "".join(_paren(p, Union) for p in self.parts)


@dataclass(frozen=True)
class Union:
    parts: tuple

    def __str__(self):
        return "|".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class Star:
    body: object

    def __str__(self):
        return _paren(self.body, (Union, Concat, Star, Omega, Inf)) + "*"


@dataclass(frozen=True)
class Omega:
    body: object

    def __str__(self):
        return _paren(self.body, (Union, Concat, Star, Omega, Inf)) + "^w"


@dataclass(frozen=True)
class Inf:
    body: object

    def __str__(self):
        return _paren(self.body, (Union, Concat, Star, Omega, Inf)) + "^inf"


OmegaRegex = Letter | Klass | Eps | Concat | Union | Star | Omega | Inf


def _paren(node, kinds) -> str:
    return f"({node})" if isinstance(node, kinds) else str(node)


def children(r) -> tuple:
    if isinstance(r, (Concat, Union)):
        return r.parts
    if isinstance(r, (Star, Omega, Inf)):
        return (r.body,)
    return ()


def nullable(r) -> bool:
    if isinstance(r, (Eps, Star, Inf)):
        return True
    if isinstance(r, (Letter, Klass, Omega)):
        return False
    if isinstance(r, Concat):
        return all(nullable(p) for p in r.parts)
    return any(nullable(p) for p in r.parts)


def finite_only(r) -> bool:
    """True iff the expression denotes finite words only."""
    if isinstance(r, (Omega, Inf)):
        return False
    return all(finite_only(c) for c in children(r))


def letters(r) -> frozenset:
    if isinstance(r, Letter):
        return frozenset(r.letter)
    if isinstance(r, Klass):
        return r.letters
    return frozenset().union(*(letters(c) for c in children(r)))


def tree_size(r) -> int:
    return 1 + sum(tree_size(c) for c in children(r))


# -- parser ----------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, s: str):
        self.peek()
        if not self.text.startswith(s, self.pos):
            raise RegexSyntaxError(f"expected {s!r}", self.pos)
        self.pos += len(s)

    def parse(self):
        r = self.union()
        if self.peek():
            raise RegexSyntaxError(f"unexpected {self.peek()!r}", self.pos)
        return r

    def union(self):
        parts = [self.concat()]
        while self.peek() == "|":
            self.pos += 1
            parts.append(self.concat())
        return parts[0] if len(parts) == 1 else Union(tuple(parts))

    def concat(self):
        start = self.pos
        parts = []
        while self.peek() and self.peek() not in "|)":
            at = self.pos
            if parts and not finite_only(parts[-1]):
                raise RegexSyntaxError("only the last factor of a concatenation may contain infinite words", at)
            parts.append(self.power())
        if not parts:
            raise RegexSyntaxError("empty expression", start)
        return parts[0] if len(parts) == 1 else Concat(tuple(parts))

    def power(self):
        r = self.atom()
        while self.peek() in ("*", "^"):
            at = self.pos
            if self.peek() == "*":
                self.pos += 1
                wrap = Star
            else:
                self.pos += 1
                if self.text.startswith("inf", self.pos):
                    self.pos += 3
                    wrap = Inf
                elif self.text.startswith("omega", self.pos):
                    self.pos += 5
                    wrap = Omega
                elif self.text.startswith("w", self.pos):
                    self.pos += 1
                    wrap = Omega
                else:
                    raise RegexSyntaxError("expected 'w' or 'inf' after '^'", self.pos)
            if not finite_only(r):
                raise RegexSyntaxError("powers apply to expressions of finite words only", at)
            if wrap is not Star and nullable(r):
                raise NullableOmega(f"operand of {'^w' if wrap is Omega else '^inf'} accepts the empty word", at)
            r = wrap(r)
        return r

    def atom(self):
        c = self.peek()
        at = self.pos
        if c == "(":
            self.pos += 1
            r = self.union()
            self.expect(")")
            return r
        if c == "[":
            self.pos += 1
            end = self.text.find("]", self.pos)
            if end < 0:
                raise RegexSyntaxError("unterminated class", at)
            body = self.text[self.pos:end].replace(" ", "")
            if not body or not all(_is_letter(x) for x in body):
                raise RegexSyntaxError("a class holds one or more letters", at)
            self.pos = end + 1
            ls = frozenset(body)
            return Letter(body[0]) if len(ls) == 1 else Klass(ls)
        if c == "1":
            self.pos += 1
            return Eps()
        if _is_letter(c):
            self.pos += 1
            return Letter(c)
        raise RegexSyntaxError(f"unexpected {c!r}" if c else "unexpected end of input", at)


def _is_letter(c: str) -> bool:
    return len(c) == 1 and c.isalpha() and c.islower()


def parse_regex(text: str):
    return _Parser(text).parse()


# -- automata ---------------------------------------------------------------------


@dataclass(frozen=True)
class Buchi:
    """Extended Büchi automaton: ``final`` accepts finite words, ``buchi`` infinite ones."""

    n_states: int
    alphabet: tuple
    transitions: frozenset  # (p, a, q)
    initial: frozenset
    buchi: frozenset = frozenset()
    final: frozenset = frozenset()

    @property
    def mode(self) -> str:
        if self.buchi and self.final:
            return "MIXED"
        return "INFINITE" if self.buchi else "FINITE"

    @cached_property
    def delta(self) -> dict:
        d = {}
        for p, a, q in self.transitions:
            d.setdefault((p, a), set()).add(q)
        return d

    def successors(self, p: int) -> set:
        return {q for (x, _a, q) in self.transitions if x == p}

    def step(self, states, a: str) -> frozenset:
        out = set()
        for p in states:
            out |= self.delta.get((p, a), set())
        return frozenset(out)

    def with_alphabet(self, alphabet) -> "Buchi":
        return Buchi(self.n_states, make_alphabet(set(self.alphabet) | set(alphabet)),
                     self.transitions, self.initial, self.buchi, self.final)

    def to_dict(self) -> dict:
        return {
            "states": list(range(self.n_states)),
            "alphabet": list(self.alphabet),
            "transitions": sorted([p, a, q] for p, a, q in self.transitions),
            "initial": sorted(self.initial),
            "buchi_accepting": sorted(self.buchi),
            "finite_accepting": sorted(self.final),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "Buchi":
        names = list(d["states"])
        idx = {s: i for i, s in enumerate(names)}
        alphabet = make_alphabet(d["alphabet"])
        trans = set()
        for p, a, q in d["transitions"]:
            if a not in alphabet:
                raise ValueError(f"transition letter {a!r} not in alphabet")
            trans.add((idx[p], a, idx[q]))
        if not d["initial"]:
            raise ValueError("automaton needs at least one initial state")
        return cls(
            len(names), alphabet, frozenset(trans),
            frozenset(idx[s] for s in d["initial"]),
            frozenset(idx[s] for s in d.get("buchi_accepting", [])),
            frozenset(idx[s] for s in d.get("finite_accepting", [])),
        )

    @classmethod
    def from_json(cls, text: str) -> "Buchi":
        return cls.from_dict(json.loads(text))


def _shift(a: Buchi, k: int):
    return (
        {(p + k, x, q + k) for p, x, q in a.transitions},
        {p + k for p in a.initial},
        {p + k for p in a.buchi},
        {p + k for p in a.final},
    )


def _build(r, alphabet) -> Buchi:
    if isinstance(r, (Letter, Klass)):
        ls = letters(r)
        return Buchi(2, alphabet, frozenset((0, a, 1) for a in ls), frozenset({0}), frozenset(), frozenset({1}))
    if isinstance(r, Eps):
        return Buchi(1, alphabet, frozenset(), frozenset({0}), frozenset(), frozenset({0}))
    if isinstance(r, Union):
        parts = [_build(p, alphabet) for p in r.parts]
        trans, init, buchi, final = set(), set(), set(), set()
        k = 0
        for p in parts:
            t, i, b, f = _shift(p, k)
            trans |= t
            init |= i
            buchi |= b
            final |= f
            k += p.n_states
        return Buchi(k, alphabet, frozenset(trans), frozenset(init), frozenset(buchi), frozenset(final))
    if isinstance(r, Concat):
        acc = _build(r.parts[0], alphabet)
        for part in r.parts[1:]:
            acc = _concat(acc, _build(part, alphabet))
        return acc
    body = _build(r.body, alphabet)
    # fresh hub state s: every trip through the body starts and ends there
    s = body.n_states
    trans = set(body.transitions)
    for p, a, q in body.transitions:
        if p in body.initial:
            trans.add((s, a, q))
        if q in body.final:
            trans.add((p, a, s))
        if p in body.initial and q in body.final:
            trans.add((s, a, s))
    hub = frozenset({s})
    final = hub if isinstance(r, (Star, Inf)) else frozenset()
    buchi = hub if isinstance(r, (Omega, Inf)) else frozenset()
    return Buchi(s + 1, alphabet, frozenset(trans), hub, buchi, final)


def _concat(a: Buchi, b: Buchi) -> Buchi:
    k = a.n_states
    tb, ib, bb, fb = _shift(b, k)
    trans = set(a.transitions) | tb
    for p, x, q in a.transitions:
        if q in a.final:
            trans |= {(p, x, i) for i in ib}
    init = set(a.initial)
    if a.initial & a.final:
        init |= ib
    return Buchi(k + b.n_states, a.alphabet, frozenset(trans), frozenset(init), frozenset(bb), frozenset(fb))


def _on_cycle(a: Buchi, q: int) -> bool:
    seen, stack = set(), list(a.successors(q))
    while stack:
        p = stack.pop()
        if p == q:
            return True
        if p not in seen:
            seen.add(p)
            stack.extend(a.successors(p))
    return False


def trim(a: Buchi) -> Buchi:
    """Drop states that are unreachable or lead to no accepting behaviour."""
    succ, pred = {}, {}
    for p, _x, q in a.transitions:
        succ.setdefault(p, set()).add(q)
        pred.setdefault(q, set()).add(p)

    def closure(start, edges):
        seen = set(start)
        stack = list(start)
        while stack:
            p = stack.pop()
            for q in edges.get(p, ()):
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return seen

    reach = closure(a.initial, succ)
    targets = set(a.final) | {q for q in a.buchi if _on_cycle(a, q)}
    useful = reach & closure(targets, pred)
    if not useful:
        # empty language: keep one initial state
        useful = {min(a.initial)}
    keep = sorted(useful)
    new = {q: i for i, q in enumerate(keep)}
    return Buchi(
        len(keep), a.alphabet,
        frozenset((new[p], x, new[q]) for p, x, q in a.transitions if p in new and q in new),
        frozenset(new[q] for q in a.initial if q in new),
        frozenset(new[q] for q in a.buchi if q in new),
        frozenset(new[q] for q in a.final if q in new),
    )


def to_automaton(r, alphabet=None) -> Buchi:
    """Automaton for the expression over ``letters(r)`` plus any extra ``alphabet`` letters."""
    if isinstance(r, str):
        r = parse_regex(r)
    sigma = make_alphabet(set(letters(r)) | set(alphabet or ()))
    return trim(_build(r, sigma))


# -- lasso acceptance ---------------------------------------------------------------


def lasso_accepts(a: Buchi, alpha: UPWord) -> bool:
    """Acceptance of ``u v^w`` by search for an accepting cycle in the automaton x loop-position graph."""
    states = frozenset(a.initial)
    for x in alpha.prefix:
        states = a.step(states, x)
    if alpha.is_finite:
        return bool(states & a.final)
    v = alpha.loop
    n = len(v)

    def succ(node):
        q, i = node
        return [(p, (i + 1) % n) for p in a.delta.get((q, v[i]), ())]

    reach = set((q, 0) for q in states)
    stack = list(reach)
    while stack:
        for nxt in succ(stack.pop()):
            if nxt not in reach:
                reach.add(nxt)
                stack.append(nxt)
    for node in reach:
        if node[0] not in a.buchi:
            continue
        seen, stack = set(), succ(node)
        while stack:
            x = stack.pop()
            if x == node:
                return True
            if x not in seen:
                seen.add(x)
                stack.extend(succ(x))
    return False


# -- transition monoid ---------------------------------------------------------------


def letter_matrix(a: Buchi, x: str) -> np.ndarray:
    """0: no run, 1: a run, 2: a run touching a Büchi state."""
    m = np.zeros((a.n_states, a.n_states), dtype=np.int8)
    for p, y, q in a.transitions:
        if y == x:
            m[p, q] = max(m[p, q], 2 if (p in a.buchi or q in a.buchi) else 1)
    return m


def matrix_product(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    both = (x[:, :, None] > 0) & (y[None, :, :] > 0)
    return np.where(both, np.maximum(x[:, :, None], y[None, :, :]), 0).max(axis=1).astype(np.int8)


def recognize(a: Buchi, cap: int | None = None) -> RecognizedLanguage:
    """Recognizing hom into the transition monoid with saturated acceptance."""
    gens = {x: letter_matrix(a, x) for x in a.alphabet}
    hom, mats = generate(gens, matrix_product, identity=None, key=lambda m: m.tobytes(), cap=cap)
    mon = hom.monoid
    init = sorted(a.initial)
    final = sorted(a.final)
    acc = set()
    for s, e in mon.linked_pairs():
        if e == mon.identity:
            if s == mon.identity:
                ok = bool(a.initial & a.final)
            else:
                ok = bool(final) and bool((mats[s][np.ix_(init, final)] > 0).any())
        else:
            loops = np.diag(mats[e]) == 2
            ok = bool((mats[s][init][:, loops] > 0).any())
        if ok:
            acc.add((s, e))
    return RecognizedLanguage(hom, frozenset(acc))


def regex_language(text: str, alphabet=None, cap: int | None = None) -> RecognizedLanguage:
    return recognize(to_automaton(parse_regex(text), alphabet), cap=cap)
