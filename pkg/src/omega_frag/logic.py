"""First-order sentences over words with ``x<y`` and letter predicates.

Only what is needed to print Sigma_2 sentences for monomials and to evaluate
them on finite words.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Top:
    def __str__(self):
        return "⊤"


@dataclass(frozen=True)
class Less:
    left: str
    right: str

    def __str__(self):
        return f"{self.left}<{self.right}"


@dataclass(frozen=True)
class LetterIn:
    """``λ(var) ∈ letters``; printed as ``λ(x)=a`` for a single letter."""

    var: str
    letters: frozenset

    def __str__(self):
        if len(self.letters) == 1:
            return f"λ({self.var})={next(iter(self.letters))}"
        return f"λ({self.var})∈{{{','.join(sorted(self.letters))}}}"


@dataclass(frozen=True)
class Not:
    body: "Formula"

    def __str__(self):
        return f"¬{_wrap(self.body)}"


@dataclass(frozen=True)
class And:
    parts: tuple

    def __str__(self):
        if not self.parts:
            return "⊤"
        return " ∧ ".join(_wrap(p) for p in self.parts)


@dataclass(frozen=True)
class Or:
    parts: tuple

    def __str__(self):
        if not self.parts:
            return "⊥"
        return " ∨ ".join(_wrap(p) for p in self.parts)


@dataclass(frozen=True)
class Implies:
    premise: "Formula"
    conclusion: "Formula"

    def __str__(self):
        return f"({self.premise} ⇒ {self.conclusion})"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"

    def __str__(self):
        return f"∃{self.var}: {self.body}"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"

    def __str__(self):
        return f"∀{self.var}: {self.body}"


Formula = Union[Top, Less, LetterIn, Not, And, Or, Implies, Exists, Forall]


def _wrap(f) -> str:
    if isinstance(f, (And, Or)) and len(f.parts) > 1:
        return f"({f})"
    return str(f)


@dataclass(frozen=True)
class Sigma2Formula:
    """Prenex sentence ``∃ exists... ∀ forall... : matrix`` with a quantifier-free matrix."""

    exists: tuple
    forall: tuple
    matrix: Formula

    @property
    def depth(self) -> int:
        return len(self.exists) + len(self.forall)

    def as_tree(self) -> Formula:
        f = self.matrix
        for v in reversed(self.forall):
            f = Forall(v, f)
        for v in reversed(self.exists):
            f = Exists(v, f)
        return f

    def __str__(self):
        head = " ".join([f"∃{v}" for v in self.exists] + [f"∀{v}" for v in self.forall])
        return f"{head}: {self.matrix}" if head else str(self.matrix)


def holds(f, word: str, env: dict | None = None) -> bool:
    """Satisfaction of ``f`` on the finite word ``word`` (positions ``0..len-1``)."""
    env = env or {}
    if isinstance(f, Sigma2Formula):
        return holds(f.as_tree(), word, env)
    if isinstance(f, Top):
        return True
    if isinstance(f, Less):
        return env[f.left] < env[f.right]
    if isinstance(f, LetterIn):
        return word[env[f.var]] in f.letters
    if isinstance(f, Not):
        return not holds(f.body, word, env)
    if isinstance(f, And):
        return all(holds(p, word, env) for p in f.parts)
    if isinstance(f, Or):
        return any(holds(p, word, env) for p in f.parts)
    if isinstance(f, Implies):
        return not holds(f.premise, word, env) or holds(f.conclusion, word, env)
    if isinstance(f, Exists):
        return any(holds(f.body, word, {**env, f.var: i}) for i in range(len(word)))
    if isinstance(f, Forall):
        return all(holds(f.body, word, {**env, f.var: i}) for i in range(len(word)))
    raise TypeError(f"not a formula: {f!r}")


def eval_fo_finite(f, word: str) -> bool:
    return holds(f, word)
