"""Decision procedures on recognized languages of finite and infinite words.

* :func:`decide_alphabetic_boolean`: is the language a Boolean combination of
  open sets of the alphabetic topology (basis ``u A^inf``)?
* :func:`decide_cantor_boolean`: the same question for the Cantor topology.
* :func:`decide_bsigma2`: definability in the Boolean closure of Sigma_2, given
  an oracle for the algebraic condition on the syntactic monoid.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .algebra import (
    AlphImage,
    Hom,
    RecognizedLanguage,
    coset,
    realized_linked_pairs,
    syntactic_quotient,
    up_membership,
)
from .errors import PreconditionViolated
from .monomials import membership_vector
from .oracle import enumerate_lassos, words_upto
from .words import UPWord, alphabet_mask, im, subsets, up


class Answer(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Block:
    """The set ``L(s, C)``: ``[s] C^inf`` minus smaller tails and wrong cosets.

    ``s`` indexes the monoid of the language the block was built from.
    """

    s: int
    alphabet: frozenset
    name: str = ""

    def __str__(self):
        return f"L({self.name or self.s}, [{''.join(sorted(self.alphabet))}])"

    def to_dict(self) -> dict:
        return {"s": self.name, "C": "".join(sorted(self.alphabet))}


@dataclass
class Witness:
    """Two linked pairs that a Boolean combination cannot tell apart, with opposite acceptance.

    ``alpha`` lies in ``[s][e]^w`` and in the language, ``beta`` in ``[t][f]^w``
    and outside it.  ``alphabet`` is the shared loop alphabet (None for the
    Cantor condition).
    """

    s: int
    e: int
    t: int
    f: int
    alphabet: frozenset | None
    alpha: UPWord
    beta: UPWord
    words: dict
    names: dict

    def to_dict(self) -> dict:
        d = {
            "accepted_pair": [self.names["s"], self.names["e"]],
            "rejected_pair": [self.names["t"], self.names["f"]],
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "words": {k: v or "1" for k, v in self.words.items()},
        }
        if self.alphabet is not None:
            d["C"] = "".join(sorted(self.alphabet))
        return d

    def __str__(self):
        n = self.names
        c = "" if self.alphabet is None else f", C=[{''.join(sorted(self.alphabet))}]"
        return (f"[{n['s']}][{n['e']}]^w ⊆ L but [{n['t']}][{n['f']}]^w ∩ L = ∅{c}; "
                f"{self.alpha} ∈ L, {self.beta} ∉ L")


@dataclass
class Verdict:
    question: str
    answer: Answer
    witness: Witness | None = None
    representation: list | None = None
    checks: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return {Answer.YES: 0, Answer.NO: 1, Answer.UNKNOWN: 2}[self.answer]

    def to_dict(self) -> dict:
        d = {"question": self.question, "answer": self.answer.value}
        if self.witness is not None:
            d["witness"] = self.witness.to_dict()
        if self.representation is not None:
            d["representation"] = [b.to_dict() for b in self.representation]
        d["checks"] = self.checks
        if self.notes:
            d["notes"] = list(self.notes)
        return d


# -- alphabetic topology ---------------------------------------------------------------


def _pick(candidates, size):
    """Shortest witness pieces first, then enumeration order."""
    return min(candidates, key=lambda p: (size(p), p))


def alphabetic_violations(lang: RecognizedLanguage):
    """Yield ``(C, coset, accepted_pairs, rejected_pairs)`` groups that break the condition."""
    hom = lang.hom
    image = AlphImage(hom)
    pairs = realized_linked_pairs(hom)
    for c in subsets(hom.alphabet):
        loops = image.elements_with_alphabet(c)
        groups = {}
        for s, e in pairs:
            if e in loops:
                groups.setdefault(coset(hom, s, c), []).append((s, e))
        for cs in sorted(groups, key=lambda g: min(groups[g])):
            acc = [p for p in groups[cs] if lang.accepts(*p)]
            rej = [p for p in groups[cs] if not lang.accepts(*p)]
            if acc and rej:
                yield c, cs, acc, rej


def decide_alphabetic_boolean(lang: RecognizedLanguage, verify_bounds=None) -> Verdict:
    """Boolean combination of alphabetic open sets?

    NO comes with the witness minimising the total length of its four words
    (ties broken by element index, then alphabet bitmask); YES comes with the
    blocks of :func:`construct_representation`.
    """
    lang = lang.restrict()
    hom = lang.hom
    image = AlphImage(hom)
    words = hom.words
    best = None
    for c, _cs, acc, rej in alphabetic_violations(lang):
        size = lambda p: len(words[p[0]]) + len(image.word(p[1], c))
        a, r = _pick(acc, size), _pick(rej, size)
        key = (size(a) + size(r), a, r, alphabet_mask(c, hom.alphabet))
        if best is None or key < best[0]:
            best = (key, a, r, c)
    q = "alph-bool"
    if best is None:
        blocks = _blocks(lang, image)
        v = Verdict(q, Answer.YES, representation=blocks)
        if verify_bounds is not None:
            res = verify_representation(lang, blocks, verify_bounds)
            v.checks["verified_bound"] = list(verify_bounds)
            v.checks["verified"] = res.ok
            if not res.ok:
                v.notes.append(f"representation disagrees on {res.counterexample}")
        return v
    _, (s, e), (t, f), c = best
    w = _witness(hom, s, e, t, f, c, image.word(e, c), image.word(f, c))
    return Verdict(q, Answer.NO, witness=w)


def _witness(hom: Hom, s, e, t, f, c, e_hat, f_hat) -> Witness:
    names = hom.monoid.names
    u_hat, v_hat = hom.words[s], hom.words[t]
    return Witness(
        s, e, t, f, None if c is None else frozenset(c),
        up(u_hat, e_hat), up(v_hat, f_hat),
        {"u": u_hat, "e": e_hat, "v": v_hat, "f": f_hat},
        {"s": names[s], "e": names[e], "t": names[t], "f": names[f]},
    )


def check_witness(lang: RecognizedLanguage, w: Witness) -> list:
    """Re-validate a witness from scratch; returns the list of failed checks (empty if sound)."""
    lang = lang.restrict()
    hom, mon = lang.hom, lang.monoid
    problems = []
    if not up_membership(lang, w.alpha):
        problems.append("alpha is not in the language")
    if up_membership(lang, w.beta):
        problems.append("beta is in the language")
    if hom(w.words["u"]) != w.s or hom(w.words["e"]) != w.e:
        problems.append("words of alpha do not evaluate to (s, e)")
    if hom(w.words["v"]) != w.t or hom(w.words["f"]) != w.f:
        problems.append("words of beta do not evaluate to (t, f)")
    for x, y in ((w.s, w.e), (w.t, w.f)):
        if not (mon.is_idempotent(y) and mon.mul(x, y) == x):
            problems.append("not a linked pair")
    if not lang.accepts(w.s, w.e) or lang.accepts(w.t, w.f):
        problems.append("acceptance of the pairs is not opposite")
    if w.alphabet is not None:
        if set(w.words["e"]) != w.alphabet or set(w.words["f"]) != w.alphabet:
            problems.append("loop words do not have alphabet C")
        if coset(hom, w.s, w.alphabet) != coset(hom, w.t, w.alphabet):
            problems.append("s h(C*) != t h(C*)")
    elif not mon.green_R_equivalent(w.s, w.t):
        problems.append("s and t are not R-equivalent")
    return problems


# -- constructive representation -------------------------------------------------------------


def _blocks(lang: RecognizedLanguage, image: AlphImage) -> list:
    names = lang.monoid.names
    out = set()
    for s, e in lang.accepted:
        for c in subsets(lang.alphabet):
            if (e, c) in image:
                out.add((s, c))
    return sorted(
        (Block(s, c, names[s]) for s, c in out),
        key=lambda b: (b.s, alphabet_mask(b.alphabet, lang.alphabet)),
    )


def construct_representation(lang: RecognizedLanguage, check: bool = True) -> list:
    """Blocks ``L(s, C)`` whose union is the language (valid when the alphabetic condition holds)."""
    lang = lang.restrict()
    if check and decide_alphabetic_boolean(lang).answer is not Answer.YES:
        raise PreconditionViolated("the language is not a Boolean combination of alphabetic open sets")
    return _blocks(lang, AlphImage(lang.hom))


def split_values(hom: Hom, c: Iterable[str], alpha: UPWord) -> set:
    """All ``m`` with ``alpha`` in ``[m] C^inf``."""
    c = frozenset(c)
    t = hom.monoid.table
    if alpha.is_finite:
        word = alpha.prefix
    else:
        if not set(alpha.loop) <= c:
            return set()
        # h(u v^j) repeats after |M| steps
        word = alpha.prefix + alpha.loop * (hom.monoid.size + 1)
    start = len(word)
    while start > 0 and word[start - 1] in c:
        start -= 1
    m = hom(word[:start])
    out = {m}
    for a in word[start:]:
        m = int(t[m, hom.images[a]])
        out.add(m)
    return out


def in_prefixed_tail(hom: Hom, m: int, c, alpha: UPWord) -> bool:
    """``alpha`` in ``[m] C^inf``."""
    return m in split_values(hom, c, alpha)


def in_tail(d, alpha: UPWord) -> bool:
    """``alpha`` in ``Gamma* D^inf``."""
    return im(alpha) <= frozenset(d)


def in_block(hom: Hom, s: int, c, alpha: UPWord, _cosets=None) -> bool:
    """``alpha`` in ``L(s, C)``."""
    c = frozenset(c)
    if not c:
        return alpha.is_finite and hom(alpha.prefix) == s
    if alpha.is_finite or im(alpha) != c:
        return False
    vals = split_values(hom, c, alpha)
    if s not in vals:
        return False
    cosets = _cosets if _cosets is not None else {}
    for t in vals:
        if t not in cosets:
            cosets[t] = coset(hom, t, c)
        if s not in cosets[t]:
            return False
    return True


def up_membership_basic(hom: Hom, kind: str, alpha: UPWord, *, s=None, c=None, d=None) -> bool:
    """Membership in one of ``prefixed`` = [s]C^inf, ``tail`` = Gamma* D^inf, ``block`` = L(s, C)."""
    if kind == "prefixed":
        return in_prefixed_tail(hom, s, c, alpha)
    if kind == "tail":
        return in_tail(d, alpha)
    if kind == "block":
        return in_block(hom, s, c, alpha)
    raise ValueError(f"unknown basic set kind {kind!r}")


@dataclass
class VerifyResult:
    ok: bool
    counterexample: UPWord | None
    checked: int
    bounds: tuple

    def __bool__(self):
        return self.ok


def verify_representation(lang: RecognizedLanguage, blocks, bounds=(6, 6)) -> VerifyResult:
    """Compare the language with the union of the blocks on every lasso within ``bounds``."""
    lang = lang.restrict()
    hom = lang.hom
    by_alphabet = {}
    for b in blocks:
        by_alphabet.setdefault(frozenset(b.alphabet), []).append(b.s)
    cosets = {}
    checked = 0
    for alpha in enumerate_lassos(hom.alphabet, *bounds):
        checked += 1
        c = im(alpha)
        cache = cosets.setdefault(c, {})
        got = any(in_block(hom, s, c, alpha, cache) for s in by_alphabet.get(c, ()))
        if got != up_membership(lang, alpha):
            return VerifyResult(False, alpha, checked, tuple(bounds))
    return VerifyResult(True, None, checked, tuple(bounds))


# -- Cantor topology -----------------------------------------------------------------------


def decide_cantor_boolean(lang: RecognizedLanguage) -> Verdict:
    """Boolean combination of Cantor-open sets ``W Gamma^inf``? Evaluated on the syntactic monoid."""
    synt = syntactic_quotient(lang, with_order=False).language
    hom, mon = synt.hom, synt.monoid
    words = hom.words
    pairs = mon.linked_pairs()
    ideals = {}
    for s, _ in pairs:
        ideals.setdefault(s, mon.right_ideal(s))
    groups = {}
    for p in pairs:
        groups.setdefault(ideals[p[0]], []).append(p)
    best = None
    size = lambda p: len(words[p[0]]) + len(words[p[1]])
    for g in groups.values():
        acc = [p for p in g if synt.accepts(*p)]
        rej = [p for p in g if not synt.accepts(*p)]
        if acc and rej:
            a, r = _pick(acc, size), _pick(rej, size)
            key = (size(a) + size(r), a, r)
            if best is None or key < best[0]:
                best = (key, a, r)
    if best is None:
        return Verdict("cantor-bool", Answer.YES)
    _, (s, e), (t, f) = best
    w = _witness(hom, s, e, t, f, None, words[e], words[f])
    return Verdict("cantor-bool", Answer.NO, witness=w, notes=["evaluated on the syntactic monoid"])


# -- BSigma2 -----------------------------------------------------------------------------------


@dataclass
class OracleResult:
    answer: Answer
    note: str = ""
    evidence: object = None


V2Oracle = Callable[[Hom], "OracleResult | Answer"]


def unknown_oracle(hom: Hom) -> OracleResult:
    return OracleResult(Answer.UNKNOWN, "no V2 decision procedure configured")


def assume_yes_oracle(hom: Hom) -> OracleResult:
    return OracleResult(Answer.YES, "assumed: the syntactic monoid is taken to lie in V2")


@dataclass
class EvidenceReport:
    k: int
    length_bound: int
    words_checked: int
    classes: int
    violation: tuple | None  # (u, v, name of h(u), name of h(v))

    @property
    def summary(self) -> str:
        if self.violation is None:
            return f"no violation up to length {self.length_bound} at k={self.k}"
        u, v, hu, hv = self.violation
        return (f"{u or '1'} ≡_{self.k} {v or '1'} but they map to {hu} and {hv}: "
                f"not saturated by ≡_{self.k} (evidence at this k only, not a V2 decision)")


def saturation_evidence(lang_or_hom, k: int, length_bound: int = 6, *, force=False) -> EvidenceReport:
    """Search words up to ``length_bound`` for ``u ≡_k v`` with different syntactic images."""
    if isinstance(lang_or_hom, RecognizedLanguage):
        hom = syntactic_quotient(lang_or_hom, with_order=False).hom
    else:
        hom = lang_or_hom
    first = {}
    violation = None
    n = 0
    for w in words_upto(hom.alphabet, length_bound):
        n += 1
        vec = membership_vector(w, hom.alphabet, k, force=force)
        m = hom(w)
        if vec not in first:
            first[vec] = (w, m)
        elif first[vec][1] != m and violation is None:
            u, hu = first[vec]
            names = hom.monoid.names
            violation = (u, w, names[hu], names[m])
    return EvidenceReport(k, length_bound, n, len(first), violation)


def evidence_oracle(k: int = 2, length_bound: int = 6) -> V2Oracle:
    """NO on a found non-saturation witness at this ``k``, UNKNOWN otherwise."""
    def oracle(hom: Hom) -> OracleResult:
        rep = saturation_evidence(hom, k, length_bound)
        answer = Answer.UNKNOWN if rep.violation is None else Answer.NO
        return OracleResult(answer, rep.summary, rep)
    return oracle


def get_oracle(name: str) -> V2Oracle:
    """``unknown``, ``assume-yes`` or ``evidence:K[:BOUND]``."""
    if name == "unknown":
        return unknown_oracle
    if name == "assume-yes":
        return assume_yes_oracle
    if name.startswith("evidence"):
        parts = name.split(":")[1:]
        k = int(parts[0]) if parts else 2
        bound = int(parts[1]) if len(parts) > 1 else 6
        return evidence_oracle(k, bound)
    raise ValueError(f"unknown oracle {name!r}")


def decide_bsigma2(lang: RecognizedLanguage, oracle: V2Oracle = unknown_oracle) -> Verdict:
    """Definable in the Boolean closure of Sigma_2?

    Both halves are needed: the alphabetic condition on the syntactic monoid
    (decided here) and membership of the syntactic monoid in V2 (the oracle).
    """
    synt = syntactic_quotient(lang, with_order=False).language
    topo = decide_alphabetic_boolean(synt)
    res = oracle(synt.hom)
    if isinstance(res, Answer):
        res = OracleResult(res)
    checks = {"topological": topo.answer.value, "algebraic": res.answer.value}
    notes = [f"oracle: {res.note}"] if res.note else []
    if topo.answer is Answer.NO:
        return Verdict("bsigma2", Answer.NO, witness=topo.witness, checks={**checks, "failed": "topological"},
                       notes=notes)
    if res.answer is Answer.NO:
        return Verdict("bsigma2", Answer.NO, checks={**checks, "failed": "algebraic"}, notes=notes)
    answer = Answer.YES if res.answer is Answer.YES else Answer.UNKNOWN
    return Verdict("bsigma2", answer, representation=topo.representation, checks=checks, notes=notes)
