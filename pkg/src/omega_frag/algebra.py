"""Finite monoids, homomorphisms from free monoids, and recognition of languages of
finite and infinite words by linked pairs.

Elements of a :class:`FiniteMonoid` are integer indices into its multiplication
table; names are only for display and serialisation.
"""
from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Iterable, Mapping

import numpy as np

from .errors import BudgetExceeded, MonoidError
from .words import UPWord, make_alphabet

DEFAULT_ELEMENT_CAP = 5000


def element_cap() -> int:
    """Closure cap, overridable through the ``OMEGA_FRAG_BUDGET`` environment variable."""
    return int(os.environ.get("OMEGA_FRAG_BUDGET", DEFAULT_ELEMENT_CAP))


def shortlex_key(word: str):
    return (len(word), word)


class FiniteMonoid:
    """A finite monoid given by its multiplication table, optionally ordered.

    ``order`` is a set of pairs ``(s, t)`` meaning ``s <= t``; it has to be
    reflexive, transitive and compatible with multiplication.
    """

    def __init__(self, names, table, identity: int = 0, order=None, check: bool = True):
        self.names = tuple(names)
        self.table = np.asarray(table, dtype=np.int32)
        self.identity = int(identity)
        self.order = None if order is None else frozenset((int(s), int(t)) for s, t in order)
        n = len(self.names)
        if self.table.shape != (n, n):
            raise MonoidError(f"table must be {n}x{n}, got {self.table.shape}")
        if len(set(self.names)) != n:
            raise MonoidError("element names must be distinct")
        if check:
            self.validate()

    def validate(self) -> None:
        n, t = self.size, self.table
        if n == 0:
            raise MonoidError("a monoid has at least one element")
        if t.min() < 0 or t.max() >= n:
            raise MonoidError("table entries out of range")
        idx = np.arange(n)
        if not (np.array_equal(t[self.identity], idx) and np.array_equal(t[:, self.identity], idx)):
            raise MonoidError(f"{self.names[self.identity]} is not an identity")
        for a in range(n):
            # (a b) c == a (b c) for all b, c
            if not np.array_equal(t[t[a]], t[a][t]):
                raise MonoidError(f"multiplication is not associative (left factor {self.names[a]})")
        if self.order is not None:
            self._validate_order()

    def _validate_order(self) -> None:
        le = self.order_matrix()
        n = self.size
        if not le[np.arange(n), np.arange(n)].all():
            raise MonoidError("order is not reflexive")
        if ((le.astype(int) @ le.astype(int) > 0) & ~le).any():
            raise MonoidError("order is not transitive")
        pairs = list(self.order)
        for s, t in pairs:
            for s2, t2 in pairs:
                if not le[self.table[s, s2], self.table[t, t2]]:
                    raise MonoidError("order is not compatible with multiplication")

    def order_matrix(self) -> np.ndarray:
        le = np.zeros((self.size, self.size), dtype=bool)
        if self.order is None:
            np.fill_diagonal(le, True)
        else:
            for s, t in self.order:
                le[s, t] = True
        return le

    @property
    def size(self) -> int:
        return len(self.names)

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"FiniteMonoid({list(self.names)})"

    def mul(self, s: int, t: int) -> int:
        return int(self.table[s, t])

    def product(self, elements: Iterable[int]) -> int:
        r = self.identity
        for x in elements:
            r = int(self.table[r, x])
        return r

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no element named {name!r}") from None

    def is_idempotent(self, x: int) -> bool:
        return int(self.table[x, x]) == x

    @cached_property
    def idempotents(self) -> tuple:
        return tuple(x for x in range(self.size) if self.is_idempotent(x))

    def idempotent_power(self, x: int) -> int:
        """The unique idempotent among the powers ``x, x^2, ...``."""
        p = x
        for _ in range(self.size + 1):
            if self.table[p, p] == p:
                return p
            p = int(self.table[p, x])
        raise MonoidError("no idempotent power found; table is not a finite monoid")

    @cached_property
    def idempotent_powers(self) -> np.ndarray:
        return np.array([self.idempotent_power(x) for x in range(self.size)], dtype=np.int32)

    def linked_pairs(self) -> list:
        """All ``(s, e)`` with ``e e = e`` and ``s e = s``, sorted by index."""
        return [(s, e) for s in range(self.size) for e in self.idempotents if self.table[s, e] == s]

    def right_ideal(self, s: int) -> frozenset:
        return frozenset(int(x) for x in self.table[s])

    def green_R_equivalent(self, s: int, t: int) -> bool:
        """``s M == t M``."""
        return self.right_ideal(s) == self.right_ideal(t)


def linked_pairs(m: FiniteMonoid) -> list:
    return m.linked_pairs()


def idempotent_power(m: FiniteMonoid, x: int) -> int:
    return m.idempotent_power(x)


def green_R_equivalent(m: FiniteMonoid, s: int, t: int) -> bool:
    return m.green_R_equivalent(s, t)


class Hom:
    """A homomorphism from the free monoid over ``alphabet`` into ``monoid``."""

    def __init__(self, alphabet, monoid: FiniteMonoid, images: Mapping[str, int]):
        self.alphabet = make_alphabet(alphabet)
        self.monoid = monoid
        self.images = {a: int(images[a]) for a in self.alphabet}
        if set(images) - set(self.alphabet):
            raise MonoidError("generator images given for letters outside the alphabet")

    def __call__(self, word: str) -> int:
        t = self.monoid.table
        r = self.monoid.identity
        for a in word:
            r = int(t[r, self.images[a]])
        return r

    def __repr__(self):
        return f"Hom({''.join(self.alphabet)} -> {self.monoid.size} elements)"

    @cached_property
    def words(self) -> dict:
        """Shortlex-least preimage of every element in the image."""
        t = self.monoid.table
        found = {self.monoid.identity: ""}
        queue = deque([self.monoid.identity])
        while queue:
            m = queue.popleft()
            for a in self.alphabet:
                x = int(t[m, self.images[a]])
                if x not in found:
                    found[x] = found[m] + a
                    queue.append(x)
        return found

    @property
    def is_surjective(self) -> bool:
        return len(self.words) == self.monoid.size

    def restrict(self) -> tuple["Hom", list]:
        """Corestriction onto the image; returns the new hom and the old index of each new element."""
        if self.is_surjective:
            return self, list(range(self.monoid.size))
        old = sorted(self.words, key=lambda m: shortlex_key(self.words[m]))
        new_of = {m: i for i, m in enumerate(old)}
        t = self.monoid.table
        table = [[new_of[int(t[a, b])] for b in old] for a in old]
        order = None
        if self.monoid.order is not None:
            order = [(new_of[s], new_of[u]) for s, u in self.monoid.order if s in new_of and u in new_of]
        mon = FiniteMonoid([self.monoid.names[m] for m in old], table, new_of[self.monoid.identity], order, check=False)
        return Hom(self.alphabet, mon, {a: new_of[x] for a, x in self.images.items()}), old


# -- closure ---------------------------------------------------------------


def generate(
    generators: Mapping[str, Any],
    product: Callable[[Any, Any], Any] | None = None,
    identity: Any = None,
    key: Callable[[Any], Any] = lambda x: x,
    cap: int | None = None,
) -> tuple[Hom, list]:
    """Least monoid containing ``generators`` inside an ambient associative structure.

    Elements are discovered breadth-first from the identity, trying generators in
    letter order, so element ``i`` is named by its shortlex-least word.  With
    ``identity=None`` a fresh identity is adjoined: only the empty word maps to
    it, even if some product of generators is an ambient identity.

    Returns the hom from the generator letters and the ambient value of each
    element (``identity`` for element 0).
    """
    cap = element_cap() if cap is None else cap
    letters = make_alphabet(generators)
    elems = [identity]
    words = [""]
    index = {}
    if identity is not None:
        index[key(identity)] = 0
    right = {a: [] for a in letters}
    i = 0
    while i < len(elems):
        for a in letters:
            x = generators[a] if i == 0 and identity is None else product(elems[i], generators[a])
            k = key(x)
            j = index.get(k)
            if j is None:
                j = len(elems)
                if j >= cap:
                    raise BudgetExceeded(f"monoid closure exceeds {cap} elements (set OMEGA_FRAG_BUDGET)")
                index[k] = j
                elems.append(x)
                words.append(words[i] + a)
            right[a].append(j)
        i += 1
    n = len(elems)
    right_arr = {a: np.array(right[a], dtype=np.int32) for a in letters}
    table = np.empty((n, n), dtype=np.int32)
    for t in range(n):
        col = np.arange(n, dtype=np.int32)
        for a in words[t]:
            col = right_arr[a][col]
        table[:, t] = col
    names = [w if w else "1" for w in words]
    mon = FiniteMonoid(names, table, 0, check=False)
    images = {a: right[a][0] for a in letters}
    return Hom(letters, mon, images), elems


# -- alphabet-annotated image ----------------------------------------------------


class AlphImage:
    """The set ``{(h(w), alph(w))}`` with a shortlex-least witness word for each pair."""

    def __init__(self, hom: Hom, cap: int = 10**6):
        if hom.monoid.size * 2 ** len(hom.alphabet) > cap:
            raise BudgetExceeded("alphabet-annotated image too large")
        self.hom = hom
        t = hom.monoid.table
        start = (hom.monoid.identity, frozenset())
        found = {start: ""}
        queue = deque([start])
        while queue:
            m, c = queue.popleft()
            for a in hom.alphabet:
                node = (int(t[m, hom.images[a]]), c | {a})
                if node not in found:
                    found[node] = found[(m, c)] + a
                    queue.append(node)
        self.words = found

    def __contains__(self, pair) -> bool:
        m, c = pair
        return (m, frozenset(c)) in self.words

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)

    def word(self, m: int, c) -> str | None:
        return self.words.get((m, frozenset(c)))

    def elements_with_alphabet(self, c) -> set:
        c = frozenset(c)
        return {m for (m, d) in self.words if d == c}


def alph_image(hom: Hom) -> AlphImage:
    return AlphImage(hom)


def submonoid_image(hom: Hom, c: Iterable[str]) -> frozenset:
    """``h(C*)``."""
    t = hom.monoid.table
    gens = [hom.images[a] for a in sorted(set(c))]
    seen = {hom.monoid.identity}
    stack = [hom.monoid.identity]
    while stack:
        m = stack.pop()
        for g in gens:
            x = int(t[m, g])
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return frozenset(seen)


def coset(hom: Hom, s: int, c: Iterable[str]) -> frozenset:
    """``s . h(C*)``."""
    t = hom.monoid.table
    return frozenset(int(t[s, x]) for x in submonoid_image(hom, c))


# -- recognized languages -------------------------------------------------------


@dataclass
class RecognizedLanguage:
    """The union of ``[s][e]^omega`` over the accepted linked pairs of ``hom``.

    ``accepted`` must be saturated: a linked pair is listed iff its set
    ``[s][e]^omega`` meets (equivalently, lies inside) the language.
    """

    hom: Hom
    accepted: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        self.accepted = frozenset((int(s), int(e)) for s, e in self.accepted)
        m = self.hom.monoid
        for s, e in self.accepted:
            if not (m.is_idempotent(e) and m.mul(s, e) == s):
                raise MonoidError(f"accepted pair ({m.names[s]},{m.names[e]}) is not a linked pair")

    @property
    def monoid(self) -> FiniteMonoid:
        return self.hom.monoid

    @property
    def alphabet(self) -> tuple:
        return self.hom.alphabet

    def accepts(self, s: int, e: int) -> bool:
        return (s, e) in self.accepted

    def __contains__(self, alpha) -> bool:
        if isinstance(alpha, str):
            alpha = UPWord(alpha, "")
        return up_membership(self, alpha)

    def restrict(self) -> "RecognizedLanguage":
        hom, old = self.hom.restrict()
        if hom is self.hom:
            return self
        new_of = {o: i for i, o in enumerate(old)}
        acc = {(new_of[s], new_of[e]) for s, e in self.accepted if s in new_of and e in new_of}
        return RecognizedLanguage(hom, frozenset(acc))

    def accepted_matrix(self) -> np.ndarray:
        a = np.zeros((self.monoid.size, self.monoid.size), dtype=bool)
        for s, e in self.accepted:
            a[s, e] = True
        return a

    # serialisation

    def to_dict(self) -> dict:
        m = self.monoid
        d = {
            "elements": list(m.names),
            "identity": m.names[m.identity],
            "table": [[m.names[x] for x in row] for row in m.table],
            "generators": {a: m.names[x] for a, x in self.hom.images.items()},
        }
        if m.order is not None:
            d["order"] = [[m.names[s], m.names[t]] for s, t in sorted(m.order)]
        d["accepted"] = [[m.names[s], m.names[e]] for s, e in sorted(self.accepted)]
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "RecognizedLanguage":
        names = list(d["elements"])
        idx = {n: i for i, n in enumerate(names)}
        try:
            table = [[idx[x] for x in row] for row in d["table"]]
            order = [(idx[s], idx[t]) for s, t in d["order"]] if d.get("order") is not None else None
            mon = FiniteMonoid(names, table, idx[d["identity"]], order)
            hom = Hom(d["generators"].keys(), mon, {a: idx[x] for a, x in d["generators"].items()})
            acc = {(idx[s], idx[e]) for s, e in d.get("accepted", [])}
        except KeyError as exc:
            raise MonoidError(f"unknown element name {exc}") from None
        return cls(hom, frozenset(acc))

    @classmethod
    def from_json(cls, text: str) -> "RecognizedLanguage":
        return cls.from_dict(json.loads(text))


def lasso_pair(hom: Hom, alpha: UPWord) -> tuple[int, int]:
    """The linked pair ``(h(u) e, e)`` with ``e`` the idempotent power of ``h(v)``; ``(h(u), 1)`` if finite."""
    m = hom.monoid
    if alpha.is_finite:
        return hom(alpha.prefix), m.identity
    e = m.idempotent_power(hom(alpha.loop))
    return m.mul(hom(alpha.prefix), e), e


def up_membership(lang: RecognizedLanguage, alpha: UPWord) -> bool:
    # the pair depends on the representation, its acceptance does not (saturation)
    return lasso_pair(lang.hom, alpha) in lang.accepted


def realized_linked_pairs(hom: Hom) -> list:
    """Linked pairs ``(s, e)`` with ``[s][e]^omega`` nonempty: ``s`` and ``e`` lie in the image."""
    image = hom.words
    return [(s, e) for s, e in hom.monoid.linked_pairs() if s in image and e in image]


# -- products and Boolean operations -----------------------------------------------


def direct_product(g: Hom, h: Hom, cap: int | None = None) -> tuple[Hom, list]:
    """``g x h`` restricted to its image; also returns the component pair of each element."""
    if g.alphabet != h.alphabet:
        raise MonoidError("direct product needs homs over the same alphabet")
    tg, th = g.monoid.table, h.monoid.table
    gens = {a: (g.images[a], h.images[a]) for a in g.alphabet}
    return generate(
        gens,
        lambda x, y: (int(tg[x[0], y[0]]), int(th[x[1], y[1]])),
        identity=(g.monoid.identity, h.monoid.identity),
        cap=cap,
    )


def boolean_combination(op: Callable[[bool, bool], bool], lang1: RecognizedLanguage,
                        lang2: RecognizedLanguage) -> RecognizedLanguage:
    """``op`` applied pointwise to two languages, recognized by the direct product."""
    hom, comps = direct_product(lang1.hom, lang2.hom)
    acc = set()
    for s, e in hom.monoid.linked_pairs():
        (s1, s2), (e1, e2) = comps[s], comps[e]
        if op(lang1.accepts(s1, e1), lang2.accepts(s2, e2)):
            acc.add((s, e))
    return RecognizedLanguage(hom, frozenset(acc))


def union(lang1, lang2):
    return boolean_combination(lambda x, y: x or y, lang1, lang2)


def intersection(lang1, lang2):
    return boolean_combination(lambda x, y: x and y, lang1, lang2)


def difference(lang1, lang2):
    return boolean_combination(lambda x, y: x and not y, lang1, lang2)


def complement(lang: RecognizedLanguage) -> RecognizedLanguage:
    lang = lang.restrict()
    acc = {p for p in realized_linked_pairs(lang.hom) if p not in lang.accepted}
    return RecognizedLanguage(lang.hom, frozenset(acc))


# -- syntactic monoid -----------------------------------------------------------


@dataclass
class Quotient:
    """Syntactic image of a recognized language.

    ``language`` is recognized by the syntactic hom (elements named by
    shortlex-least words, ordered shortlex); ``projection[m]`` is the class of
    element ``m`` of the (restricted) input monoid; ``order`` holds the pairs
    ``(s, t)`` with ``s`` below ``t`` in the syntactic order.
    """

    language: RecognizedLanguage
    projection: list
    source: RecognizedLanguage

    @property
    def hom(self) -> Hom:
        return self.language.hom

    @property
    def monoid(self) -> FiniteMonoid:
        return self.language.hom.monoid

    @property
    def order(self) -> frozenset:
        return self.monoid.order


def _observations(table: np.ndarray, idem: np.ndarray, acc: np.ndarray):
    # outcome[m, z]: is (m e_z, e_z) accepted, i.e. x m y z^w for m = x s y
    outcome = acc[table[:, idem], idem[None, :]]
    # omega[m, x]: is (x e_m, e_m) accepted, i.e. x (s y)^w for m = s y
    omega = acc[table[:, idem].T, idem[:, None]]
    return outcome, omega


def _syntactic_order(table: np.ndarray, idem: np.ndarray, acc: np.ndarray) -> set:
    n = table.shape[0]
    outcome, omega = _observations(table, idem, acc)
    sig = []
    for s in range(n):
        xsy = table[table[:, s]]  # [x, y] -> x s y
        a = outcome[xsy].reshape(-1)
        b = omega[table[s]].reshape(-1)  # [y, x] -> x (s y)^w
        sig.append(np.concatenate([a, b]))
    sig = np.array(sig)
    order = set()
    for s in range(n):
        below = ~(sig[s][None, :] & ~sig).any(axis=1)
        order.update((s, int(t)) for t in np.flatnonzero(below))
    return order


def syntactic_quotient(lang: RecognizedLanguage, with_order: bool = True) -> Quotient:
    """Quotient of the recognizing monoid by the syntactic congruence of the language.

    The congruence is the largest one contained in the kernel of the
    observations ``s -> ([s e_z][e_z]^w in L)_z`` and
    ``s -> (x e_s, e_s) accepted)_x``; it is found by partition refinement
    over left and right multiplication by generators.
    """
    lang = lang.restrict()
    hom, mon = lang.hom, lang.monoid
    n = mon.size
    t = mon.table
    idem = mon.idempotent_powers
    acc = lang.accepted_matrix()
    outcome, omega = _observations(t, idem, acc)

    keys = [(outcome[m].tobytes(), omega[m].tobytes()) for m in range(n)]
    cls = _renumber(keys)
    gens = sorted(set(hom.images.values()))
    while True:
        keys = [
            (cls[m],) + tuple(cls[t[m, g]] for g in gens) + tuple(cls[t[g, m]] for g in gens)
            for m in range(n)
        ]
        new = _renumber(keys)
        if max(new) == max(cls):
            break
        cls = new

    words = hom.words
    n_cls = max(cls) + 1
    rep_word = [None] * n_cls
    rep_elem = [None] * n_cls
    for m in range(n):
        c = cls[m]
        if rep_word[c] is None or shortlex_key(words[m]) < shortlex_key(rep_word[c]):
            rep_word[c], rep_elem[c] = words[m], m
    order_cls = sorted(range(n_cls), key=lambda c: shortlex_key(rep_word[c]))
    new_of = {c: i for i, c in enumerate(order_cls)}
    projection = [new_of[cls[m]] for m in range(n)]
    reps = [rep_elem[c] for c in order_cls]
    table = [[projection[t[a, b]] for b in reps] for a in reps]
    names = [rep_word[c] or "1" for c in order_cls]
    qmon = FiniteMonoid(names, table, projection[mon.identity], check=False)

    qacc = set()
    for s, e in qmon.linked_pairs():
        e0 = int(idem[reps[e]])
        s0 = int(t[reps[s], e0])
        if acc[s0, e0]:
            qacc.add((s, e))
    if with_order:
        qidem = qmon.idempotent_powers
        qacc_m = np.zeros((qmon.size, qmon.size), dtype=bool)
        for s, e in qacc:
            qacc_m[s, e] = True
        qmon = FiniteMonoid(names, table, qmon.identity, _syntactic_order(qmon.table, qidem, qacc_m), check=False)
    qhom = Hom(hom.alphabet, qmon, {a: projection[x] for a, x in hom.images.items()})
    return Quotient(RecognizedLanguage(qhom, frozenset(qacc)), projection, lang)


def _renumber(keys) -> list:
    ids = {}
    return [ids.setdefault(k, len(ids)) for k in keys]


def is_isomorphic_by_names(m1: FiniteMonoid, m2: FiniteMonoid) -> bool:
    """Same element names and the same table under the name correspondence."""
    if set(m1.names) != set(m2.names):
        return False
    perm = [m2.index(name) for name in m1.names]
    return all(
        perm[m1.mul(a, b)] == m2.mul(perm[a], perm[b]) for a in range(m1.size) for b in range(m1.size)
    ) and perm[m1.identity] == m2.identity
