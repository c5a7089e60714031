"""Pluggable base classes C.

A base class answers membership and separation (with a concrete separator).
Three are shipped: ``ST`` = {empty, A*}, ``AT`` (alphabet-testable
languages) and explicit finite quotienting lattices.  Finite lattices also
expose their canonical preorder on words and its period.
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable

import numpy as np

from .algebra import FiniteMonoid, Morphism, morphism_from_dfa
from .automata import (
    Alphabet,
    Dfa,
    disjoint,
    includes,
    intersection,
    is_empty,
    is_universal,
    left_quotient,
    minimize,
    right_quotient,
    union,
    words,
)
from .errors import AlphabetError, FormatError, InternalInvariantError, PolcError, ResourceLimitError
from .expr import PolExpr, bases, max_cuts

DEFAULT_LATTICE_CAP = 4096


class BaseClass(ABC):
    """A class of regular languages answering membership and separation."""

    name: str
    alphabet: Alphabet

    @abstractmethod
    def member(self, lang: Dfa) -> bool: ...

    @abstractmethod
    def separate(self, l1: Dfa, l2: Dfa) -> Dfa | None:
        """A language of the class containing ``l1`` and disjoint from ``l2``, or None."""

    def pair_matrix(self, m: Morphism) -> np.ndarray | None:
        """Optional exact shortcut for the C-pair relation of ``m``; None means
        the caller must fall back to one ``separate`` call per pair."""
        return None

    def _check(self, lang: Dfa) -> None:
        if lang.alphabet != self.alphabet:
            raise AlphabetError(
                f"{self.name}: language over {str(lang.alphabet)!r}, class over {str(self.alphabet)!r}"
            )

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} over {str(self.alphabet)!r}>"


class Checked(BaseClass):
    """Wraps an oracle and asserts the separator contract on every call."""

    def __init__(self, inner: BaseClass):
        self.inner = inner
        self.name = inner.name
        self.alphabet = inner.alphabet
        self.calls = 0

    def member(self, lang: Dfa) -> bool:
        return self.inner.member(lang)

    def separate(self, l1: Dfa, l2: Dfa) -> Dfa | None:
        self.calls += 1
        k = self.inner.separate(l1, l2)
        if k is not None:
            if not includes(k, l1):
                raise InternalInvariantError(f"{self.name}: separator does not contain L1")
            if not disjoint(k, l2):
                raise InternalInvariantError(f"{self.name}: separator meets L2")
            if not self.inner.member(k):
                raise InternalInvariantError(f"{self.name}: separator is not in the class")
        return k

    def pair_matrix(self, m: Morphism) -> np.ndarray | None:
        return self.inner.pair_matrix(m)


# --------------------------------------------------------------------------
# ST = {empty, A*}


class StClass(BaseClass):
    def __init__(self, alphabet: Alphabet):
        self.name = "ST"
        self.alphabet = alphabet

    def member(self, lang: Dfa) -> bool:
        self._check(lang)
        return is_empty(lang) or is_universal(lang)

    def separate(self, l1: Dfa, l2: Dfa) -> Dfa | None:
        self._check(l1)
        self._check(l2)
        if is_empty(l1):
            return Dfa.empty(self.alphabet)
        if is_empty(l2):
            return Dfa.universal(self.alphabet)
        return None

    def pair_matrix(self, m: Morphism) -> np.ndarray:
        nonempty = np.zeros(m.size, dtype=bool)
        nonempty[m.automaton().reachable()] = True
        return nonempty[:, None] & nonempty[None, :]


# --------------------------------------------------------------------------
# AT: membership depends only on the set of letters


def _mask_reach(dfa: Dfa) -> set[tuple[int, int]]:
    """Reachable (state, letter-set bitmask) pairs of ``dfa`` x subset tracker."""
    start = (dfa.initial, 0)
    seen = {start}
    queue = deque([start])
    k = len(dfa.alphabet)
    while queue:
        q, mask = queue.popleft()
        row = dfa.delta[q]
        for a in range(k):
            nxt = (row[a], mask | (1 << a))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


@lru_cache(maxsize=4096)
def _profile_masks(dfa: Dfa) -> frozenset[int]:
    return frozenset(mask for q, mask in _mask_reach(dfa) if q in dfa.finals)


def alphabet_profiles(lang: Dfa) -> set[frozenset[str]]:
    """``{alph(w) | w in L}`` as letter sets."""
    letters = lang.alphabet.letters
    return {frozenset(letters[i] for i in range(len(letters)) if mask >> i & 1) for mask in _profile_masks(lang)}


def _masks_of(alphabet: Alphabet, profiles: Iterable[Iterable[str]]) -> frozenset[int]:
    out = set()
    for letters in profiles:
        mask = 0
        for a in letters:
            mask |= 1 << alphabet.index(a)
        out.add(mask)
    return frozenset(out)


@lru_cache(maxsize=1024)
def _at_language_masks(alphabet: Alphabet, masks: frozenset[int]) -> Dfa:
    k = len(alphabet)
    states = 1 << k
    delta = tuple(tuple(s | (1 << a) for a in range(k)) for s in range(states))
    return minimize(Dfa(alphabet, delta, 0, frozenset(masks)))


def at_language(alphabet: Alphabet, profiles: Iterable[Iterable[str]]) -> Dfa:
    """Union of the classes ``{w | alph(w) = B}`` over the given letter sets ``B``."""
    return _at_language_masks(alphabet, _masks_of(alphabet, profiles))


class AtClass(BaseClass):
    def __init__(self, alphabet: Alphabet):
        self.name = "AT"
        self.alphabet = alphabet

    def member(self, lang: Dfa) -> bool:
        self._check(lang)
        verdict: dict[int, bool] = {}
        for q, mask in _mask_reach(lang):
            final = q in lang.finals
            if verdict.setdefault(mask, final) != final:
                return False
        return True

    def minimal_superset(self, lang: Dfa) -> Dfa:
        self._check(lang)
        return _at_language_masks(self.alphabet, _profile_masks(lang))

    def separate(self, l1: Dfa, l2: Dfa) -> Dfa | None:
        self._check(l1)
        self._check(l2)
        if _profile_masks(l1) & _profile_masks(l2):
            return None
        return self.minimal_superset(l1)

    def pair_matrix(self, m: Morphism) -> np.ndarray:
        profiles = _element_profiles(m)
        size = m.size
        out = np.zeros((size, size), dtype=bool)
        for s in range(size):
            for t in range(size):
                out[s, t] = bool(profiles[s] & profiles[t])
        return out


def _element_profiles(m: Morphism) -> list[set[int]]:
    profiles: list[set[int]] = [set() for _ in range(m.size)]
    for s, mask in _mask_reach(m.automaton()):
        profiles[s].add(mask)
    return profiles


# --------------------------------------------------------------------------
# finite quotienting lattices


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    alphabet: Alphabet
    elements: tuple[Dfa, ...]

    @cached_property
    def index(self) -> dict[Dfa, int]:
        return {d: i for i, d in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, lang: Dfa) -> bool:
        return minimize(lang) in self.index

    def closure_failures(self) -> list[str]:
        """Exhaustive check of the quotienting-lattice axioms."""
        out = []
        if Dfa.empty(self.alphabet) not in self.index:
            out.append("missing empty language")
        if Dfa.universal(self.alphabet) not in self.index:
            out.append("missing A*")
        if len(set(self.elements)) != len(self.elements):
            out.append("duplicate elements")
        for i, x in enumerate(self.elements):
            for y in self.elements[i:]:
                if union(x, y) not in self.index:
                    out.append(f"not closed under union ({i})")
                if intersection(x, y) not in self.index:
                    out.append(f"not closed under intersection ({i})")
            for a in self.alphabet:
                if left_quotient(x, a) not in self.index or right_quotient(x, a) not in self.index:
                    out.append(f"not closed under quotient by {a!r} ({i})")
        return out


def _joint_morphism(gens: list[Dfa], monoid_cap: int) -> tuple[Morphism, list[int]]:
    """Transition morphism of the product of the generators, and each generator
    as a bitmask of the elements it accepts."""
    alphabet = gens[0].alphabet
    start = tuple(g.initial for g in gens)
    ids = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        row = []
        for a in range(len(alphabet)):
            nxt = tuple(g.delta[q][a] for g, q in zip(gens, order[i]))
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
            row.append(ids[nxt])
        delta.append(tuple(row))
        i += 1
    product = Dfa(alphabet, tuple(delta), 0, frozenset())
    m, transforms = morphism_from_dfa(product, monoid_cap)
    landing = [order[q] for q in transforms[:, 0].tolist()]
    masks = [
        sum(1 << s for s, st in enumerate(landing) if st[j] in g.finals) for j, g in enumerate(gens)
    ]
    return m, masks


def saturate_lattice(
    generators: Iterable[Dfa], cap: int = DEFAULT_LATTICE_CAP, monoid_cap: int = 5000
) -> FiniteLattice:
    """Least quotienting lattice containing the generators (up to language equivalence).

    Every language in the closure is recognized by the joint transition
    morphism of the generators, so it is held as the set of elements it
    accepts (a bitmask).  Single-letter left/right quotients are closed to a
    fixed point first, then intersections, then unions; quotients commute
    with both, so the result is closed under all three.
    """
    gens = [minimize(g) for g in generators]
    if not gens:
        raise PolcError("saturate_lattice needs at least one generator")
    alphabet = gens[0].alphabet
    for g in gens:
        if g.alphabet != alphabet:
            raise AlphabetError("lattice generators over different alphabets")
    m, gen_masks = _joint_morphism(gens, monoid_cap)
    rows = m.monoid.rows
    size = m.size
    full = (1 << size) - 1

    def pull(mask: int, shift) -> int:
        return sum(1 << s for s in range(size) if mask >> shift(s) & 1)

    items: list[int] = []
    seen: set[int] = set()

    def add(mask: int) -> None:
        if mask in seen:
            return
        if len(items) >= cap:
            raise ResourceLimitError("lattice size", cap)
        seen.add(mask)
        items.append(mask)

    for mask in [0, full, *gen_masks]:
        add(mask)
    i = 0
    while i < len(items):
        x = items[i]
        for img in m.letter_image:
            add(pull(x, lambda s: rows[img][s]))
            add(pull(x, lambda s: rows[s][img]))
        i += 1
    for op in (int.__and__, int.__or__):
        i = 0
        while i < len(items):
            x = items[i]
            for j in range(i):
                add(op(items[j], x))
            i += 1
    elements = tuple(m.preimage([s for s in range(size) if x >> s & 1]) for x in items)
    return FiniteLattice(alphabet, elements)


class LatticeClass(BaseClass):
    def __init__(self, lattice: FiniteLattice, name: str = "lattice"):
        self.lattice = lattice
        self.alphabet = lattice.alphabet
        self.name = name

    def member(self, lang: Dfa) -> bool:
        self._check(lang)
        return lang in self.lattice

    def minimal_superset(self, lang: Dfa) -> Dfa:
        """Intersection of all lattice elements containing ``lang`` (itself an element)."""
        self._check(lang)
        out = Dfa.universal(self.alphabet)
        for e in self.lattice.elements:
            if includes(e, lang):
                out = intersection(out, e)
        return out

    def separate(self, l1: Dfa, l2: Dfa) -> Dfa | None:
        self._check(l2)
        k = self.minimal_superset(l1)
        return k if disjoint(k, l2) else None

    @cached_property
    def preorder(self) -> "CanonicalPreorder":
        return CanonicalPreorder(self.lattice)

    def pair_matrix(self, m: Morphism) -> np.ndarray:
        pre = self.preorder
        profiles: list[set[int]] = [set() for _ in range(m.size)]
        for s, q in _product_reach(m.automaton(), pre.automaton):
            profiles[s].add(pre.state_profile[q])
        full = (1 << len(self.lattice)) - 1
        size = m.size
        out = np.zeros((size, size), dtype=bool)
        for s in range(size):
            # lattice elements containing every word of alpha^{-1}(s)
            required = full
            for p in profiles[s]:
                required &= p
            for t in range(size):
                out[s, t] = any(required & ~p == 0 for p in profiles[t])
        return out


def _product_reach(x: Dfa, y: Dfa) -> set[tuple[int, int]]:
    start = (x.initial, y.initial)
    seen = {start}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        for rp, rq in zip(x.delta[p], y.delta[q]):
            if (rp, rq) not in seen:
                seen.add((rp, rq))
                queue.append((rp, rq))
    return seen


# --------------------------------------------------------------------------
# canonical preorder


class CanonicalPreorder:
    """``u <=_C v`` iff every lattice element containing ``u`` contains ``v``.

    Words are mapped to their *profile*, the bitmask of lattice elements
    containing them, by running all elements in parallel (the profile
    automaton).  The transition monoid of that automaton is the profile
    monoid; its idempotent power is the period.
    """

    def __init__(self, lattice: FiniteLattice, monoid_cap: int = 5000):
        self.lattice = lattice
        self.alphabet = lattice.alphabet
        comps = lattice.elements
        start = tuple(d.initial for d in comps)
        ids = {start: 0}
        order = [start]
        delta = []
        i = 0
        while i < len(order):
            cur = order[i]
            row = []
            for a in range(len(self.alphabet)):
                nxt = tuple(d.delta[q][a] for d, q in zip(comps, cur))
                if nxt not in ids:
                    ids[nxt] = len(order)
                    order.append(nxt)
                row.append(ids[nxt])
            delta.append(tuple(row))
            i += 1
        self.state_profile = [
            sum(1 << j for j, (d, q) in enumerate(zip(comps, st)) if q in d.finals) for st in order
        ]
        self.automaton = Dfa(self.alphabet, tuple(delta), 0, frozenset())
        self._monoid_cap = monoid_cap

    def profile(self, word: str) -> int:
        return self.state_profile[self.automaton.run(word)]

    def profile_set(self, word: str) -> set[int]:
        p = self.profile(word)
        return {i for i in range(len(self.lattice)) if p >> i & 1}

    def leq(self, u: str, v: str) -> bool:
        pu, pv = self.profile(u), self.profile(v)
        return pu & ~pv == 0

    @cached_property
    def profile_morphism(self) -> Morphism:
        m, _ = morphism_from_dfa(self.automaton, self._monoid_cap)
        return m

    @cached_property
    def profile_monoid(self) -> FiniteMonoid:
        return self.profile_morphism.monoid

    @cached_property
    def element_profiles(self) -> list[int]:
        m = self.profile_morphism
        return [self.profile(m.representatives[s]) for s in range(m.size)]

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        """``<=_C`` on profile-monoid elements."""
        p = self.element_profiles
        n = len(p)
        return np.array([[p[s] & ~p[t] == 0 for t in range(n)] for s in range(n)], dtype=bool)

    @property
    def period(self) -> int:
        return self.profile_monoid.omega


def leq_C(pre: CanonicalPreorder, u: str, v: str) -> bool:
    return pre.leq(u, v)


def period(pre: CanonicalPreorder) -> int:
    return pre.period


def member(oracle: BaseClass, lang: Dfa) -> bool:
    return oracle.member(lang)


def separate(oracle: BaseClass, l1: Dfa, l2: Dfa) -> Dfa | None:
    return oracle.separate(l1, l2)


# --------------------------------------------------------------------------
# characteristic property of Pol over a finite lattice


@dataclass
class CharPropertyReport:
    h: int
    p: int
    samples: int = 0
    premise_held: int = 0
    violations: list[tuple[str, str, str, str, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_char_property(
    lang: Dfa,
    lattice: FiniteLattice,
    expr: PolExpr,
    samples: int = 200,
    seed: int = 0,
    max_uv: int = 3,
    max_xy: int = 4,
) -> CharPropertyReport:
    """Sample ``(x, u, v, y, l)`` with ``u <=_D v`` and ``l in {h, h+1, h+2}`` and
    check ``x u^{pl+1} y in L  =>  x u^{pl} v u^{pl} y in L``.

    ``h = 2n + 1`` where ``n`` is the largest number of concatenation points
    in a product of ``expr``; ``p`` is the period of the lattice.
    """
    for name, d in bases(expr).items():
        if d not in lattice:
            raise PolcError(f"base language {name} of the expression is not in the lattice")
    pre = CanonicalPreorder(lattice)
    h = 2 * max_cuts(expr) + 1
    p = pre.period
    report = CharPropertyReport(h=h, p=p)
    pool = list(words(lattice.alphabet, max_uv))
    pairs = [(u, v) for u in pool for v in pool if pre.leq(u, v)]
    rng = random.Random(seed)
    letters = lattice.alphabet.letters

    def rand_word() -> str:
        return "".join(rng.choice(letters) for _ in range(rng.randint(0, max_xy)))

    for _ in range(samples):
        u, v = rng.choice(pairs)
        x, y = rand_word(), rand_word()
        ell = h + rng.randint(0, 2)
        k = p * ell
        report.samples += 1
        if lang.accepts(x + u * (k + 1) + y):
            report.premise_held += 1
            if not lang.accepts(x + u * k + v + u * k + y):
                report.violations.append((x, u, v, y, ell))
    return report


# --------------------------------------------------------------------------
# loading


def load_lattice(path: str | Path, alphabet: Alphabet | None = None) -> FiniteLattice:
    """Generators from a directory of ``*.dfa`` files or a manifest file.

    Manifest lines: ``alphabet: <letters>``, ``dfa: <path>`` (relative to the
    manifest), ``regex: <pattern>``; blank lines and ``#`` comments ignored.
    """
    path = Path(path)
    gens: list[Dfa] = []
    if path.is_dir():
        files = sorted(path.glob("*.dfa"))
        if not files:
            raise FormatError(f"no *.dfa files in {path}")
        gens = [Dfa.from_text(f.read_text(encoding="utf-8")) for f in files]
    elif path.is_file():
        regexes = []
        for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition(":")
            key, value = key.strip(), value.strip()
            if not sep or key not in ("alphabet", "dfa", "regex"):
                raise FormatError(f"{path}:{lineno}: expected 'alphabet:', 'dfa:' or 'regex:'")
            if key == "alphabet":
                alphabet = Alphabet.of(value.replace(" ", ""))
            elif key == "dfa":
                gens.append(Dfa.from_text((path.parent / value).read_text(encoding="utf-8")))
            else:
                regexes.append(value)
        if regexes:
            if alphabet is None:
                alphabet = gens[0].alphabet if gens else None
            if alphabet is None:
                raise FormatError(f"{path}: regex entries need an 'alphabet:' line")
            gens.extend(Dfa.from_regex(r, alphabet) for r in regexes)
        if not gens:
            raise FormatError(f"{path}: no generators")
    else:
        raise FormatError(f"lattice path {path} does not exist")
    if alphabet is not None:
        for g in gens:
            if g.alphabet != alphabet:
                raise AlphabetError(f"lattice generator over {str(g.alphabet)!r}, expected {str(alphabet)!r}")
    return saturate_lattice(gens)


def class_from_spec(spec: str, alphabet: Alphabet) -> BaseClass:
    """``st``, ``at`` or ``lattice:<path>``."""
    low = spec.lower()
    if low == "st":
        return StClass(alphabet)
    if low == "at":
        return AtClass(alphabet)
    if low.startswith("lattice:"):
        lattice = load_lattice(spec[len("lattice:") :], alphabet)
        return LatticeClass(lattice, name=spec)
    raise PolcError(f"unknown class {spec!r}; expected st, at or lattice:<path>")
