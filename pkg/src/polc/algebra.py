"""Finite (ordered) monoids, morphisms from A*, and syntactic ordered monoids.

The syntactic monoid of a language is computed as the transition monoid of
its minimal DFA.  Elements are numbered in shortlex order of their least
representative word, so element 0 is always the neutral element.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import lcm
from typing import Iterable

import numpy as np

from . import _kernels
from .automata import Alphabet, Dfa, minimize
from .errors import InternalInvariantError, ResourceLimitError

DEFAULT_MONOID_CAP = 5000


@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    table: np.ndarray
    neutral: int = 0

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.size

    @cached_property
    def rows(self) -> list[list[int]]:
        return self.table.tolist()

    def mul(self, s: int, t: int) -> int:
        return self.rows[s][t]

    def product(self, elements: Iterable[int]) -> int:
        out = self.neutral
        rows = self.rows
        for s in elements:
            out = rows[out][s]
        return out

    def power(self, s: int, k: int) -> int:
        out = self.neutral
        rows = self.rows
        for _ in range(k):
            out = rows[out][s]
        return out

    @cached_property
    def omega(self) -> int:
        return idempotent_power(self)

    @cached_property
    def is_idempotent(self) -> np.ndarray:
        idx = np.arange(self.size)
        return self.table[idx, idx] == idx

    @cached_property
    def omega_powers(self) -> np.ndarray:
        """``s^omega`` for every ``s``."""
        return np.array([self.power(s, self.omega) for s in range(self.size)], dtype=np.int32)

    def idempotents(self) -> list[int]:
        return [int(e) for e in np.flatnonzero(self.is_idempotent)]

    def law_failures(self) -> list[str]:
        """Associativity and two-sided identity, checked over the full table."""
        t = self.table
        out = []
        left = t[t[:, :, None], np.arange(self.size)[None, None, :]]  # (st)u
        right = t[np.arange(self.size)[:, None, None], t[None, :, :]]  # s(tu)
        if not np.array_equal(left, right):
            out.append("associativity")
        idx = np.arange(self.size)
        if not (np.array_equal(t[self.neutral], idx) and np.array_equal(t[:, self.neutral], idx)):
            out.append("neutral element")
        return out


def idempotent_power(monoid: FiniteMonoid) -> int:
    """Least ``k >= 1`` such that ``s^k`` is idempotent for every ``s``."""
    max_index = 1
    period = 1
    rows = monoid.rows
    for s in range(monoid.size):
        seen = {}
        x, k = s, 1
        while x not in seen:
            seen[x] = k
            x = rows[x][s]
            k += 1
        index = seen[x]
        max_index = max(max_index, index)
        period = lcm(period, k - index)
    return period * max(1, -(-max_index // period))


def idempotents(monoid: FiniteMonoid) -> list[int]:
    return monoid.idempotents()


@dataclass(frozen=True, eq=False)
class OrderedMonoid:
    monoid: FiniteMonoid
    leq: np.ndarray

    def law_failures(self) -> list[str]:
        leq = self.leq
        out = []
        if not leq.diagonal().all():
            out.append("reflexivity")
        if (leq & leq.T & ~np.eye(len(leq), dtype=bool)).any():
            out.append("antisymmetry")
        if not is_transitive(leq):
            out.append("transitivity")
        if not is_compatible(self.monoid, leq):
            out.append("compatibility")
        return out


def is_transitive(rel: np.ndarray) -> bool:
    r = rel.astype(np.int64)
    return not ((r @ r > 0) & ~rel).any()


def is_compatible(monoid: FiniteMonoid, rel: np.ndarray) -> bool:
    """``s1 R t1`` and ``s2 R t2`` imply ``s1 s2 R t1 t2`` (exhaustive)."""
    t = monoid.table
    for s1, t1 in zip(*np.nonzero(rel)):
        if (rel & ~rel[t[s1][:, None], t[t1][None, :]]).any():
            return False
    return True


def is_upper_set(subset: Iterable[int], leq: np.ndarray) -> bool:
    f = np.zeros(len(leq), dtype=bool)
    f[list(subset)] = True
    return not (leq[f] & ~f[None, :]).any()


# --------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True, eq=False)
class Morphism:
    """Surjective morphism A* -> M given by letter images, with an accepting set."""

    alphabet: Alphabet
    codomain: FiniteMonoid | OrderedMonoid
    letter_image: tuple[int, ...]
    representatives: tuple[str, ...]
    accepting: frozenset[int]

    @property
    def monoid(self) -> FiniteMonoid:
        c = self.codomain
        return c.monoid if isinstance(c, OrderedMonoid) else c

    @property
    def order(self) -> np.ndarray | None:
        c = self.codomain
        return c.leq if isinstance(c, OrderedMonoid) else None

    @property
    def size(self) -> int:
        return self.monoid.size

    @property
    def neutral(self) -> int:
        return self.monoid.neutral

    def name(self, s: int) -> str:
        return self.representatives[s] or "ε"

    def image(self, letter: str) -> int:
        return self.letter_image[self.alphabet.index(letter)]

    def evaluate(self, word: str) -> int:
        self.alphabet.check_word(word)
        rows = self.monoid.rows
        index = self.alphabet.index
        s = self.monoid.neutral
        for a in word:
            s = rows[s][self.letter_image[index(a)]]
        return s

    def leq(self, s: int, t: int) -> bool:
        order = self.order
        if order is None:
            return s == t
        return bool(order[s, t])

    def automaton(self, accepting: Iterable[int] | None = None) -> Dfa:
        """The morphism as a (non-minimized) DFA over its elements."""
        rows = self.monoid.rows
        delta = tuple(tuple(rows[s][x] for x in self.letter_image) for s in range(self.size))
        finals = self.accepting if accepting is None else frozenset(accepting)
        return Dfa(self.alphabet, delta, self.monoid.neutral, frozenset(finals))

    def preimage(self, elements: Iterable[int]) -> Dfa:
        """Minimal DFA of ``alpha^{-1}(elements)``."""
        return minimize(self.automaton(elements))

    @cached_property
    def element_preimages(self) -> tuple[Dfa, ...]:
        return tuple(self.preimage([s]) for s in range(self.size))

    def check_surjective(self) -> None:
        for s, w in enumerate(self.representatives):
            if self.evaluate(w) != s:
                raise InternalInvariantError(f"representative {w!r} does not evaluate to element {s}")


def morphism_from_dfa(dfa: Dfa, cap: int = DEFAULT_MONOID_CAP) -> tuple[Morphism, np.ndarray]:
    """Transition morphism of ``dfa`` (unordered) and the transformation of each element."""
    gens = [[dfa.delta[q][a] for q in range(dfa.n)] for a in range(len(dfa.alphabet))]
    result = _kernels.enumerate_transformations(gens, dfa.n, cap)
    if result is None:
        raise ResourceLimitError("transition monoid size", cap)
    transforms, parent, via, right = result
    table = _kernels.fill_table(right, parent, via)
    letters = dfa.alphabet.letters
    reps = [""]
    for j in range(1, len(parent)):
        reps.append(reps[parent[j]] + letters[via[j]])
    accepting = frozenset(int(s) for s in np.flatnonzero(np.isin(transforms[:, dfa.initial], list(dfa.finals))))
    m = Morphism(
        dfa.alphabet,
        FiniteMonoid(table, 0),
        tuple(int(x) for x in right[0]),
        tuple(reps),
        accepting,
    )
    return m, transforms


def right_language_inclusion(dfa: Dfa) -> np.ndarray:
    """``inc[p, q]`` iff every word accepted from ``p`` is accepted from ``q``."""
    n = dfa.n
    final = np.zeros(n, dtype=bool)
    final[list(dfa.finals)] = True
    inc = ~(final[:, None] & ~final[None, :])
    delta = np.array(dfa.delta, dtype=np.int64).reshape(n, len(dfa.alphabet))
    while True:
        nxt = inc.copy()
        for a in range(delta.shape[1]):
            col = delta[:, a]
            nxt &= inc[col[:, None], col[None, :]]
        if np.array_equal(nxt, inc):
            return inc
        inc = nxt


@dataclass(frozen=True, eq=False)
class SyntacticData:
    morphism: Morphism
    source: Dfa

    @property
    def monoid(self) -> FiniteMonoid:
        return self.morphism.monoid

    @property
    def order(self) -> np.ndarray:
        return self.morphism.order

    @property
    def accepting(self) -> frozenset[int]:
        return self.morphism.accepting

    @property
    def size(self) -> int:
        return self.morphism.size

    def leq(self, s: int, t: int) -> bool:
        return bool(self.morphism.order[s, t])


def syntactic(lang: Dfa, cap: int = DEFAULT_MONOID_CAP) -> SyntacticData:
    """Syntactic morphism, ordered monoid and accepting set of ``lang``.

    For a minimal DFA every state is ``x(q0)`` for some element ``x``, and
    the contexts ``y`` accepted from a state form its right language, so the
    syntactic order ``s <= t`` reduces to right-language inclusion of
    ``q.s`` in ``q.t`` at every state ``q``.
    """
    lang = minimize(lang)
    m, transforms = morphism_from_dfa(lang, cap)
    leq = _kernels.order_from_transforms(transforms, right_language_inclusion(lang))
    ordered = Morphism(m.alphabet, OrderedMonoid(m.monoid, leq), m.letter_image, m.representatives, m.accepting)
    return SyntacticData(ordered, lang)


def ordered_by_definition(m: Morphism) -> np.ndarray:
    """Order (in general a preorder) induced by ``m.accepting``, straight from the definition."""
    acc = np.zeros(m.size, dtype=bool)
    acc[list(m.accepting)] = True
    return _kernels.order_by_definition(m.monoid.table, acc)


def evaluate(m: Morphism, word: str) -> int:
    return m.evaluate(word)


def monoid_report(sd: SyntacticData) -> str:
    m = sd.morphism
    mon = m.monoid
    names = [m.name(s) for s in range(m.size)]
    width = max(len(x) for x in names)
    lines = [f"elements: {m.size}", f"omega: {mon.omega}"]
    for s, name in enumerate(names):
        lines.append(f"  [{s}] {name}")
    lines.append("table:")
    lines.append("  " + " " * width + " | " + " ".join(x.rjust(width) for x in names))
    for s, name in enumerate(names):
        lines.append("  " + name.rjust(width) + " | " + " ".join(names[t].rjust(width) for t in mon.rows[s]))
    order_pairs = [
        f"{names[s]} <= {names[t]}" for s in range(m.size) for t in range(m.size) if s != t and sd.order[s, t]
    ]
    lines.append("order: " + (", ".join(order_pairs) if order_pairs else "(discrete)"))
    lines.append("idempotents: " + ", ".join(names[e] for e in mon.idempotents()))
    lines.append("accepting: " + (", ".join(names[s] for s in sorted(m.accepting)) or "(none)"))
    return "\n".join(lines)
