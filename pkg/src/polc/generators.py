"""Seeded random inputs and the fixture languages used by tests and law suites."""

from __future__ import annotations

import random

import numpy as np

from .algebra import OrderedMonoid, syntactic
from .automata import Alphabet, Dfa, minimize

FIXTURE_ALPHABET = Alphabet.of("ab")

FIXTURES: dict[str, str] = {
    "some-a": "(a|b)*a(a|b)*",
    "b-star": "b*",
    "ab-star": "(ab)*",
    "all": "(a|b)*",
    "starts-a": "a(a|b)*",
    "infix-ab": "(a|b)*ab(a|b)*",
    "a-star-b-star": "a*b*",
    "epsilon": "()",
    "ends-a": "(a|b)*a",
    "even-a": "(aa)*",
}

ALPHABETS = ("a", "ab", "abc")


def fixture(name: str) -> Dfa:
    if name == "empty":
        return Dfa.empty(FIXTURE_ALPHABET)
    return Dfa.from_regex(FIXTURES[name], FIXTURE_ALPHABET)


def fixture_names() -> list[str]:
    return [*FIXTURES, "empty"]


def random_dfa(rng: random.Random, max_states: int = 5, alphabets: tuple[str, ...] = ALPHABETS) -> Dfa:
    """Minimal DFA obtained by minimizing a random complete DFA."""
    alphabet = Alphabet.of(rng.choice(alphabets))
    n = rng.randint(1, max_states)
    delta = tuple(tuple(rng.randrange(n) for _ in alphabet) for _ in range(n))
    finals = frozenset(q for q in range(n) if rng.random() < 0.5)
    return minimize(Dfa(alphabet, delta, 0, finals))


def random_dfas(seed: int, count: int, max_states: int = 5) -> list[Dfa]:
    rng = random.Random(seed)
    return [random_dfa(rng, max_states) for _ in range(count)]


def random_regex(rng: random.Random, letters: str, depth: int = 5) -> str:
    if depth <= 0 or rng.random() < 0.25:
        return rng.choice([*letters, "()"])
    kind = rng.choice(["union", "concat", "star"])
    if kind == "star":
        return f"({random_regex(rng, letters, depth - 1)})*"
    left = random_regex(rng, letters, depth - 1)
    right = random_regex(rng, letters, depth - 1)
    return f"({left}|{right})" if kind == "union" else f"({left})({right})"


def random_word(rng: random.Random, letters: str, max_len: int) -> str:
    return "".join(rng.choice(letters) for _ in range(rng.randint(0, max_len)))


def multiplicative_closure(monoid_table: np.ndarray, rel: np.ndarray) -> np.ndarray:
    """Least reflexive relation containing ``rel`` closed under componentwise products."""
    n = len(rel)
    out = rel.copy()
    out[np.arange(n), np.arange(n)] = True
    while True:
        s, t = np.nonzero(out)
        # products (s1 s2, t1 t2) over all pairs of related pairs
        prod_s = monoid_table[s[:, None], s[None, :]].ravel()
        prod_t = monoid_table[t[:, None], t[None, :]].ravel()
        nxt = out.copy()
        nxt[prod_s, prod_t] = True
        if np.array_equal(nxt, out):
            return out
        out = nxt


def random_ordered_monoid(rng: random.Random, max_size: int = 6, tries: int = 200) -> OrderedMonoid:
    """Syntactic ordered monoid of a random small DFA with at most ``max_size`` elements."""
    for _ in range(tries):
        sd = syntactic(random_dfa(rng, 4, ("a", "ab")))
        if sd.size <= max_size:
            return sd.morphism.codomain
    return syntactic(Dfa.universal(Alphabet.of("a"))).morphism.codomain


def random_compatible_relation(rng: random.Random, om: OrderedMonoid, density: float = 0.15) -> np.ndarray:
    n = om.monoid.size
    seed_rel = np.array([[rng.random() < density for _ in range(n)] for _ in range(n)], dtype=bool)
    return multiplicative_closure(om.monoid.table, seed_rel)
