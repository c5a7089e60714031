import random
from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from polc.algebra import syntactic
from polc.automata import Dfa
from polc.forest import (
    Binary,
    Idempotent,
    Leaf,
    build_forest,
    dump,
    evaluate_forest,
    height,
    height_bound,
    label,
    validate_forest,
)
from polc.generators import fixture, fixture_names, random_dfa, random_word


def brute_min_height(m, w):
    """Least forest height by direct recursion over all splittings (small words only)."""
    mon = m.monoid

    @lru_cache(maxsize=None)
    def best(a, b):
        if b - a == 1:
            return 0
        h = min(max(best(a, k), best(k, b)) + 1 for k in range(a + 1, b))
        v = m.evaluate(w[a:b])
        if mon.is_idempotent[v]:
            h = min(h, blocks(a, b, v) + 1)
        return h

    @lru_cache(maxsize=None)
    def blocks(a, b, e):
        # chains of >= 2 blocks from a to b, each mapping to e
        out = float("inf")
        for k in range(a + 1, b):
            if m.evaluate(w[a:k]) == e:
                rest = best(k, b) if m.evaluate(w[k:b]) == e else float("inf")
                out = min(out, max(best(a, k), min(rest, blocks(k, b, e))))
        return out

    return 0 if len(w) <= 1 else best(0, len(w))


def fixture_morphism(name):
    return syntactic(fixture(name)).morphism


def test_ab_star_example():
    m = fixture_morphism("ab-star")
    f = build_forest(m, "abababab")
    rep = validate_forest(f, m, "abababab")
    assert rep.valid and rep.height <= height_bound(m)
    assert isinstance(f, Idempotent) and height(f) == 2
    assert label(f) == "abababab"


def test_short_words():
    m = fixture_morphism("some-a")
    assert build_forest(m, "") == Leaf("")
    assert build_forest(m, "b") == Leaf("b")
    assert isinstance(build_forest(m, "ab"), Binary)


@pytest.mark.parametrize("name", fixture_names())
def test_optimal_height(name):
    m = fixture_morphism(name)
    rng = random.Random(name)
    for _ in range(30):
        w = random_word(rng, "ab", 9)
        f = build_forest(m, w)
        rep = validate_forest(f, m, w)
        assert rep.valid, rep.failures
        assert rep.height == brute_min_height(m, w)


def test_validation_catches_bad_forests():
    m = fixture_morphism("ab-star")
    ab = m.evaluate("ab")
    bad = Idempotent((Leaf("a"), Leaf("b")), ab)
    assert not validate_forest(bad, m, "ab").valid
    assert not validate_forest(Binary(Leaf("ab"), Leaf("a")), m, "aba").valid
    assert not validate_forest(Binary(Leaf("a"), Leaf("b")), m, "ba").valid
    single = Idempotent((Binary(Leaf("a"), Leaf("b")),), ab)
    assert not validate_forest(single, m, "ab").valid


def test_dump():
    m = fixture_morphism("ab-star")
    text = dump(build_forest(m, "abab"), m)
    assert text.splitlines()[0].endswith("abab -> ab")
    assert "leaf a -> a" in text


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9), st.integers(0, 50))
def test_random_forests(seed, n):
    rng = random.Random(seed)
    lang = random_dfa(rng, 4)
    m = syntactic(lang).morphism
    w = "".join(rng.choice(lang.alphabet.letters) for _ in range(n))
    f = build_forest(m, w)
    rep = validate_forest(f, m, w)
    assert rep.valid, rep.failures
    assert rep.height <= height_bound(m)
    assert evaluate_forest(f, m) == m.evaluate(w)
