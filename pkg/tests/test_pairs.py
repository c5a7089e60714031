import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import AB, is_alphabet_testable, words_upto
from polc.algebra import is_upper_set, syntactic
from polc.automata import Dfa
from polc.baseclass import AtClass, Checked, LatticeClass, StClass, saturate_lattice
from polc.errors import ResourceLimitError
from polc.generators import fixture, fixture_names, random_dfa
from polc.pairs import (
    PairRelation,
    check_relation_laws,
    compute_pairs,
    compute_saturated,
    machine_pairs,
    upper_set_duality_failures,
)


def sd_of(pattern):
    return syntactic(Dfa.from_regex(pattern, AB))


def by_name(sd, rel):
    m = sd.morphism
    return {(m.name(s), m.name(t)) for s, t in rel.pairs()}


def brute_at_pairs(m, max_len=6):
    """(s, t) is an AT-pair iff some words mapping to s and t share their letter set."""
    profiles = [set() for _ in range(m.size)]
    for w in words_upto("".join(m.alphabet.letters), max_len):
        profiles[m.evaluate(w)].add(frozenset(w))
    return np.array([[bool(profiles[s] & profiles[t]) for t in range(m.size)] for s in range(m.size)])


class TestPlain:
    def test_st_all_pairs(self):
        sd = sd_of("(a|b)*a(a|b)*")
        assert compute_pairs(sd.morphism, StClass(AB)).bits.all()

    def test_at_diagonal(self):
        sd = sd_of("(a|b)*a(a|b)*")
        assert by_name(sd, compute_pairs(sd.morphism, AtClass(AB))) == {("ε", "ε"), ("a", "a")}

    def test_at_ab_star(self):
        sd = sd_of("(ab)*")
        names = by_name(sd, compute_pairs(sd.morphism, AtClass(AB)))
        assert ("ab", "ba") in names and ("ab", "a") in names

    @pytest.mark.parametrize("name", fixture_names())
    def test_at_against_brute_force(self, name):
        m = syntactic(fixture(name)).morphism
        assert np.array_equal(compute_pairs(m, AtClass(AB)).bits, brute_at_pairs(m))

    @pytest.mark.parametrize("name", fixture_names())
    @pytest.mark.parametrize("cls", ["st", "at", "lattice"])
    def test_shortcut_equals_separation(self, name, cls):
        oracle = {
            "st": StClass(AB),
            "at": AtClass(AB),
            "lattice": LatticeClass(saturate_lattice([fixture("b-star"), fixture("infix-ab")])),
        }[cls]
        m = syntactic(fixture(name)).morphism
        checked = Checked(oracle)
        slow = compute_pairs(m, checked, via="separate")
        assert checked.calls == m.size**2
        assert compute_pairs(m, oracle) == slow

    def test_not_symmetric_in_general(self):
        lat = LatticeClass(saturate_lattice([fixture("b-star")]))
        m = syntactic(fixture("b-star")).morphism
        r = compute_pairs(m, lat)
        assert not np.array_equal(r.bits, r.bits.T)


class TestSaturated:
    def test_examples(self):
        sd = sd_of("(a|b)*a(a|b)*")
        sat = compute_saturated(sd.morphism, AtClass(AB), "by_membership")
        assert by_name(sd, sat) == {("ε", "ε"), ("a", "a")}
        for name in fixture_names():
            m = syntactic(fixture(name)).morphism
            for method in ("by_membership", "by_closure"):
                assert compute_saturated(m, StClass(AB), method).bits.all()

    @pytest.mark.parametrize("name", fixture_names())
    def test_methods_agree(self, name):
        m = syntactic(fixture(name)).morphism
        for oracle in (AtClass(AB), LatticeClass(saturate_lattice([fixture("b-star")]))):
            a = compute_saturated(m, oracle, "by_membership")
            b = compute_saturated(m, oracle, "by_closure")
            assert np.array_equal(a.bits, b.bits)

    def test_subset_cap(self):
        m = sd_of("(ab)*").morphism
        with pytest.raises(ResourceLimitError, match="by_closure"):
            compute_saturated(m, AtClass(AB), "by_membership", subset_cap=4)

    @pytest.mark.parametrize("name", fixture_names())
    def test_upper_set_duality_with_brute_force_membership(self, name):
        m = syntactic(fixture(name)).morphism
        sat = compute_saturated(m, AtClass(AB), "by_closure")
        assert upper_set_duality_failures(m, AtClass(AB), sat) == []
        for mask in range(1 << m.size):
            f = [s for s in range(m.size) if mask >> s & 1]
            assert is_alphabet_testable(m.preimage(f), 6) == is_upper_set(f, sat.bits)


class TestLaws:
    def test_full_relation(self):
        m = sd_of("(ab)*").morphism
        full = PairRelation(np.ones((6, 6), dtype=bool), "saturated")
        assert check_relation_laws(full, m).ok

    def test_detects_failures(self):
        m = sd_of("(ab)*").morphism
        odd = np.eye(6, dtype=bool)
        odd[1, 2] = True
        rep = check_relation_laws(PairRelation(odd, "saturated"), m)
        assert "multiplicative" in rep.failures
        odd[0, 0] = False
        assert "reflexive" in check_relation_laws(PairRelation(odd), m).failures

    @pytest.mark.parametrize("name", fixture_names())
    def test_fixtures(self, name):
        m = syntactic(fixture(name)).morphism
        for oracle in (StClass(AB), AtClass(AB)):
            plain = compute_pairs(m, oracle)
            sat = compute_saturated(m, oracle, "by_closure", plain)
            assert check_relation_laws(plain, m).ok
            assert check_relation_laws(sat, m, plain).ok


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from(["st", "at"]))
def test_random_laws(seed, cls):
    lang = random_dfa(random.Random(seed), 4)
    sd = syntactic(lang)
    if sd.size > 60:
        return
    oracle = (StClass if cls == "st" else AtClass)(lang.alphabet)
    plain = compute_pairs(sd.morphism, oracle)
    sat = compute_saturated(sd.morphism, oracle, "by_closure", plain)
    assert check_relation_laws(plain, sd.morphism).ok
    assert check_relation_laws(sat, sd.morphism, plain).ok
    if sd.size <= 8:
        assert sat == compute_saturated(sd.morphism, oracle, "by_membership")


def test_machine_lines():
    sd = sd_of("(a|b)*a(a|b)*")
    assert machine_pairs(compute_pairs(sd.morphism, AtClass(AB)), sd.morphism) == ["ε -> ε", "a -> a"]
