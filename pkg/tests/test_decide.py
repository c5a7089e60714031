import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import AB
from polc.algebra import syntactic
from polc.automata import Dfa, complement, equivalent, upward_closure
from polc.baseclass import AtClass, StClass
from polc.decide import decide, decide_copol, decide_pol, decide_upol, equation_failures
from polc.errors import InternalInvariantError, PolcError
from polc.generators import fixture, fixture_names, random_compatible_relation, random_ordered_monoid
from polc.pairs import PairRelation, compute_pairs, compute_saturated


def setup(pattern, cls=StClass):
    sd = syntactic(Dfa.from_regex(pattern, AB) if isinstance(pattern, str) else pattern)
    return sd, compute_pairs(sd.morphism, cls(AB))


def is_violation(sd, v, level):
    """Recompute the reported inequality from scratch on the table."""
    mon = sd.monoid
    e = mon.power(v.s, mon.omega)
    lhs = mon.mul(e, v.s)
    rhs = mon.product([e, v.t, e])
    assert (lhs, rhs) == (v.lhs, v.rhs)
    assert sd.morphism.evaluate(v.s_word) == v.s and sd.morphism.evaluate(v.t_word) == v.t
    if level == "pol":
        return not sd.leq(lhs, rhs)
    if level == "copol":
        return not sd.leq(rhs, lhs)
    return lhs != rhs


class TestPol:
    def test_some_a(self):
        assert decide_pol(*setup("(a|b)*a(a|b)*")).answer

    def test_ab_star(self):
        sd, p = setup("(ab)*")
        v = decide_pol(sd, p)
        assert not v.answer
        assert is_violation(sd, v.violation, "pol")
        # (ab, a) also violates: ab.a.ab = aa and ab is not below aa
        m = sd.morphism
        ab, a = m.evaluate("ab"), m.evaluate("a")
        assert equation_failures(sd.monoid, sd.order, p.bits, "pol", 3)[ab, a]

    def test_first_violation_in_shortlex_order(self):
        sd, p = setup("(ab)*")
        v = decide_pol(sd, p).violation
        assert (v.s_word, v.t_word) == ("", "a")

    def test_universal(self):
        sd = syntactic(Dfa.universal(AB))
        for rel in (np.ones((1, 1), dtype=bool),):
            assert decide_pol(sd, PairRelation(rel)).answer


class TestCoPol:
    def test_b_star(self):
        assert decide_copol(*setup("b*")).answer

    def test_ab_star(self):
        sd, p = setup("(ab)*")
        v = decide_copol(sd, p)
        assert not v.answer
        assert (v.violation.s_word, v.violation.t_word) == ("", "a")
        assert is_violation(sd, v.violation, "copol")

    def test_empty(self):
        sd = syntactic(Dfa.empty(AB))
        assert decide_copol(sd, compute_pairs(sd.morphism, AtClass(AB))).answer


class TestUPol:
    def test_at(self):
        sd, p = setup("(a|b)*a(a|b)*", AtClass)
        assert decide_upol(sd, p, compute_saturated(sd.morphism, AtClass(AB), "by_closure", p)).answer

    def test_st(self):
        sd, p = setup("(a|b)*a(a|b)*")
        v = decide_upol(sd, p, compute_saturated(sd.morphism, StClass(AB), "by_closure", p))
        assert not v.answer and is_violation(sd, v.violation, "upol")

    def test_universal(self):
        sd = syntactic(Dfa.universal(AB))
        p = compute_pairs(sd.morphism, StClass(AB))
        assert decide_upol(sd, p, p).answer


def test_size_mismatch():
    sd, _ = setup("(ab)*")
    with pytest.raises(PolcError):
        decide(sd, "pol", PairRelation(np.ones((2, 2), dtype=bool)))


def test_unknown_level():
    sd, p = setup("b*")
    with pytest.raises(PolcError):
        decide(sd, "bpol", p)


def test_disagreeing_upol_forms_trip_the_self_check():
    # feed a saturated relation that is not the closure of the plain one
    sd, p = setup("(a|b)*a(a|b)*", AtClass)
    with pytest.raises(InternalInvariantError):
        decide_upol(sd, p, PairRelation(np.ones((2, 2), dtype=bool), "saturated"))


@pytest.mark.parametrize("name", fixture_names())
@pytest.mark.parametrize("cls", [StClass, AtClass])
def test_fixture_consistency(name, cls):
    lang = fixture(name)
    sd, p = setup(lang, cls)
    sdc = syntactic(complement(lang))
    pc = compute_pairs(sdc.morphism, cls(AB))
    pol, copol = decide_pol(sd, p), decide_copol(sd, p)
    assert copol.answer == decide_pol(sdc, pc).answer
    sat = compute_saturated(sd.morphism, cls(AB), "by_closure", p)
    assert decide_upol(sd, p, sat).answer == (pol.answer and copol.answer)
    for v, level in ((pol, "pol"), (copol, "copol")):
        if v.violation is not None:
            assert is_violation(sd, v.violation, level)


@pytest.mark.parametrize("name", fixture_names())
def test_pol_st_is_upward_closure(name):
    lang = fixture(name)
    assert decide_pol(*setup(lang)).answer == equivalent(lang, upward_closure(lang))


@pytest.mark.parametrize("name", fixture_names())
def test_monotone_in_class(name):
    sd, st_pairs = setup(fixture(name))
    at_pairs = compute_pairs(sd.morphism, AtClass(AB))
    assert not (at_pairs.bits & ~st_pairs.bits).any()
    if decide_pol(sd, st_pairs).answer:
        assert decide_pol(sd, at_pairs).answer


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([0.05, 0.15, 0.3]))
def test_forms_agree_on_random_compatible_relations(seed, density):
    rng = random.Random(seed)
    om = random_ordered_monoid(rng)
    rel = random_compatible_relation(rng, om, density)
    for level in ("pol", "copol"):
        general = equation_failures(om.monoid, om.leq, rel, level, 2).any()
        idem = equation_failures(om.monoid, om.leq, rel, level, 3).any()
        assert general == idem
