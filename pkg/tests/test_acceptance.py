"""Acceptance criteria, one test per criterion, numbered 1 to 12.

The terminal summary (see ``conftest.py``) prints a PASS/FAIL line for each.
"""

import io
import random
import time
from functools import lru_cache

import numpy as np
from oracles import is_alphabet_testable
from polc.algebra import is_upper_set, syntactic
from polc.automata import Dfa, complement, equivalent, is_empty, is_universal, upward_closure
from polc.baseclass import AtClass, LatticeClass, StClass, check_char_property, saturate_lattice
from polc.cli import run
from polc.decide import decide_copol, decide_pol, decide_upol
from polc.errors import InternalInvariantError
from polc.forest import build_forest, height_bound, validate_forest
from polc.generators import FIXTURE_ALPHABET, fixture, fixture_names, random_dfas
from polc.pairs import check_relation_laws, compute_pairs, compute_saturated, upper_set_duality_failures
from polc.witness import synthesize

SEED = 20240601
CLASSES = {"st": StClass, "at": AtClass}


@lru_cache(maxsize=None)
def random_corpus():
    return tuple(random_dfas(SEED, 200, max_states=5))


def st_relations(lang):
    sd = syntactic(lang)
    oracle = StClass(lang.alphabet)
    plain = compute_pairs(sd.morphism, oracle)
    return sd, plain, compute_saturated(sd.morphism, oracle, "by_closure", plain)


def test_criterion_01_pol_st_matches_upward_closure():
    started = time.perf_counter()
    disagreements = []
    for i, lang in enumerate(random_corpus()):
        sd, plain, _ = st_relations(lang)
        if decide_pol(sd, plain).answer != equivalent(lang, upward_closure(lang)):
            disagreements.append(i)
    elapsed = time.perf_counter() - started
    assert disagreements == []
    assert elapsed < 30, f"{elapsed:.1f} s"


def test_criterion_02_copol_st_is_pol_of_complement():
    disagreements = []
    for i, lang in enumerate(random_corpus()):
        sd, plain, _ = st_relations(lang)
        csd, cplain, _ = st_relations(complement(lang))
        if decide_copol(sd, plain).answer != decide_pol(csd, cplain).answer:
            disagreements.append(i)
    assert disagreements == []


def test_criterion_03_upol_st_only_trivial_languages():
    disagreements = []
    for i, lang in enumerate(random_corpus()):
        sd, plain, sat = st_relations(lang)
        if decide_upol(sd, plain, sat).answer != (is_empty(lang) or is_universal(lang)):
            disagreements.append(i)
    assert disagreements == []


@lru_cache(maxsize=None)
def synthesis_runs():
    """(label, result, seconds) for every fixture and small random DFA in Pol(ST) or Pol(AT)."""
    candidates = [(f"fixture {n}", fixture(n)) for n in fixture_names()]
    candidates += [(f"random #{i}", d) for i, d in enumerate(random_corpus())]
    runs = []
    for label, lang in candidates:
        sd = syntactic(lang)
        for cls, make in CLASSES.items():
            oracle = make(lang.alphabet)
            pairs = compute_pairs(sd.morphism, oracle)
            if sd.size > 4 and not label.startswith("fixture"):
                continue
            if not decide_pol(sd, pairs).answer:
                continue
            started = time.perf_counter()
            res = synthesize(sd, oracle, pairs)
            runs.append((f"{label} / {cls}", res, time.perf_counter() - started))
    return runs


def test_criterion_04_witness_round_trip():
    runs = synthesis_runs()
    assert len(runs) > 20
    bad = [label for label, res, _ in runs if not res.verified or res.level > res.bound]
    slow = [(label, round(t, 2)) for label, _, t in runs if t >= 10]
    assert bad == [] and slow == []


def test_criterion_05_level_soundness():
    violations = [
        (label, level)
        for label, res, _ in synthesis_runs()
        for level, ok in enumerate(res.union_sound)
        if not ok
    ]
    assert violations == []


def small_fixtures():
    return [n for n in fixture_names() if syntactic(fixture(n)).size <= 8]


def test_criterion_06_saturated_methods_agree():
    names = small_fixtures()
    assert len(names) == len(fixture_names())
    for name in names:
        m = syntactic(fixture(name)).morphism
        a = compute_saturated(m, AtClass(FIXTURE_ALPHABET), "by_membership")
        b = compute_saturated(m, AtClass(FIXTURE_ALPHABET), "by_closure")
        assert np.array_equal(a.bits, b.bits), name


def test_criterion_07_upper_set_duality():
    disagreements = []
    for name in small_fixtures():
        m = syntactic(fixture(name)).morphism
        sat = compute_saturated(m, AtClass(FIXTURE_ALPHABET), "by_closure")
        # library route and the independent word-level route
        disagreements += [(name, f) for f in upper_set_duality_failures(m, AtClass(FIXTURE_ALPHABET), sat)]
        for mask in range(1 << m.size):
            f = [s for s in range(m.size) if mask >> s & 1]
            if is_alphabet_testable(m.preimage(f), 6) != is_upper_set(f, sat.bits):
                disagreements.append((name, tuple(f)))
    assert disagreements == []


def test_criterion_08_relation_laws():
    instances = [(fixture(n), cls) for n in fixture_names() for cls in CLASSES]
    rng = random.Random(SEED)
    corpus = [d for d in random_corpus() if syntactic(d).size <= 40]
    instances += [(rng.choice(corpus), rng.choice(list(CLASSES))) for _ in range(50)]
    failures = []
    for lang, cls in instances:
        m = syntactic(lang).morphism
        oracle = CLASSES[cls](lang.alphabet)
        plain = compute_pairs(m, oracle)
        sat = compute_saturated(m, oracle, "by_closure", plain)
        p, s = check_relation_laws(plain, m), check_relation_laws(sat, m, plain)
        if not (p.checks["reflexive"] and p.checks["multiplicative"] and s.ok):
            failures.append((lang.to_text(), cls, p.failures, s.failures))
    assert len(instances) == 2 * len(fixture_names()) + 50
    assert failures == []


def test_criterion_09_factorization_forests():
    rng = random.Random(SEED)
    worst = {}
    for name in fixture_names():
        m = syntactic(fixture(name)).morphism
        bound = height_bound(m)
        top = 0
        for _ in range(500):
            w = "".join(rng.choice("ab") for _ in range(rng.randint(0, 50)))
            rep = validate_forest(build_forest(m, w), m, w)
            assert rep.valid, (name, w, rep.failures)
            assert rep.height <= bound, (name, w)
            top = max(top, rep.height)
        worst[name] = top
    assert syntactic(fixture("ab-star")).size == 6
    assert worst["ab-star"] <= 17


def test_criterion_10_characteristic_property():
    failures = []
    for name in ("some-a", "b-star", "all"):
        lang = fixture(name)
        lattice = saturate_lattice([lang])
        oracle = LatticeClass(lattice)
        sd = syntactic(lang)
        pairs = compute_pairs(sd.morphism, oracle)
        assert decide_pol(sd, pairs).answer, name
        res = synthesize(sd, oracle, pairs)
        rep = check_char_property(lang, lattice, res.expression, samples=200, seed=SEED)
        assert rep.samples == 200
        failures += [(name, v) for v in rep.violations]
    assert failures == []


def test_criterion_11_no_internal_errors():
    codes = []
    for name in fixture_names():
        lang = fixture(name)
        for cls in CLASSES:
            sd = syntactic(lang)
            oracle = CLASSES[cls](lang.alphabet)
            plain = compute_pairs(sd.morphism, oracle)
            sat = compute_saturated(sd.morphism, oracle, "by_membership")
            try:
                decide_pol(sd, plain), decide_copol(sd, plain), decide_upol(sd, plain, sat)
            except InternalInvariantError as exc:
                codes.append((name, cls, str(exc)))
    for lang in random_corpus():
        for cls in CLASSES:
            sd = syntactic(lang)
            oracle = CLASSES[cls](lang.alphabet)
            plain = compute_pairs(sd.morphism, oracle)
            try:
                decide_upol(sd, plain, compute_saturated(sd.morphism, oracle, "by_closure", plain))
                decide_pol(sd, plain), decide_copol(sd, plain)
            except InternalInvariantError as exc:
                codes.append((lang.to_text(), cls, str(exc)))
    from polc.generators import FIXTURES

    for pattern in FIXTURES.values():
        for cls in ("st", "at"):
            for level in ("pol", "copol", "upol"):
                argv = ["decide", "--class", cls, "--level", level, "--regex", pattern, "--alphabet", "ab"]
                codes.append(run(argv, io.StringIO(), io.StringIO()))
            codes.append(run(["pairs", "--class", cls, "--regex", pattern, "--alphabet", "ab"], io.StringIO(), io.StringIO()))
            codes.append(run(["witness", "--class", cls, "--regex", pattern, "--alphabet", "ab"], io.StringIO(), io.StringIO()))
        codes.append(run(["forest", "--regex", pattern, "--alphabet", "ab", "--word", "abbaab"], io.StringIO(), io.StringIO()))
    codes.append(run(["laws", "--suite", "all", "--samples", "30"], io.StringIO(), io.StringIO()))
    assert 4 not in codes and all(not isinstance(c, tuple) for c in codes)


def test_criterion_12_golden_fixtures():
    sd = syntactic(Dfa.from_regex("(ab)*", "ab"))
    assert (sd.size, sd.monoid.omega, len(sd.morphism.accepting), len(sd.monoid.idempotents())) == (6, 2, 2, 4)
    sd = syntactic(Dfa.from_regex("(a|b)*a(a|b)*", "ab"))
    assert (sd.size, sd.monoid.omega) == (2, 1)
