"""Seeded law suites exercising the algebraic facts the decision procedures rely on.

Every case is deterministic given the seed; a failure records enough to
reproduce it (seed, inputs, expected and actual).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .algebra import syntactic
from .automata import Alphabet, Dfa, complement, words
from .baseclass import (
    AtClass,
    BaseClass,
    CanonicalPreorder,
    Checked,
    FiniteLattice,
    LatticeClass,
    StClass,
    check_char_property,
    saturate_lattice,
)
from .decide import decide_copol, decide_pol, decide_upol, equation_failures
from .forest import build_forest, height_bound, validate_forest
from .generators import (
    FIXTURE_ALPHABET,
    fixture,
    fixture_names,
    random_compatible_relation,
    random_dfa,
    random_ordered_monoid,
    random_word,
)
from .pairs import (
    check_relation_laws,
    compute_pairs,
    saturated_by_closure,
    saturated_by_membership,
    upper_set_duality_failures,
)
from .witness import synthesize, verify_witness

SUITES = ("preorder", "period", "charprop", "pairs", "saturated", "equations", "forest", "witness")


@dataclass
class Failure:
    case: str
    seed: int
    inputs: str
    expected: str
    actual: str

    def __str__(self) -> str:
        return f"{self.case} [seed {self.seed}] {self.inputs}: expected {self.expected}, got {self.actual}"


@dataclass
class LawSuiteReport:
    suite: str
    seed: int
    cases: dict[str, int] = field(default_factory=dict)
    failures: list[Failure] = field(default_factory=list)
    notes: dict[str, object] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def count(self, case: str, n: int = 1) -> None:
        self.cases[case] = self.cases.get(case, 0) + n

    def check(self, case: str, cond: bool, inputs: str, expected: str = "true", actual: str = "false") -> None:
        self.count(case)
        if not cond:
            self.failures.append(Failure(case, self.seed, inputs, expected, actual))

    def merge(self, other: "LawSuiteReport") -> None:
        for k, v in other.cases.items():
            self.count(f"{other.suite}: {k}", v)
        self.failures.extend(other.failures)
        for k, v in other.notes.items():
            self.notes[f"{other.suite}: {k}"] = v


def builtin_lattices() -> dict[str, FiniteLattice]:
    a = FIXTURE_ALPHABET
    return {
        "trivial": saturate_lattice([Dfa.universal(a)]),
        "b-star": saturate_lattice([fixture("b-star")]),
        "some-a": saturate_lattice([fixture("some-a")]),
    }


def _classes(alphabet: Alphabet) -> list[BaseClass]:
    return [StClass(alphabet), AtClass(alphabet)]


def _preorder(rep: LawSuiteReport, rng: random.Random, samples: int) -> None:
    for lname, lat in builtin_lattices().items():
        pre = CanonicalPreorder(lat)
        letters = "".join(lat.alphabet.letters)
        pool = list(words(lat.alphabet, 3))
        for _ in range(samples):
            u, v = rng.choice(pool), rng.choice(pool)
            if pre.leq(u, v):
                for i, e in enumerate(lat.elements):
                    rep.check("element is an upper set", not e.accepts(u) or e.accepts(v), f"{lname} #{i} u={u!r} v={v!r}")
            u2, v2 = random_word(rng, letters, 3), random_word(rng, letters, 3)
            if pre.leq(u, u2) and pre.leq(v, v2):
                rep.check("compatible with concatenation", pre.leq(u + v, u2 + v2), f"{lname} {u!r}<={u2!r}, {v!r}<={v2!r}")
        # exact: a language is in the lattice iff it is a union of upper sets of profiles
        for name in fixture_names():
            lang = fixture(name)
            accepted, rejected = set(), set()
            seen = {(0, lang.initial)}
            stack = [(0, lang.initial)]
            while stack:
                p, q = stack.pop()
                (accepted if q in lang.finals else rejected).add(pre.state_profile[p])
                for a in range(len(lat.alphabet)):
                    nxt = (pre.automaton.delta[p][a], lang.delta[q][a])
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
            consistent = not (accepted & rejected)
            upward = consistent and not any(x & ~y == 0 for x in accepted for y in rejected)
            rep.check(
                "membership iff upward closed", upward == (lang in lat), f"{lname} / {name}",
                str(lang in lat), str(upward),
            )


def _period(rep: LawSuiteReport, rng: random.Random, samples: int) -> None:
    lats = dict(builtin_lattices())
    lats["ab-star"] = saturate_lattice([fixture("ab-star")])
    for lname, lat in lats.items():
        pre = CanonicalPreorder(lat)
        p = pre.period
        rep.notes[f"period {lname}"] = p
        letters = "".join(lat.alphabet.letters)
        for _ in range(samples):
            w = random_word(rng, letters, 4)
            m1, m2 = rng.randint(1, 3), rng.randint(1, 3)
            x, y = w * (p * m1), w * (p * m2)
            rep.check("powers w^(pm) are equivalent", pre.leq(x, y) and pre.leq(y, x), f"{lname} w={w!r} m={m1} m'={m2}")


def _charprop(rep: LawSuiteReport, rng: random.Random, samples: int) -> None:
    a = FIXTURE_ALPHABET
    cases = [
        ("some-a", saturate_lattice([Dfa.universal(a)])),
        ("some-a", saturate_lattice([fixture("some-a")])),
        ("b-star", saturate_lattice([fixture("b-star")])),
        ("all", saturate_lattice([fixture("all")])),
        ("infix-ab", saturate_lattice([Dfa.universal(a)])),
    ]
    for name, lat in cases:
        lang = fixture(name)
        sd = syntactic(lang)
        oracle = LatticeClass(lat)
        pairs = compute_pairs(sd.morphism, oracle)
        if not decide_pol(sd, pairs).answer:
            rep.check("fixture in Pol(lattice)", False, f"{name} / {len(lat)} elements")
            continue
        res = synthesize(sd, oracle, pairs)
        report = check_char_property(lang, lat, res.expression, samples, rng.randrange(1 << 30))
        rep.count("characteristic property sample", report.samples)
        rep.notes[f"h,p {name}/{len(lat)}"] = (report.h, report.p)
        for x, u, v, y, ell in report.violations:
            rep.failures.append(
                Failure("characteristic property", rep.seed, f"{name}: x={x!r} u={u!r} v={v!r} y={y!r} l={ell}", "in L", "not in L")
            )


def _pair_instances(rng: random.Random, samples: int):
    for name in fixture_names():
        lang = fixture(name)
        for c in _classes(lang.alphabet):
            yield name, lang, c
        yield name, lang, LatticeClass(builtin_lattices()["b-star"])
    for i in range(samples):
        lang = random_dfa(rng, 4, ("ab", "abc"))
        c = rng.choice(_classes(lang.alphabet))
        yield f"random #{i} {lang.to_text()!r}", lang, c


def _pairs(rep: LawSuiteReport, rng: random.Random, samples: int) -> None:
    for name, lang, c in _pair_instances(rng, min(samples, 50)):
        sd = syntactic(lang)
        if sd.size > 40:
            continue
        plain = compute_pairs(sd.morphism, c)
        laws = check_relation_laws(plain, sd.morphism)
        for law, ok in laws.checks.items():
            rep.check(f"plain pairs {law}", ok, f"{name} / {c.name}")
        if sd.size <= 12:
            direct = compute_pairs(sd.morphism, Checked(c), via="separate")
            rep.check("pair shortcut matches separation", direct == plain, f"{name} / {c.name}")
        sat = saturated_by_closure(plain)
        for law, ok in check_relation_laws(sat, sd.morphism, plain).checks.items():
            rep.check(f"saturated pairs {law}", ok, f"{name} / {c.name}")


def _saturated(rep: LawSuiteReport, rng: random.Random, samples: int) -> None:
    for name, lang, c in _pair_instances(rng, min(samples, 20)):
        sd = syntactic(lang)
        if sd.size > 8:
            continue
        plain = compute_pairs(sd.morphism, c)
        closed = saturated_by_closure(plain)
        enumerated = saturated_by_membership(sd.morphism, c)
        rep.check("closure equals enumeration", closed == enumerated, f"{name} / {c.name}")
        bad = upper_set_duality_failures(sd.morphism, c, closed)
        rep.check("members are upper sets", not bad, f"{name} / {c.name}", "[]", str([sorted(f) for f in bad]))


def _equations(rep: LawSuiteReport, rng: random.Random, samples: int) -> None:
    for i in range(samples):
        om = random_ordered_monoid(rng)
        rel = random_compatible_relation(rng, om, rng.choice([0.05, 0.15, 0.3]))
        for level in ("pol", "copol"):
            general = equation_failures(om.monoid, om.leq, rel, level, 2).any()
            idem = equation_failures(om.monoid, om.leq, rel, level, 3).any()
            rep.check(f"{level}: forms agree on random relations", general == idem, f"monoid #{i} size {om.monoid.size}")
    for name in fixture_names():
        lang = fixture(name)
        sd = syntactic(lang)
        sdc = syntactic(complement(lang))
        for c in _classes(lang.alphabet):
            p = compute_pairs(sd.morphism, c)
            pc = compute_pairs(sdc.morphism, c)
            pol, copol = decide_pol(sd, p).answer, decide_copol(sd, p).answer
            rep.check("co-Pol is Pol of the complement", copol == decide_pol(sdc, pc).answer, f"{name} / {c.name}")
            upol = decide_upol(sd, p, saturated_by_closure(p)).answer
            rep.check("UPol is Pol and co-Pol", upol == (pol and copol), f"{name} / {c.name}")
        st = compute_pairs(sd.morphism, StClass(lang.alphabet))
        at = compute_pairs(sd.morphism, AtClass(lang.alphabet))
        rep.check("AT pairs are ST pairs", not (at.bits & ~st.bits).any(), name)
        rep.check(
            "Pol(ST) inside Pol(AT)", not decide_pol(sd, st).answer or decide_pol(sd, at).answer, name
        )


def _forest(rep: LawSuiteReport, rng: random.Random, samples: int) -> None:
    worst = {}
    for name in fixture_names():
        m = syntactic(fixture(name)).morphism
        bound = height_bound(m)
        letters = "".join(m.alphabet.letters)
        top = 0
        for _ in range(samples):
            w = random_word(rng, letters, 50)
            r = validate_forest(build_forest(m, w), m, w)
            rep.check("forest validates", r.valid, f"{name} w={w!r}", "[]", str(r.failures))
            rep.check("height within 3|M|-1", r.height <= bound, f"{name} w={w!r}", f"<= {bound}", str(r.height))
            top = max(top, r.height)
        worst[name] = top
    rep.notes["max height"] = max(worst.values())
    rep.notes["max height per fixture"] = worst


def _witness(rep: LawSuiteReport, rng: random.Random, samples: int) -> None:
    instances = [(name, fixture(name)) for name in fixture_names()]
    instances += [(f"random #{i}", random_dfa(rng, 4, ("ab", "abc"))) for i in range(min(samples, 30))]
    for name, lang in instances:
        sd = syntactic(lang)
        if sd.size > 6:
            continue
        for c in _classes(lang.alphabet):
            p = compute_pairs(sd.morphism, c)
            if not decide_pol(sd, p).answer:
                continue
            res = synthesize(sd, c, p)
            tag = f"{name} / {c.name} {lang.to_text()!r}"
            rep.check("witness verified", res.verified and verify_witness(lang, res, sd), tag)
            rep.check("level within 3|M|-1", res.level <= res.bound, tag)
            rep.check("every level sound", all(res.union_sound) and not res.soundness_violations, tag)
            for b, d in res.bases.items():
                rep.check("bases belong to the class", c.member(d), f"{tag} {b}")


RUNNERS: dict[str, Callable[[LawSuiteReport, random.Random, int], None]] = {
    "preorder": _preorder,
    "period": _period,
    "charprop": _charprop,
    "pairs": _pairs,
    "saturated": _saturated,
    "equations": _equations,
    "forest": _forest,
    "witness": _witness,
}


def run_laws(suite: str, seed: int = 1, samples: int = 100) -> LawSuiteReport:
    started = time.perf_counter()
    if suite == "all":
        total = LawSuiteReport("all", seed)
        for name in SUITES:
            total.merge(run_laws(name, seed, samples))
        total.seconds = time.perf_counter() - started
        return total
    if suite not in RUNNERS:
        raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)} or all")
    rep = LawSuiteReport(suite, seed)
    RUNNERS[suite](rep, random.Random(f"{suite}:{seed}"), samples)
    rep.seconds = time.perf_counter() - started
    return rep


def format_report(rep: LawSuiteReport) -> str:
    lines = [f"suite {rep.suite} (seed {rep.seed}): {sum(rep.cases.values())} cases, {len(rep.failures)} failures"]
    for case, n in sorted(rep.cases.items()):
        lines.append(f"  {case}: {n}")
    for key, value in rep.notes.items():
        lines.append(f"  note {key}: {value}")
    for f in rep.failures[:20]:
        lines.append(f"  FAIL {f}")
    if len(rep.failures) > 20:
        lines.append(f"  ... {len(rep.failures) - 20} more")
    return "\n".join(lines)
