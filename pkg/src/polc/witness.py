"""Synthesis and verification of Pol(C) expressions.

Starting from separators ``K_e`` (one per idempotent), expressions
``H[s, h]`` are built level by level so that every word in ``H[s, h]`` maps
above ``s`` in the syntactic order, and every word mapping to ``s`` with a
factorization forest of height ``<= h`` lies in ``H[s, h]``.  The union of
``H[s, h]`` over accepting ``s`` is then ``L`` once ``h`` reaches
``3|M| - 1``; in practice equality is reached much earlier, and construction
stops at the first level where it is.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .algebra import Morphism, SyntacticData
from .automata import Dfa, equivalent, includes, intersect_all, union
from .baseclass import BaseClass
from .errors import InternalInvariantError
from .expr import (
    DEFAULT_STATE_CAP,
    Base,
    Concat,
    Denotation,
    Marked,
    PolExpr,
    Union,
    bases,
    expr_to_dfa,
    max_cuts,
    render,
)
from .pairs import PairRelation

__all__ = [
    "Base",
    "Concat",
    "Marked",
    "PolExpr",
    "Union",
    "SynthesisResult",
    "bases",
    "compute_Ke",
    "expr_to_dfa",
    "max_cuts",
    "render",
    "synthesize",
    "upward_preimage",
    "verify_witness",
]


def _kname(m: Morphism, e: int) -> str:
    return "K_1" if e == m.neutral else f"K_{m.representatives[e]}"


def compute_Ke(e: int, m: Morphism, oracle: BaseClass, pairs: PairRelation) -> Base:
    """Intersection of the separators of ``alpha^{-1}(e)`` from every ``alpha^{-1}(t)``
    with ``(e, t)`` not a C-pair (``A*`` when there is none)."""
    pre = m.element_preimages
    seps = []
    for t in range(m.size):
        if pairs.bits[e, t]:
            continue
        k = oracle.separate(pre[e], pre[t])
        if k is None:
            raise InternalInvariantError(
                f"{oracle.name}: no separator for ({m.name(e)}, {m.name(t)}) although it is not a C-pair"
            )
        seps.append(k)
    return Base(_kname(m, e), intersect_all(seps, m.alphabet))


def upward_preimage(sd: SyntacticData, s: int) -> Dfa:
    """Words ``w`` with ``s <= alpha(w)``."""
    return sd.morphism.preimage(np.flatnonzero(sd.order[s]).tolist())


@dataclass
class SynthesisResult:
    morphism: Morphism
    exprs: dict[int, PolExpr]
    expression: PolExpr
    dfa: Dfa
    level: int
    bound: int
    verified: bool
    bases: dict[str, Dfa]
    stats: dict = field(default_factory=dict)
    soundness_violations: list[tuple[int, str]] = field(default_factory=list)
    union_sound: list[bool] = field(default_factory=list)

    def render(self) -> str:
        return render(self.expression)


def synthesize(
    sd: SyntacticData,
    oracle: BaseClass,
    pairs: PairRelation,
    max_h: int | None = None,
    state_cap: int = DEFAULT_STATE_CAP,
    expect_complete: bool = True,
) -> SynthesisResult:
    """Build ``H[s, h]`` for ``h = 0, 1, ...`` until the accepting union equals ``L``.

    ``expect_complete`` turns a failure to reach ``L`` by the level bound
    into an :class:`InternalInvariantError` (the caller has established
    that ``L`` satisfies the Pol equation).
    """
    started = time.perf_counter()
    m = sd.morphism
    mon = m.monoid
    n = m.size
    alphabet = m.alphabet
    lang = sd.source
    bound = 3 * n - 1
    top = bound if max_h is None else min(bound, max_h)
    den = Denotation(alphabet, state_cap)
    rows = mon.rows
    upsets = [upward_preimage(sd, s) for s in range(n)]

    kcache: dict[int, Base] = {}

    def K(e: int) -> Base:
        if e not in kcache:
            kcache[e] = compute_Ke(e, m, oracle, pairs)
        return kcache[e]

    k1 = K(m.neutral)
    empty = Union(())
    stats = {"levels": 0, "concatenations": 0, "max_states": 0}
    violations: list[tuple[int, str]] = []
    union_sound: list[bool] = []

    def assemble(s: int, level: int, terms: list[PolExpr]) -> PolExpr:
        return Union(tuple(terms), label=f"H[{m.name(s)},{level}]") if terms else empty

    # level 0
    cur: list[PolExpr] = []
    for s in range(n):
        terms: list[PolExpr] = []
        if s == m.neutral:
            terms.append(k1)
        for a, img in zip(alphabet.letters, m.letter_image):
            if img == s:
                terms.append(Marked(k1, a, k1))
        cur.append(assemble(s, 0, terms))
    dfas = [den(x) for x in cur]

    level = 0
    while True:
        stats["levels"] = level + 1
        stats["max_states"] = max(stats["max_states"], max(d.n for d in dfas))
        for s in range(n):
            if not includes(upsets[s], dfas[s]):
                violations.append((level, m.name(s)))
        acc = Dfa.empty(alphabet)
        for s in sorted(m.accepting):
            acc = union(acc, dfas[s])
        union_sound.append(includes(lang, acc))
        if equivalent(acc, lang) or level >= top:
            break
        nxt: list[PolExpr] = []
        nxt_dfas: list[Dfa] = []
        changed = False
        for s in range(n):
            have = dfas[s]
            kept: list[PolExpr] = []
            candidates: list[PolExpr] = []
            for t1 in range(n):
                if dfas[t1].n == 1 and not dfas[t1].finals:
                    continue
                for t2 in range(n):
                    if rows[t1][t2] != s or (dfas[t2].n == 1 and not dfas[t2].finals):
                        continue
                    candidates.append(Concat(cur[t1], cur[t2]))
            if mon.is_idempotent[s] and cur[s] is not empty:
                candidates.append(Concat(Concat(cur[s], K(s)), cur[s]))
            for c in candidates:
                stats["concatenations"] += 1
                d = den(c)
                if not includes(have, d):
                    have = union(have, d)
                    kept.append(c)
            if kept:
                changed = True
                base_terms = [cur[s]] if cur[s] is not empty else []
                node = Union(tuple(base_terms + kept), label=f"H[{m.name(s)},{level + 1}]")
                den.seed(node, have)
                nxt.append(node)
            else:
                nxt.append(cur[s])
            nxt_dfas.append(have)
        if not changed:
            # fixpoint: every later level denotes the same languages
            stats["fixpoint"] = level
            break
        level += 1
        cur, dfas = nxt, nxt_dfas

    final_children = tuple(cur[s] for s in sorted(m.accepting) if cur[s] is not empty)
    expression: PolExpr = Union(final_children)
    dfa = den(expression)
    verified = equivalent(dfa, lang)
    stats["seconds"] = time.perf_counter() - started
    if expect_complete and not verified and (level >= bound or "fixpoint" in stats):
        raise InternalInvariantError(
            f"synthesis stalled at level {level} (bound {bound}) without reaching the language"
        )
    return SynthesisResult(
        morphism=m,
        exprs={s: cur[s] for s in range(n)},
        expression=expression,
        dfa=dfa,
        level=level,
        bound=bound,
        verified=verified,
        bases=bases(expression),
        stats=stats,
        soundness_violations=violations,
        union_sound=union_sound,
    )


def verify_witness(lang: Dfa, r: SynthesisResult | PolExpr, sd: SyntacticData | None = None) -> bool:
    """Denotation equals ``lang``; for synthesis results also re-check that every
    ``H[s, .]`` only contains words mapping above ``s`` (exact inclusion)."""
    den = Denotation(lang.alphabet)
    if not isinstance(r, SynthesisResult):
        return equivalent(den(r), lang)
    if not equivalent(den(r.expression), lang):
        return False
    if sd is None:
        from .algebra import syntactic

        sd = syntactic(lang)
    if sd.size != r.morphism.size:
        return False
    for s, e in r.exprs.items():
        if not includes(upward_preimage(sd, s), den(e)):
            return False
    return True
