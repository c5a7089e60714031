"""Membership in Pol(C), co-Pol(C) and UPol(C) from the syntactic ordered monoid.

Each level is decided by two equivalent equation forms: one quantifying over
all C-pairs ``(s, t)`` and one over pairs ``(e, t)`` with ``e`` idempotent
(or over saturated pairs, for UPol).  Both are always evaluated; if they
disagree something is broken and :class:`InternalInvariantError` is raised.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .algebra import FiniteMonoid, SyntacticData
from .errors import InternalInvariantError, PolcError
from .pairs import PairRelation

Level = Literal["pol", "copol", "upol"]

EQUATIONS = {
    "pol": ("s^(w+1) <= s^w t s^w", "e <= e t e"),
    "copol": ("s^w t s^w <= s^(w+1)", "e t e <= e"),
    "upol": ("s^(w+1) = s^w t s^w over C-pairs", "s^(w+1) = s^w t s^w over saturated C-pairs"),
}


@dataclass(frozen=True)
class Violation:
    s: int
    t: int
    lhs: int
    rhs: int
    s_word: str
    t_word: str
    lhs_word: str
    rhs_word: str
    equation: str

    def describe(self) -> str:
        show = lambda w: w or "ε"  # noqa: E731
        return (
            f"s = {show(self.s_word)}, t = {show(self.t_word)}: "
            f"{self.equation} fails with left side {show(self.lhs_word)} and right side {show(self.rhs_word)}"
        )


@dataclass(frozen=True)
class Verdict:
    level: str
    answer: bool
    violation: Violation | None
    equation_used: str

    def __post_init__(self) -> None:
        if self.answer != (self.violation is None):
            raise InternalInvariantError("verdict answer and violation disagree")


def _sides(monoid: FiniteMonoid) -> tuple[np.ndarray, np.ndarray]:
    """``lhs[s] = s^(w+1)`` and ``rhs[s, t] = s^w t s^w``."""
    t = monoid.table
    w = monoid.omega_powers
    idx = np.arange(monoid.size)
    lhs = t[w, idx]
    rhs = t[t[w[:, None], idx[None, :]], w[:, None]]
    return lhs, rhs


def equation_failures(
    monoid: FiniteMonoid, leq: np.ndarray, pairs: np.ndarray, level: Level, form: int
) -> np.ndarray:
    """Boolean matrix of pairs ``(s, t)`` breaking the equation of ``level`` in ``form`` 2 or 3.

    Form 3 only quantifies over idempotent ``s``; for idempotents ``s^(w+1) = s``
    and ``s^w t s^w = sts``, so one formula serves both forms.
    """
    lhs, rhs = _sides(monoid)
    left = np.broadcast_to(lhs[:, None], rhs.shape)
    if level == "pol":
        holds = leq[left, rhs]
    elif level == "copol":
        holds = leq[rhs, left]
    else:
        holds = left == rhs
    bad = pairs & ~holds
    if form == 3 and level != "upol":
        bad &= monoid.is_idempotent[:, None]
    return bad


def _first(bad: np.ndarray) -> tuple[int, int] | None:
    # elements are numbered in shortlex order of their representatives
    hits = np.argwhere(bad)
    return None if len(hits) == 0 else (int(hits[0][0]), int(hits[0][1]))


def _verdict(sd: SyntacticData, level: Level, bad: np.ndarray, equation: str) -> Verdict:
    hit = _first(bad)
    if hit is None:
        return Verdict(level, True, None, equation)
    s, t = hit
    lhs, rhs = _sides(sd.monoid)
    m = sd.morphism
    v = Violation(
        s, t, int(lhs[s]), int(rhs[s, t]),
        m.representatives[s], m.representatives[t],
        m.representatives[int(lhs[s])], m.representatives[int(rhs[s, t])],
        equation,
    )
    return Verdict(level, False, v, equation)


def _check_relation(sd: SyntacticData, r: PairRelation) -> None:
    if r.size != sd.size:
        raise PolcError(f"pair relation has size {r.size}, monoid has {sd.size}")


def _decide_inequality(sd: SyntacticData, pairs: PairRelation, level: Level) -> Verdict:
    _check_relation(sd, pairs)
    general = equation_failures(sd.monoid, sd.order, pairs.bits, level, 2)
    idem = equation_failures(sd.monoid, sd.order, pairs.bits, level, 3)
    if general.any() != idem.any():
        raise InternalInvariantError(f"{level}: general and idempotent equation forms disagree")
    return _verdict(sd, level, idem, EQUATIONS[level][1])


def decide_pol(sd: SyntacticData, pairs: PairRelation) -> Verdict:
    return _decide_inequality(sd, pairs, "pol")


def decide_copol(sd: SyntacticData, pairs: PairRelation) -> Verdict:
    return _decide_inequality(sd, pairs, "copol")


def decide_upol(sd: SyntacticData, plain: PairRelation, saturated: PairRelation | None = None) -> Verdict:
    _check_relation(sd, plain)
    on_plain = equation_failures(sd.monoid, sd.order, plain.bits, "upol", 2)
    if saturated is None:
        return _verdict(sd, "upol", on_plain, EQUATIONS["upol"][0])
    _check_relation(sd, saturated)
    on_sat = equation_failures(sd.monoid, sd.order, saturated.bits, "upol", 3)
    if on_plain.any() != on_sat.any():
        raise InternalInvariantError("upol: plain and saturated equation forms disagree")
    return _verdict(sd, "upol", on_sat, EQUATIONS["upol"][1])


def decide(sd: SyntacticData, level: Level, plain: PairRelation, saturated: PairRelation | None = None) -> Verdict:
    if level == "pol":
        return decide_pol(sd, plain)
    if level == "copol":
        return decide_copol(sd, plain)
    if level == "upol":
        return decide_upol(sd, plain, saturated)
    raise PolcError(f"unknown level {level!r}; expected pol, copol or upol")
