"""C-pairs and saturated C-pairs of a morphism.

``(s, t)`` is a C-pair when ``alpha^{-1}(s)`` cannot be separated from
``alpha^{-1}(t)`` by a language of C.  The saturated relation restricts the
candidate separators to C-languages recognized by the morphism itself; it is
computed either by enumerating such languages or as the reflexive-transitive
closure of the plain relation, and the two are expected to coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Literal

import numpy as np

from . import _kernels
from .algebra import Morphism, is_compatible, is_transitive, is_upper_set
from .baseclass import BaseClass
from .errors import InternalInvariantError, PolcError, ResourceLimitError

DEFAULT_SUBSET_CAP = 16

Kind = Literal["plain", "saturated"]


@dataclass(frozen=True, eq=False)
class PairRelation:
    bits: np.ndarray
    kind: Kind = "plain"

    @property
    def size(self) -> int:
        return self.bits.shape[0]

    def __contains__(self, st: tuple[int, int]) -> bool:
        return bool(self.bits[st])

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(s), int(t)) for s, t in zip(*np.nonzero(self.bits))]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PairRelation) and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash(self.bits.tobytes())


def compute_pairs(m: Morphism, oracle: BaseClass, via: Literal["auto", "separate"] = "auto") -> PairRelation:
    """The C-pair relation of ``m``.

    ``via="separate"`` asks the oracle one separation question per ordered
    pair of elements.  ``"auto"`` lets the oracle answer the whole matrix at
    once when it has an exact shortcut.
    """
    if via == "auto":
        fast = oracle.pair_matrix(m)
        if fast is not None:
            return PairRelation(np.asarray(fast, dtype=bool), "plain")
    pre = m.element_preimages
    n = m.size
    bits = np.zeros((n, n), dtype=bool)
    for s in range(n):
        for t in range(n):
            bits[s, t] = oracle.separate(pre[s], pre[t]) is None
    return PairRelation(bits, "plain")


def recognized_members(m: Morphism, oracle: BaseClass, subset_cap: int = DEFAULT_SUBSET_CAP) -> list[frozenset[int]]:
    """All ``F`` with ``alpha^{-1}(F)`` in C."""
    if m.size > subset_cap:
        raise ResourceLimitError(f"monoid size for subset enumeration (use by_closure); size {m.size}", subset_cap)
    out = []
    for mask in range(1 << m.size):
        f = frozenset(s for s in range(m.size) if mask >> s & 1)
        if oracle.member(m.preimage(f)):
            out.append(f)
    return out


def saturated_by_membership(m: Morphism, oracle: BaseClass, subset_cap: int = DEFAULT_SUBSET_CAP) -> PairRelation:
    n = m.size
    bits = np.ones((n, n), dtype=bool)
    for f in recognized_members(m, oracle, subset_cap):
        inside = np.zeros(n, dtype=bool)
        inside[list(f)] = True
        # F separates s from t when s in F and t not in F
        bits &= ~(inside[:, None] & ~inside[None, :])
    return PairRelation(bits, "saturated")


def saturated_by_closure(plain: PairRelation) -> PairRelation:
    return PairRelation(_kernels.transitive_closure(plain.bits), "saturated")


def compute_saturated(
    m: Morphism,
    oracle: BaseClass,
    method: Literal["by_membership", "by_closure"] = "by_closure",
    plain: PairRelation | None = None,
    subset_cap: int = DEFAULT_SUBSET_CAP,
) -> PairRelation:
    if method == "by_membership":
        return saturated_by_membership(m, oracle, subset_cap)
    if method == "by_closure":
        if plain is None:
            plain = compute_pairs(m, oracle)
        return saturated_by_closure(plain)
    raise PolcError(f"unknown method {method!r}")


def saturated_checked(
    m: Morphism, oracle: BaseClass, plain: PairRelation, subset_cap: int = DEFAULT_SUBSET_CAP
) -> PairRelation:
    """Closure result, cross-checked against enumeration when the monoid is small enough."""
    closed = saturated_by_closure(plain)
    if m.size <= subset_cap:
        enumerated = saturated_by_membership(m, oracle, subset_cap)
        if closed != enumerated:
            raise InternalInvariantError("saturated pairs: closure and enumeration disagree")
    return closed


@dataclass
class LawReport:
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


def check_relation_laws(r: PairRelation, m: Morphism, plain: PairRelation | None = None) -> LawReport:
    rep = LawReport()
    rep.checks["reflexive"] = bool(r.bits.diagonal().all())
    rep.checks["multiplicative"] = is_compatible(m.monoid, r.bits)
    if r.kind == "saturated":
        rep.checks["transitive"] = is_transitive(r.bits)
        if plain is not None:
            rep.checks["contains plain"] = not (plain.bits & ~r.bits).any()
    return rep


def upper_set_duality_failures(
    m: Morphism, oracle: BaseClass, saturated: PairRelation, subset_cap: int = DEFAULT_SUBSET_CAP
) -> list[frozenset[int]]:
    """Subsets where class membership of ``alpha^{-1}(F)`` and being an upper
    set of the saturated relation disagree."""
    if m.size > subset_cap:
        raise ResourceLimitError("monoid size for subset enumeration", subset_cap)
    out = []
    for k in range(m.size + 1):
        for f in combinations(range(m.size), k):
            if oracle.member(m.preimage(f)) != is_upper_set(f, saturated.bits):
                out.append(frozenset(f))
    return out


def render_pairs(r: PairRelation, m: Morphism) -> str:
    names = [m.name(s) for s in range(m.size)]
    width = max(len(x) for x in names)
    lines = ["  " + " " * width + " | " + " ".join(x.rjust(width) for x in names)]
    for s, name in enumerate(names):
        cells = [("x" if r.bits[s, t] else ".").rjust(width) for t in range(m.size)]
        lines.append("  " + name.rjust(width) + " | " + " ".join(cells))
    return "\n".join(lines)


def machine_pairs(r: PairRelation, m: Morphism) -> list[str]:
    return [f"{m.name(s)} -> {m.name(t)}" for s, t in r.pairs()]
