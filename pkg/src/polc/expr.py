"""Expression trees over base languages: union, concatenation, marked concatenation.

Expressions produced by synthesis share subtrees heavily, so the text form
prints every *labelled* node once as a definition and refers to it by label
elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union as _U

from .automata import Alphabet, Dfa, concat, marked_concat, minimize, union_all
from .errors import ResourceLimitError

DEFAULT_STATE_CAP = 10000


@dataclass(frozen=True, eq=False)
class Base:
    name: str
    dfa: Dfa


@dataclass(frozen=True, eq=False)
class Union:
    children: tuple["PolExpr", ...]
    label: str | None = None


@dataclass(frozen=True, eq=False)
class Concat:
    left: "PolExpr"
    right: "PolExpr"


@dataclass(frozen=True, eq=False)
class Marked:
    left: "PolExpr"
    letter: str
    right: "PolExpr"


PolExpr = _U[Base, Union, Concat, Marked]


@dataclass
class Denotation:
    """Memoizing evaluator of expressions to minimal DFAs (keyed by node identity)."""

    alphabet: Alphabet
    state_cap: int = DEFAULT_STATE_CAP
    _memo: dict[int, tuple[PolExpr, Dfa]] = field(default_factory=dict)

    def __call__(self, e: PolExpr) -> Dfa:
        hit = self._memo.get(id(e))
        if hit is not None and hit[0] is e:
            return hit[1]
        if isinstance(e, Base):
            out = minimize(e.dfa)
        elif isinstance(e, Union):
            out = union_all((self(c) for c in e.children), self.alphabet)
        elif isinstance(e, Concat):
            out = concat(self(e.left), self(e.right))
        else:
            out = marked_concat(self(e.left), e.letter, self(e.right))
        if out.n > self.state_cap:
            raise ResourceLimitError("intermediate automaton size", self.state_cap)
        self._memo[id(e)] = (e, out)
        return out

    def seed(self, e: PolExpr, dfa: Dfa) -> None:
        """Record an already computed denotation of ``e``."""
        self._memo[id(e)] = (e, dfa)


def expr_to_dfa(e: PolExpr, alphabet: Alphabet | None = None, state_cap: int = DEFAULT_STATE_CAP) -> Dfa:
    if alphabet is None:
        alphabet = next(iter(bases(e).values())).alphabet
    return Denotation(alphabet, state_cap)(e)


def bases(e: PolExpr) -> dict[str, Dfa]:
    """Base languages by name, in first-occurrence order."""
    out: dict[str, Dfa] = {}
    seen: set[int] = set()

    def go(x: PolExpr) -> None:
        if id(x) in seen:
            return
        seen.add(id(x))
        if isinstance(x, Base):
            out.setdefault(x.name, x.dfa)
        elif isinstance(x, Union):
            for c in x.children:
                go(c)
        elif isinstance(x, Concat):
            go(x.left)
            go(x.right)
        else:
            go(x.left)
            go(x.right)

    go(e)
    return out


def max_cuts(e: PolExpr) -> int:
    """Largest number of concatenation points along any product of the
    union-of-products normal form (marked and plain concatenations both count)."""
    memo: dict[int, int] = {}

    def go(x: PolExpr) -> int:
        if id(x) in memo:
            return memo[id(x)]
        if isinstance(x, Base):
            r = 0
        elif isinstance(x, Union):
            r = max((go(c) for c in x.children), default=0)
        else:
            r = go(x.left) + 1 + go(x.right)
        memo[id(x)] = r
        return r

    return go(e)


def render(e: PolExpr) -> str:
    """Parenthesized text; labelled nodes become definitions ``label := ...``."""
    defs: list[str] = []
    done: set[int] = set()

    def inline(x: PolExpr, top: bool = False) -> str:
        if isinstance(x, Base):
            return f"base({x.name})"
        if isinstance(x, Union):
            if x.label is not None and not top:
                define(x)
                return x.label
            if not x.children:
                return "union()"
            if len(x.children) == 1:
                return inline(x.children[0])
            return "union(" + ", ".join(inline(c) for c in x.children) + ")"
        if isinstance(x, Concat):
            return f"cat({inline(x.left)}, {inline(x.right)})"
        return f"mark({inline(x.left)}, {x.letter!r}, {inline(x.right)})"

    def define(x: Union) -> None:
        if id(x) in done:
            return
        done.add(id(x))
        body = inline(x, top=True)
        defs.append(f"{x.label} := {body}")

    root = inline(e, top=not (isinstance(e, Union) and e.label is not None))
    if isinstance(e, Union) and e.label is not None:
        define(e)
        root = e.label
    return "\n".join(defs + [root])
