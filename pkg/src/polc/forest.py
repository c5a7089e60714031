"""Factorization forests of words with respect to a morphism.

A forest is built from a minimal-height table over all infixes of the word
(see ``_kernels.forest_levels``); since every word admits a forest of height
at most ``3|M| - 1``, the optimal one meets that bound.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Union as _U

from . import _kernels
from .algebra import Morphism
from .errors import InternalInvariantError


@dataclass(frozen=True)
class Leaf:
    label: str


@dataclass(frozen=True)
class Binary:
    left: "Forest"
    right: "Forest"


@dataclass(frozen=True)
class Idempotent:
    children: tuple["Forest", ...]
    element: int


Forest = _U[Leaf, Binary, Idempotent]


def children(f: Forest) -> tuple[Forest, ...]:
    if isinstance(f, Leaf):
        return ()
    if isinstance(f, Binary):
        return (f.left, f.right)
    return f.children


def label(f: Forest) -> str:
    if isinstance(f, Leaf):
        return f.label
    return "".join(label(c) for c in children(f))


def height(f: Forest) -> int:
    if isinstance(f, Leaf):
        return 0
    return 1 + max(height(c) for c in children(f))


def height_bound(m: Morphism) -> int:
    return 3 * m.size - 1


def build_forest(m: Morphism, w: str) -> Forest:
    """A forest for ``w`` of least possible height (hence at most ``3|M| - 1``)."""
    m.alphabet.check_word(w)
    n = len(w)
    if n <= 1:
        return Leaf(w)
    images = [m.image(a) for a in w]
    mon = m.monoid
    bound = height_bound(m)
    level, val = _kernels.forest_levels(images, mon.table, mon.is_idempotent, max(bound, 1))
    if level[0, n] < 0:
        raise InternalInvariantError(f"no forest of height <= {bound} for {w!r}")
    lv = level.tolist()
    vl = val.tolist()

    def fits(a: int, b: int, h: int) -> bool:
        return 0 <= lv[a][b] <= h

    def build(a: int, b: int) -> Forest:
        if b - a == 1:
            return Leaf(w[a])
        h = lv[a][b]
        for k in range(a + 1, b):
            if fits(a, k, h - 1) and fits(k, b, h - 1):
                return Binary(build(a, k), build(k, b))
        e = vl[a][b]
        # shortest chain a = k0 < k1 < ... < kr = b of blocks mapping to e
        prev = {a: -1}
        queue = deque([a])
        while queue and b not in prev:
            x = queue.popleft()
            for y in range(x + 1, b + 1):
                if y not in prev and vl[x][y] == e and fits(x, y, h - 1):
                    prev[y] = x
                    queue.append(y)
        if b not in prev:
            raise InternalInvariantError(f"forest table inconsistent at [{a}, {b})")
        cuts = [b]
        while cuts[-1] != a:
            cuts.append(prev[cuts[-1]])
        cuts.reverse()
        return Idempotent(tuple(build(x, y) for x, y in zip(cuts, cuts[1:])), e)

    return build(0, n)


@dataclass
class ForestReport:
    height: int
    value: int
    failures: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.failures


def validate_forest(f: Forest, m: Morphism, w: str) -> ForestReport:
    """Check every node kind, the idempotent condition and the root label."""
    failures: list[str] = []
    mon = m.monoid

    def visit(x: Forest, path: str) -> tuple[str, int]:
        if isinstance(x, Leaf):
            if len(x.label) > 1:
                failures.append(f"{path}: leaf label {x.label!r} longer than one letter")
            if any(a not in m.alphabet for a in x.label):
                failures.append(f"{path}: leaf label {x.label!r} outside the alphabet")
                return x.label, mon.neutral
            return x.label, m.evaluate(x.label)
        kids = children(x)
        results = [visit(c, f"{path}/{i}") for i, c in enumerate(kids)]
        values = [v for _, v in results]
        if isinstance(x, Idempotent):
            if len(kids) < 2:
                failures.append(f"{path}: idempotent node with {len(kids)} children")
            if any(v != x.element for v in values):
                failures.append(f"{path}: idempotent node children do not all map to {m.name(x.element)}")
            if not mon.is_idempotent[x.element]:
                failures.append(f"{path}: node element {m.name(x.element)} is not idempotent")
        return "".join(s for s, _ in results), mon.product(values)

    text, value = visit(f, "")
    if text != w:
        failures.append(f"root label {text!r} differs from {w!r}")
    elif value != m.evaluate(w):
        failures.append("root value differs from the image of the word")
    return ForestReport(height(f), value, failures)


def dump(f: Forest, m: Morphism) -> str:
    """Indented tree with the image of every node."""
    lines: list[str] = []

    def go(x: Forest, depth: int) -> int:
        pad = "  " * depth
        if isinstance(x, Leaf):
            v = m.evaluate(x.label)
            lines.append(f"{pad}leaf {x.label or 'ε'} -> {m.name(v)}")
            return v
        at = len(lines)
        lines.append("")
        vals = [go(c, depth + 1) for c in children(x)]
        v = m.monoid.product(vals)
        kind = "binary" if isinstance(x, Binary) else f"idempotent[{len(vals)}]"
        lines[at] = f"{pad}{kind} {label(x)} -> {m.name(v)}"
        return v

    go(f, 0)
    return "\n".join(lines)


def evaluate_forest(f: Forest, m: Morphism) -> int:
    if isinstance(f, Leaf):
        return m.evaluate(f.label)
    return m.monoid.product(evaluate_forest(c, m) for c in children(f))

