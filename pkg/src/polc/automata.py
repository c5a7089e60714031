"""Finite automata over a fixed ordered alphabet.

Every language handled by the package is carried as a :class:`Dfa`.  All
operations that produce a DFA return the *canonical minimal complete* DFA of
the language: unreachable states removed, equivalent states merged, an
explicit sink when needed, and states numbered in breadth-first order over
the ordered alphabet starting from the initial state (state 0).  Two DFAs of
the same language over the same alphabet therefore compare equal.

Words are plain ``str`` values; each character is one letter.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as _cartesian
from typing import Callable, Iterable, Iterator

from .errors import AlphabetError, FormatError, RegexSyntaxError


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise AlphabetError("alphabet must be non-empty")
        if len(set(self.letters)) != len(self.letters):
            raise AlphabetError(f"duplicate letters in alphabet {''.join(self.letters)!r}")
        for a in self.letters:
            if len(a) != 1 or a in "()|* \t\r\n":
                raise AlphabetError(f"invalid letter {a!r}")

    @classmethod
    def of(cls, letters: str | Iterable[str]) -> "Alphabet":
        return cls(tuple(letters))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.letters)}

    def index(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise AlphabetError(f"letter {letter!r} not in alphabet {str(self)!r}") from None

    def __contains__(self, letter: object) -> bool:
        return letter in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(self.letters)

    def check_word(self, word: str) -> str:
        for a in word:
            if a not in self._index:
                raise AlphabetError(f"letter {a!r} of word {word!r} not in alphabet {str(self)!r}")
        return word


def words(alphabet: Alphabet, max_len: int, min_len: int = 0) -> Iterator[str]:
    """All words of length in [min_len, max_len], in shortlex order."""
    for n in range(min_len, max_len + 1):
        for letters in _cartesian(alphabet.letters, repeat=n):
            yield "".join(letters)


# --------------------------------------------------------------------------
# DFA


@dataclass(frozen=True)
class Dfa:
    """Complete DFA.  ``delta[q][i]`` is the successor of ``q`` on letter ``alphabet.letters[i]``."""

    alphabet: Alphabet
    delta: tuple[tuple[int, ...], ...]
    initial: int
    finals: frozenset[int]

    def __post_init__(self):
        n = len(self.delta)
        if n == 0:
            raise FormatError("a DFA needs at least one state")
        if not 0 <= self.initial < n:
            raise FormatError(f"initial state {self.initial} out of range")
        if any(not 0 <= q < n for q in self.finals):
            raise FormatError("final state out of range")
        k = len(self.alphabet)
        for row in self.delta:
            if len(row) != k or any(not 0 <= q < n for q in row):
                raise FormatError("transition function is not total or has out-of-range targets")

    @property
    def n(self) -> int:
        return len(self.delta)

    def step(self, q: int, letter: str) -> int:
        return self.delta[q][self.alphabet.index(letter)]

    def run(self, word: str, start: int | None = None) -> int:
        q = self.initial if start is None else start
        index = self.alphabet.index
        delta = self.delta
        for a in word:
            q = delta[q][index(a)]
        return q

    def accepts(self, word: str) -> bool:
        return self.run(word) in self.finals

    # convenience constructors

    @classmethod
    def empty(cls, alphabet: Alphabet) -> "Dfa":
        return cls(alphabet, ((0,) * len(alphabet),), 0, frozenset())

    @classmethod
    def universal(cls, alphabet: Alphabet) -> "Dfa":
        return cls(alphabet, ((0,) * len(alphabet),), 0, frozenset({0}))

    @classmethod
    def from_regex(cls, text: str, alphabet: Alphabet | str) -> "Dfa":
        if isinstance(alphabet, str):
            alphabet = Alphabet.of(alphabet)
        return compile_nfa(parse_regex(text, alphabet))

    def to_nfa(self) -> "Nfa":
        trans = frozenset(
            (q, a, self.delta[q][i]) for q in range(self.n) for i, a in enumerate(self.alphabet)
        )
        return Nfa(self.alphabet, self.n, frozenset({self.initial}), self.finals, trans)

    def reachable(self) -> list[int]:
        seen = {self.initial}
        order = [self.initial]
        queue = deque(order)
        while queue:
            q = queue.popleft()
            for r in self.delta[q]:
                if r not in seen:
                    seen.add(r)
                    order.append(r)
                    queue.append(r)
        return order

    def shortest_word(self, targets: Iterable[int] | None = None) -> str | None:
        """Shortlex-least word leading to a state in ``targets`` (default: finals)."""
        goal = self.finals if targets is None else frozenset(targets)
        parent: dict[int, tuple[int, str] | None] = {self.initial: None}
        queue = deque([self.initial])
        while queue:
            q = queue.popleft()
            if q in goal:
                out = []
                while parent[q] is not None:
                    q, a = parent[q]
                    out.append(a)
                return "".join(reversed(out))
            for i, r in enumerate(self.delta[q]):
                if r not in parent:
                    parent[r] = (q, self.alphabet.letters[i])
                    queue.append(r)
        return None

    def accepted_words(self, max_len: int) -> Iterator[str]:
        for w in words(self.alphabet, max_len):
            if self.accepts(w):
                yield w

    # text format

    def to_text(self) -> str:
        lines = [
            f"alphabet: {self.alphabet}",
            f"states: {self.n}",
            f"initial: {self.initial}",
            "finals: " + " ".join(str(q) for q in sorted(self.finals)),
        ]
        for q in range(self.n):
            for i, a in enumerate(self.alphabet):
                lines.append(f"{q} {a} {self.delta[q][i]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Dfa":
        header: dict[str, str] = {}
        edges: list[tuple[int, str, int, int]] = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition(":")
            if sep and key.strip() in ("alphabet", "states", "initial", "finals"):
                if key.strip() in header:
                    raise FormatError(f"line {lineno}: duplicate {key.strip()!r} header")
                header[key.strip()] = value.strip()
                continue
            parts = line.split()
            if len(parts) != 3:
                raise FormatError(f"line {lineno}: expected 'state letter state', got {raw!r}")
            try:
                edges.append((int(parts[0]), parts[1], int(parts[2]), lineno))
            except ValueError:
                raise FormatError(f"line {lineno}: state ids must be integers") from None
        for key in ("alphabet", "states", "initial", "finals"):
            if key not in header:
                raise FormatError(f"missing {key!r} header")
        alphabet = Alphabet.of(header["alphabet"].replace(" ", ""))
        try:
            n = int(header["states"])
            initial = int(header["initial"])
            finals = frozenset(int(x) for x in header["finals"].split())
        except ValueError:
            raise FormatError("states/initial/finals must be integers") from None
        table: list[list[int | None]] = [[None] * len(alphabet) for _ in range(n)]
        for p, a, q, lineno in edges:
            if not 0 <= p < n or not 0 <= q < n:
                raise FormatError(f"line {lineno}: state out of range")
            if a not in alphabet:
                raise FormatError(f"line {lineno}: letter {a!r} not in alphabet")
            i = alphabet.index(a)
            if table[p][i] is not None:
                raise FormatError(f"line {lineno}: duplicate transition for ({p}, {a})")
            table[p][i] = q
        for p in range(n):
            for i, a in enumerate(alphabet):
                if table[p][i] is None:
                    raise FormatError(f"missing transition for ({p}, {a})")
        return cls(alphabet, tuple(tuple(row) for row in table), initial, finals)  # type: ignore[arg-type]


# --------------------------------------------------------------------------
# NFA


@dataclass(frozen=True)
class Nfa:
    """NFA with epsilon moves; ``None`` as the letter of a transition means epsilon."""

    alphabet: Alphabet
    n: int
    initials: frozenset[int]
    finals: frozenset[int]
    transitions: frozenset[tuple[int, str | None, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        states = range(self.n)
        for p, a, q in self.transitions:
            if p not in states or q not in states:
                raise FormatError(f"NFA transition ({p}, {a}, {q}) references an unknown state")
            if a is not None and a not in self.alphabet:
                raise AlphabetError(f"NFA letter {a!r} not in alphabet")
        if any(q not in states for q in self.initials | self.finals):
            raise FormatError("NFA initial/final state out of range")

    @cached_property
    def _eps(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for p, a, q in self.transitions:
            if a is None:
                out[p].append(q)
        return tuple(tuple(sorted(x)) for x in out)

    @cached_property
    def _moves(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        k = len(self.alphabet)
        out: list[list[list[int]]] = [[[] for _ in range(k)] for _ in range(self.n)]
        for p, a, q in self.transitions:
            if a is not None:
                out[p][self.alphabet.index(a)].append(q)
        return tuple(tuple(tuple(sorted(x)) for x in row) for row in out)

    def closure(self, states: Iterable[int]) -> frozenset[int]:
        eps = self._eps
        seen = set(states)
        stack = list(seen)
        while stack:
            p = stack.pop()
            for q in eps[p]:
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return frozenset(seen)

    def move(self, states: frozenset[int], letter_index: int) -> frozenset[int]:
        moves = self._moves
        return self.closure(q for p in states for q in moves[p][letter_index])

    def accepts(self, word: str) -> bool:
        current = self.closure(self.initials)
        for a in word:
            current = self.move(current, self.alphabet.index(a))
            if not current:
                return False
        return not current.isdisjoint(self.finals)


class _NfaBuilder:
    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self.n = 0
        self.transitions: set[tuple[int, str | None, int]] = set()

    def state(self) -> int:
        self.n += 1
        return self.n - 1

    def edge(self, p: int, a: str | None, q: int) -> None:
        self.transitions.add((p, a, q))

    def embed(self, dfa: Dfa) -> tuple[int, list[int]]:
        """Copy ``dfa`` in; returns (initial, finals) in builder numbering."""
        base = self.n
        self.n += dfa.n
        for q in range(dfa.n):
            for i, a in enumerate(dfa.alphabet):
                self.transitions.add((base + q, a, base + dfa.delta[q][i]))
        return base + dfa.initial, [base + q for q in dfa.finals]

    def build(self, initials: Iterable[int], finals: Iterable[int]) -> Nfa:
        return Nfa(self.alphabet, self.n, frozenset(initials), frozenset(finals), frozenset(self.transitions))


# --------------------------------------------------------------------------
# regex parsing

# AST: ("letter", a) | ("eps",) | ("cat", x, y) | ("alt", x, y) | ("star", x)


class _RegexParser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def fail(self, message: str):
        raise RegexSyntaxError(message, len(self.text[: self.pos].encode("utf-8")))

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self):
        if self.peek() is None:
            self.fail("empty pattern rejected; use '()' for the empty word")
        node = self.expr()
        if self.peek() is not None:
            self.fail(f"unexpected {self.peek()!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek() == "|":
            self.pos += 1
            node = ("alt", node, self.term())
        return node

    def term(self):
        c = self.peek()
        if c is None or c in "|)*":
            self.fail("expected a letter or '('" if c is None else f"unexpected {c!r}")
        node = self.factor()
        while True:
            c = self.peek()
            if c is None or c in "|)":
                return node
            node = ("cat", node, self.factor())

    def factor(self):
        node = self.atom()
        if self.peek() == "*":
            self.pos += 1
            node = ("star", node)
        return node

    def atom(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            if self.peek() == ")":
                self.pos += 1
                return ("eps",)
            node = self.expr()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.pos += 1
            return node
        if c is None:
            self.fail("unexpected end of pattern")
        if c == "*":
            self.fail("'*' must follow an atom")
        if c not in self.alphabet:
            offset = len(self.text[: self.pos].encode("utf-8"))
            raise AlphabetError(f"letter {c!r} not in alphabet {str(self.alphabet)!r} at byte offset {offset}")
        self.pos += 1
        return ("letter", c)


def parse_regex(text: str, alphabet: Alphabet) -> Nfa:
    """Parse ``text`` (grammar: alternation, concatenation, star, ``()`` for epsilon)
    into an epsilon-NFA over ``alphabet``."""
    ast = _RegexParser(text, alphabet).parse()
    b = _NfaBuilder(alphabet)

    def go(node) -> tuple[int, int]:
        kind = node[0]
        start, end = b.state(), b.state()
        if kind == "letter":
            b.edge(start, node[1], end)
        elif kind == "eps":
            b.edge(start, None, end)
        elif kind == "cat":
            s1, e1 = go(node[1])
            s2, e2 = go(node[2])
            b.edge(start, None, s1)
            b.edge(e1, None, s2)
            b.edge(e2, None, end)
        elif kind == "alt":
            for child in node[1:]:
                s, e = go(child)
                b.edge(start, None, s)
                b.edge(e, None, end)
        else:  # star
            s, e = go(node[1])
            b.edge(start, None, end)
            b.edge(start, None, s)
            b.edge(e, None, s)
            b.edge(e, None, end)
        return start, end

    start, end = go(ast)
    return b.build([start], [end])


# --------------------------------------------------------------------------
# determinization and minimization


def determinize(nfa: Nfa) -> Dfa:
    """Subset construction (reachable subsets only, the empty subset acting as sink)."""
    k = len(nfa.alphabet)
    start = nfa.closure(nfa.initials)
    ids = {start: 0}
    order = [start]
    delta: list[tuple[int, ...]] = []
    i = 0
    while i < len(order):
        current = order[i]
        row = []
        for a in range(k):
            nxt = nfa.move(current, a)
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
            row.append(ids[nxt])
        delta.append(tuple(row))
        i += 1
    finals = frozenset(j for j, s in enumerate(order) if not s.isdisjoint(nfa.finals))
    return Dfa(nfa.alphabet, tuple(delta), 0, finals)


def minimize(dfa: Dfa) -> Dfa:
    """Canonical minimal complete DFA of ``dfa``'s language."""
    reach = dfa.reachable()
    local = {q: i for i, q in enumerate(reach)}
    delta = [tuple(local[r] for r in dfa.delta[q]) for q in reach]
    n = len(reach)
    block = [1 if q in dfa.finals else 0 for q in reach]
    count = len(set(block))
    # Moore refinement
    while True:
        sigs: dict[tuple[int, ...], int] = {}
        new_block = []
        for q in range(n):
            sig = (block[q],) + tuple(block[r] for r in delta[q])
            new_block.append(sigs.setdefault(sig, len(sigs)))
        block = new_block
        if len(sigs) == count:
            break
        count = len(sigs)
    # canonical BFS numbering of blocks
    rep: dict[int, int] = {}
    for q in range(n):
        rep.setdefault(block[q], q)
    ids = {block[0]: 0}
    order = [block[0]]
    i = 0
    while i < len(order):
        q = rep[order[i]]
        for r in delta[q]:
            if block[r] not in ids:
                ids[block[r]] = len(order)
                order.append(block[r])
        i += 1
    new_delta = tuple(tuple(ids[block[r]] for r in delta[rep[b]]) for b in order)
    finals = frozenset(ids[block[local[q]]] for q in reach if q in dfa.finals)
    return Dfa(dfa.alphabet, new_delta, 0, finals)


def compile_nfa(nfa: Nfa) -> Dfa:
    """Canonical minimal complete DFA of an NFA's language."""
    return minimize(determinize(nfa))


# --------------------------------------------------------------------------
# boolean operations, quotients, comparisons


def _same_alphabet(x: Dfa, y: Dfa) -> None:
    if x.alphabet != y.alphabet:
        raise AlphabetError(f"alphabet mismatch: {str(x.alphabet)!r} vs {str(y.alphabet)!r}")


def product(x: Dfa, y: Dfa, accept: Callable[[bool, bool], bool]) -> Dfa:
    """Reachable product automaton; not minimized."""
    _same_alphabet(x, y)
    start = (x.initial, y.initial)
    ids = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        p, q = order[i]
        row = []
        for rp, rq in zip(x.delta[p], y.delta[q]):
            pair = (rp, rq)
            if pair not in ids:
                ids[pair] = len(order)
                order.append(pair)
            row.append(ids[pair])
        delta.append(tuple(row))
        i += 1
    finals = frozenset(j for j, (p, q) in enumerate(order) if accept(p in x.finals, q in y.finals))
    return Dfa(x.alphabet, tuple(delta), 0, finals)


def union(x: Dfa, y: Dfa) -> Dfa:
    return minimize(product(x, y, lambda a, b: a or b))


def intersection(x: Dfa, y: Dfa) -> Dfa:
    return minimize(product(x, y, lambda a, b: a and b))


def complement(x: Dfa) -> Dfa:
    return minimize(Dfa(x.alphabet, x.delta, x.initial, frozenset(range(x.n)) - x.finals))


def difference(x: Dfa, y: Dfa) -> Dfa:
    return minimize(product(x, y, lambda a, b: a and not b))


def bool_op(kind: str, x: Dfa, y: Dfa | None = None) -> Dfa:
    if kind == "complement":
        return complement(x)
    if y is None:
        raise ValueError(f"{kind} needs two operands")
    if kind == "union":
        return union(x, y)
    if kind == "intersection":
        return intersection(x, y)
    raise ValueError(f"unknown boolean operation {kind!r}")


def union_all(dfas: Iterable[Dfa], alphabet: Alphabet) -> Dfa:
    out = Dfa.empty(alphabet)
    for d in dfas:
        out = union(out, d)
    return out


def intersect_all(dfas: Iterable[Dfa], alphabet: Alphabet) -> Dfa:
    """Intersection; an empty family gives the universal language."""
    out = Dfa.universal(alphabet)
    for d in dfas:
        out = intersection(out, d)
    return out


def left_quotient(lang: Dfa, u: str) -> Dfa:
    """``u^{-1} L = {w | uw in L}``."""
    lang.alphabet.check_word(u)
    return minimize(Dfa(lang.alphabet, lang.delta, lang.run(u), lang.finals))


def right_quotient(lang: Dfa, u: str) -> Dfa:
    """``L u^{-1} = {w | wu in L}``."""
    lang.alphabet.check_word(u)
    finals = frozenset(q for q in range(lang.n) if lang.run(u, start=q) in lang.finals)
    return minimize(Dfa(lang.alphabet, lang.delta, lang.initial, finals))


def quotient(side: str, lang: Dfa, u: str) -> Dfa:
    if side == "left":
        return left_quotient(lang, u)
    if side == "right":
        return right_quotient(lang, u)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def is_empty(x: Dfa) -> bool:
    reach = set(x.reachable())
    return reach.isdisjoint(x.finals)


def is_universal(x: Dfa) -> bool:
    return set(x.reachable()) <= x.finals


def includes(x: Dfa, y: Dfa) -> bool:
    """True iff L(y) is a subset of L(x)."""
    return is_empty(product(y, x, lambda a, b: a and not b))


def equivalent(x: Dfa, y: Dfa) -> bool:
    _same_alphabet(x, y)
    return minimize(x) == minimize(y)


def disjoint(x: Dfa, y: Dfa) -> bool:
    return is_empty(product(x, y, lambda a, b: a and b))


def compare(kind: str, x: Dfa, y: Dfa | None = None) -> bool:
    if kind == "is_empty":
        return is_empty(x)
    if y is None:
        raise ValueError(f"{kind} needs two operands")
    if kind == "includes":
        return includes(x, y)
    if kind == "equivalent":
        return equivalent(x, y)
    raise ValueError(f"unknown comparison {kind!r}")


def counterexample(x: Dfa, y: Dfa) -> str | None:
    """Shortlex-least word in exactly one of the two languages, or None."""
    return product(x, y, lambda a, b: a != b).shortest_word()


# --------------------------------------------------------------------------
# concatenation and closures


def concat(x: Dfa, y: Dfa) -> Dfa:
    _same_alphabet(x, y)
    b = _NfaBuilder(x.alphabet)
    ix, fx = b.embed(x)
    iy, fy = b.embed(y)
    for f in fx:
        b.edge(f, None, iy)
    return compile_nfa(b.build([ix], fy))


def marked_concat(x: Dfa, letter: str, y: Dfa) -> Dfa:
    """``x . letter . y``."""
    _same_alphabet(x, y)
    x.alphabet.index(letter)
    b = _NfaBuilder(x.alphabet)
    ix, fx = b.embed(x)
    iy, fy = b.embed(y)
    for f in fx:
        b.edge(f, letter, iy)
    return compile_nfa(b.build([ix], fy))


def upward_closure(x: Dfa) -> Dfa:
    """Scattered-superword closure: self-loops on every letter at every state."""
    b = _NfaBuilder(x.alphabet)
    init, finals = b.embed(x)
    for q in range(b.n):
        for a in x.alphabet:
            b.edge(q, a, q)
    return compile_nfa(b.build([init], finals))


def accepts(lang: Dfa, word: str) -> bool:
    return lang.accepts(word)
