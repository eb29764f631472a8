"""Propositional formulas over {~, &, |, T, F} and entailment sequents.

The concrete syntax is ASCII::

    formula := or
    or      := and ("|" and)*
    and     := neg ("&" neg)*
    neg     := "~" neg | atom
    atom    := "T" | "F" | ident | "(" formula ")"
    sequent := formula "|-" formula | "|-" formula | formula "|-"

``~`` binds tightest, then ``&``, then ``|``; both binary connectives
associate to the left.  The unicode symbols ``¬ ∧ ∨ ⊤ ⊥ ⊢`` are accepted as
aliases.  A missing antecedent reads as ``T`` and a missing consequent as
``F``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Union

__all__ = [
    "Formula",
    "Variable",
    "Top",
    "Bottom",
    "Neg",
    "And",
    "Or",
    "Sequent",
    "ParseError",
    "parse",
    "parse_formula",
    "parse_sequent",
    "to_text",
    "substitute",
    "subformula_closure",
    "conj",
    "disj",
    "RESERVED",
]

RESERVED = frozenset({"T", "F"})
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Formula:
    """Base class of the six formula constructors.

    Instances are immutable and hashable; ``&``, ``|`` and ``~`` build
    conjunctions, disjunctions and negations.
    """

    __slots__ = ()
    precedence = 4

    def __and__(self, other: Formula) -> And:
        return And(self, other)

    def __or__(self, other: Formula) -> Or:
        return Or(self, other)

    def __invert__(self) -> Neg:
        return Neg(self)

    def children(self) -> tuple[Formula, ...]:
        return ()

    def variables(self) -> frozenset[str]:
        out: set[str] = set()
        stack: list[Formula] = [self]
        while stack:
            f = stack.pop()
            if isinstance(f, Variable):
                out.add(f.name)
            else:
                stack.extend(f.children())
        return frozenset(out)

    def subformulas(self) -> Iterator[Formula]:
        """Yield every subformula once, children before parents."""
        seen: set[Formula] = set()

        def walk(f: Formula) -> Iterator[Formula]:
            if f in seen:
                return
            for c in f.children():
                yield from walk(c)
            if f not in seen:
                seen.add(f)
                yield f

        yield from walk(self)

    def connectives(self) -> int:
        return sum(1 for _ in _nodes(self) if not isinstance(_, (Variable, Top, Bottom)))

    def depth(self) -> int:
        kids = self.children()
        return 0 if not kids else 1 + max(k.depth() for k in kids)

    def __str__(self) -> str:
        return to_text(self)

    def __post_init__(self):
        # deep trees are hashed often by the provers; compute the hash once
        object.__setattr__(self, "_hash", hash((type(self).__name__,) + self.children()))


def _nodes(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(g.children())


@dataclass(frozen=True, eq=True, repr=False)
class Variable(Formula):
    name: str
    _hash: int = field(init=False, compare=False, repr=False, default=0)

    def __post_init__(self):
        if not isinstance(self.name, str) or not _IDENT.match(self.name):
            raise ValueError(f"invalid variable name {self.name!r}")
        if self.name in RESERVED:
            raise ValueError(f"{self.name!r} is reserved and cannot name a variable")
        object.__setattr__(self, "_hash", hash(("Variable", self.name)))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Variable({self.name!r})"


@dataclass(frozen=True, eq=True, repr=False)
class Top(Formula):
    def __hash__(self):
        return 0x70B

    def __repr__(self):
        return "Top()"


@dataclass(frozen=True, eq=True, repr=False)
class Bottom(Formula):
    def __hash__(self):
        return 0xB07

    def __repr__(self):
        return "Bottom()"


@dataclass(frozen=True, eq=True, repr=False)
class Neg(Formula):
    child: Formula
    _hash: int = field(init=False, compare=False, repr=False, default=0)
    precedence = 3

    def children(self):
        return (self.child,)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Neg({self.child!r})"


@dataclass(frozen=True, eq=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, compare=False, repr=False, default=0)
    precedence = 2

    def children(self):
        return (self.left, self.right)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"And({self.left!r}, {self.right!r})"


@dataclass(frozen=True, eq=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, compare=False, repr=False, default=0)
    precedence = 1

    def children(self):
        return (self.left, self.right)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Or({self.left!r}, {self.right!r})"


TOP = Top()
BOTTOM = Bottom()


@dataclass(frozen=True)
class Sequent:
    """An entailment ``antecedent |- consequent``."""

    antecedent: Formula
    consequent: Formula

    def variables(self) -> frozenset[str]:
        return self.antecedent.variables() | self.consequent.variables()

    def connectives(self) -> int:
        return self.antecedent.connectives() + self.consequent.connectives()

    def __str__(self) -> str:
        return to_text(self)


def conj(*fs: Formula) -> Formula:
    """Left-nested conjunction; the empty conjunction is ``T``."""
    if not fs:
        return TOP
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


def disj(*fs: Formula) -> Formula:
    if not fs:
        return BOTTOM
    out = fs[0]
    for f in fs[1:]:
        out = Or(out, f)
    return out


# --------------------------------------------------------------------------
# parsing

class ParseError(ValueError):
    """Malformed input; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


_TOKEN = re.compile(
    r"\s*(?:(?P<turnstile>\|-|⊢)|(?P<op>[~&|()¬∧∨])|(?P<const>⊤|⊥)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<bad>\S))"
)
_ALIASES = {"¬": "~", "∧": "&", "∨": "|", "⊤": "T", "⊥": "F", "⊢": "|-"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace remains
            break
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if kind == "bad":
            raise ParseError(f"unexpected character {value!r}", start, text)
        value = _ALIASES.get(value, value)
        if kind in ("const", "ident") and value in RESERVED:
            kind = "const"
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str):
        raise ParseError(message, self.peek()[2], self.text)

    def formula(self) -> Formula:
        left = self.conjunction()
        while self.peek()[1] == "|" and self.peek()[0] == "op":
            self.take()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.negation()
        while self.peek()[1] == "&":
            self.take()
            left = And(left, self.negation())
        return left

    def negation(self) -> Formula:
        if self.peek()[1] == "~":
            self.take()
            return Neg(self.negation())
        return self.atom()

    def atom(self) -> Formula:
        kind, value, pos = self.peek()
        if kind == "const":
            self.take()
            return TOP if value == "T" else BOTTOM
        if kind == "ident":
            self.take()
            return Variable(value)
        if value == "(":
            self.take()
            inner = self.formula()
            if self.peek()[1] != ")":
                self.fail("expected ')'")
            self.take()
            return inner
        if kind == "end":
            self.fail("unexpected end of input")
        self.fail(f"unexpected token {value!r}")

    def starts_formula(self) -> bool:
        kind, value, _ = self.peek()
        return kind in ("const", "ident") or value in ("~", "(")

    def top(self) -> Union[Formula, Sequent]:
        if self.peek()[0] == "turnstile":
            self.take()
            rhs = self.formula()
            self.expect_end()
            return Sequent(TOP, rhs)
        lhs = self.formula()
        if self.peek()[0] == "turnstile":
            self.take()
            if self.peek()[0] == "end":
                return Sequent(lhs, BOTTOM)
            rhs = self.formula()
            self.expect_end()
            return Sequent(lhs, rhs)
        self.expect_end()
        return lhs

    def expect_end(self):
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")


def parse(text: str) -> Union[Formula, Sequent]:
    """Parse a formula, or a sequent if ``|-`` occurs at top level."""
    return _Parser(text).top()


def parse_formula(text: str) -> Formula:
    out = parse(text)
    if isinstance(out, Sequent):
        raise ParseError("expected a formula, found a sequent", text.find("|-"), text)
    return out


def parse_sequent(text: str) -> Sequent:
    """Parse a sequent; a bare formula ``f`` is read as ``T |- f``."""
    out = parse(text)
    if isinstance(out, Formula):
        return Sequent(TOP, out)
    return out


# --------------------------------------------------------------------------
# printing

def _fmt(f: Formula) -> str:
    if isinstance(f, Variable):
        return f.name
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bottom):
        return "F"
    if isinstance(f, Neg):
        inner = _fmt(f.child)
        return "~" + (inner if f.child.precedence >= 3 else f"({inner})")
    sym = " & " if isinstance(f, And) else " | "
    p = f.precedence
    left = _fmt(f.left)
    right = _fmt(f.right)
    if f.left.precedence < p:
        left = f"({left})"
    if f.right.precedence <= p:
        right = f"({right})"
    return left + sym + right


def to_text(x: Union[Formula, Sequent]) -> str:
    """Render with minimal parentheses; one-sided sequents print as ``|- f``/``f |-``."""
    if isinstance(x, Sequent):
        if x.antecedent == TOP:
            return f"|- {_fmt(x.consequent)}"
        if x.consequent == BOTTOM:
            return f"{_fmt(x.antecedent)} |-"
        return f"{_fmt(x.antecedent)} |- {_fmt(x.consequent)}"
    return _fmt(x)


# --------------------------------------------------------------------------
# substitution and closure

def substitute(x, assignments: Mapping[str, Formula]):
    """Replace variables simultaneously; works on formulas and sequents."""
    if isinstance(x, Sequent):
        return Sequent(substitute(x.antecedent, assignments), substitute(x.consequent, assignments))
    memo: dict[Formula, Formula] = {}

    def go(f: Formula) -> Formula:
        if f in memo:
            return memo[f]
        if isinstance(f, Variable):
            out = assignments.get(f.name, f)
        elif isinstance(f, Neg):
            out = Neg(go(f.child))
        elif isinstance(f, And):
            out = And(go(f.left), go(f.right))
        elif isinstance(f, Or):
            out = Or(go(f.left), go(f.right))
        else:
            out = f
        memo[f] = out
        return out

    return go(x)


def subformula_closure(s: Sequent, negation_depth: int = 2) -> frozenset[Formula]:
    """Subformulas of both sides, each prefixed by up to ``negation_depth`` negations, plus T and F."""
    if negation_depth < 0:
        raise ValueError("negation_depth must be >= 0")
    out: set[Formula] = {TOP, BOTTOM}
    for side in (s.antecedent, s.consequent):
        for g in side.subformulas():
            out.add(g)
            if isinstance(g, (Top, Bottom)):
                continue
            for _ in range(negation_depth):
                g = Neg(g)
                out.add(g)
    return frozenset(out)
