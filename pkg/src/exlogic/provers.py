"""Decision procedures for fundamental, ortho, intuitionistic, Ex and classical logic.

Fundamental logic and orthologic are decided by saturation: the entailment
relation restricted to a finite universe of formulas (subformulas of the
query closed under two extra negations) is closed under the
introduction/elimination rules, numbered as follows:

 (1) p |- p              (2) F |- p             (3) p |- T
 (4) p & q |- p          (5) p & q |- q         (6) p |- p | q
 (7) q |- p | q          (8) p |- ~~p           (9) p & ~p |- F
(10) p |- q, q |- r  =>  p |- r
(11) p |- q, p |- r  =>  p |- q & r
(12) p |- r, q |- r  =>  p | q |- r
(13) p |- q          =>  ~q |- ~p

Because the universe is finite, a negation may fall outside it; the rules
then use a provably equivalent member (``~T`` is ``F``, ``~F`` is ``T`` and
``~~~p`` is ``~p``).  Rule applications through such a stand-in are logged
with a primed number; the two constant equations are logged as ``const``.  Orthologic adds ``~~p |- p`` (logged as ``DNE``).

Intuitionistic validity of ``p |- q`` is decided by Dyckhoff's
contraction-free calculus applied to ``p -> q``; implication exists only
inside that search.  Ex-validity is ortho-validity and int-validity together.
"""

from __future__ import annotations

import enum
import functools
import random
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .formula import (
    BOTTOM,
    TOP,
    And,
    Bottom,
    Formula,
    Neg,
    Or,
    Sequent,
    Top,
    Variable,
    parse_sequent,
    subformula_closure,
    to_text,
)
from .lattice import boolean_lattice
from .model_check import ResourceLimitError, sequent_valid

__all__ = [
    "LogicId",
    "SaturationTable",
    "saturate",
    "decide_fundamental",
    "decide_ortho",
    "decide_int",
    "decide_ex",
    "decide_classical",
    "decide",
    "ExVerdict",
    "random_formula",
    "random_sequent",
    "CLASSICAL_VARIABLE_LIMIT",
]

CLASSICAL_VARIABLE_LIMIT = 24


class LogicId(str, enum.Enum):
    FUNDAMENTAL = "fundamental"
    ORTHO = "ortho"
    INT = "int"
    EX = "ex"
    CLASSICAL = "classical"


def _as_sequent(s: Union[str, Sequent]) -> Sequent:
    return parse_sequent(s) if isinstance(s, str) else s


# --------------------------------------------------------------------------
# saturation

@dataclass
class SaturationTable:
    """Derivable pairs over ``universe``; ``derived[i, j]`` means ``universe[i] |- universe[j]``.

    ``rounds`` holds the relation after each parallel rule round, which is
    what :meth:`explain` replays.
    """

    sequent: Sequent
    logic: LogicId
    universe: list
    derived: np.ndarray = field(repr=False)
    rounds: list = field(repr=False)
    neg: np.ndarray = field(repr=False)
    _base_rule: dict = field(repr=False, default_factory=dict)

    @property
    def index(self) -> dict:
        return {f: i for i, f in enumerate(self.universe)}

    def entails(self, left: Formula, right: Formula) -> bool:
        idx = self.index
        return bool(self.derived[idx[left], idx[right]])

    @property
    def derivable(self) -> bool:
        return self.entails(self.sequent.antecedent, self.sequent.consequent)

    def pairs(self) -> list[tuple[Formula, Formula]]:
        u = self.universe
        return [(u[i], u[j]) for i, j in np.argwhere(self.derived)]

    def explain(self, left: Optional[Formula] = None, right: Optional[Formula] = None) -> list[str]:
        """A derivation of ``left |- right``, one rule application per line."""
        left = self.sequent.antecedent if left is None else left
        right = self.sequent.consequent if right is None else right
        idx = self.index
        i, j = idx[left], idx[right]
        if not self.derived[i, j]:
            raise ValueError(f"{to_text(Sequent(left, right))} is not derivable")
        lines: list[str] = []
        number: dict = {}
        u = self.universe

        def first_round(a, b):
            for r, snap in enumerate(self.rounds):
                if snap[a, b]:
                    return r
            raise AssertionError("pair missing from every round")

        def emit(a, b, rule, premises):
            refs = ", ".join(str(number[p]) for p in premises)
            text = to_text(Sequent(u[a], u[b]))
            lines.append(f"{len(lines) + 1}. {text}    ({rule}{'; ' + refs if refs else ''})")
            number[(a, b)] = len(lines)

        stack = [(i, j)]
        while stack:
            a, b = stack[-1]
            if (a, b) in number:
                stack.pop()
                continue
            r = first_round(a, b)
            if r == 0:
                emit(a, b, self._base_rule[(a, b)], [])
                stack.pop()
                continue
            rule, premises = self._justify(a, b, self.rounds[r - 1])
            todo = [p for p in premises if p not in number]
            if todo:
                stack.extend(todo)
                continue
            emit(a, b, rule, premises)
            stack.pop()
        return lines

    def _justify(self, a: int, b: int, prev: np.ndarray):
        u = self.universe
        idx = self.index
        fb = u[b]
        if isinstance(fb, And):
            l, r = idx[fb.left], idx[fb.right]
            if prev[a, l] and prev[a, r]:
                return "11", [(a, l), (a, r)]
        fa = u[a]
        if isinstance(fa, Or):
            l, r = idx[fa.left], idx[fa.right]
            if prev[l, b] and prev[r, b]:
                return "12", [(l, b), (r, b)]
        neg = self.neg
        # contraposition: a = neg(y), b = neg(x) with x |- y
        for x in np.flatnonzero(neg == b):
            for y in np.flatnonzero(neg == a):
                if prev[x, y]:
                    literal = fa == Neg(u[y]) and fb == Neg(u[x])
                    return ("13" if literal else "13'"), [(int(x), int(y))]
        bot = idx[BOTTOM]
        if b == bot:
            for x in np.flatnonzero(prev[a]):
                nx = neg[x]
                if nx >= 0 and prev[a, nx]:
                    return "9'", [(a, int(x)), (a, int(nx))]
        ks = np.flatnonzero(prev[a] & prev[:, b])
        if len(ks):
            k = int(ks[0])
            return "10", [(a, k), (k, b)]
        raise AssertionError("no rule justifies a derived pair")


def _neg_map(universe: list, idx: dict) -> np.ndarray:
    """Index of a universe member equivalent to the negation of each member, or -1."""
    out = np.full(len(universe), -1, dtype=np.int64)
    for i, f in enumerate(universe):
        if Neg(f) in idx:
            out[i] = idx[Neg(f)]
        elif isinstance(f, Top):
            out[i] = idx[BOTTOM]
        elif isinstance(f, Bottom):
            out[i] = idx[TOP]
        elif isinstance(f, Neg) and isinstance(f.child, Neg):
            # ~~~g is equivalent to ~g
            out[i] = idx[f.child]
    return out


def saturate(s: Union[str, Sequent], logic: Union[str, LogicId] = LogicId.FUNDAMENTAL,
             negation_depth: int = 2) -> SaturationTable:
    """Least relation over the negation-closed subformula universe closed under the rules."""
    s = _as_sequent(s)
    logic = LogicId(logic)
    if logic not in (LogicId.FUNDAMENTAL, LogicId.ORTHO):
        raise ValueError("saturation decides only fundamental logic and orthologic")
    universe = sorted(subformula_closure(s, negation_depth), key=lambda f: (f.depth(), to_text(f)))
    idx = {f: i for i, f in enumerate(universe)}
    n = len(universe)
    neg = _neg_map(universe, idx)
    top, bot = idx[TOP], idx[BOTTOM]

    R = np.zeros((n, n), dtype=bool)
    base: dict = {}

    def axiom(i, j, rule):
        if not R[i, j]:
            R[i, j] = True
            base[(i, j)] = rule

    for i in range(n):
        axiom(i, i, "1")
    for i in range(n):
        axiom(bot, i, "2")
        axiom(i, top, "3")
    ands, ors = [], []
    for i, f in enumerate(universe):
        if isinstance(f, And):
            l, r = idx[f.left], idx[f.right]
            axiom(i, l, "4")
            axiom(i, r, "5")
            ands.append((i, l, r))
            if neg[l] == r or neg[r] == l:
                axiom(i, bot, "9")
        elif isinstance(f, Or):
            l, r = idx[f.left], idx[f.right]
            axiom(l, i, "6")
            axiom(r, i, "7")
            ors.append((i, l, r))
    # ~T = F and ~F = T are derivable; seed them when the literals occur
    for c, d in ((TOP, BOTTOM), (BOTTOM, TOP)):
        if Neg(c) in idx:
            axiom(idx[Neg(c)], idx[d], "const")
            axiom(idx[d], idx[Neg(c)], "const")
    for i in range(n):
        if neg[i] >= 0 and neg[neg[i]] >= 0:
            nn = int(neg[neg[i]])
            literal = universe[nn] == Neg(Neg(universe[i]))
            axiom(i, nn, "8" if literal else "8'")
            if logic is LogicId.ORTHO:
                axiom(nn, i, "DNE")

    has_neg = np.flatnonzero(neg >= 0)
    rows = neg[has_neg]
    rounds = [R.copy()]
    while True:
        nxt = R.copy()
        # (10) transitivity
        Ri = R.astype(np.int32)
        nxt |= (Ri @ Ri) > 0
        # (11) and (12)
        for k, l, r in ands:
            nxt[:, k] |= R[:, l] & R[:, r]
        for k, l, r in ors:
            nxt[k, :] |= R[l, :] & R[r, :]
        # (13) R[i, j] gives neg(j) |- neg(i)
        sub = R[np.ix_(has_neg, has_neg)]
        m = len(rows)
        np.logical_or.at(nxt, (np.repeat(rows[:, None], m, 1), np.repeat(rows[None, :], m, 0)), sub.T)
        # (9') p |- q and p |- ~q give p |- F
        clash = (R[:, has_neg] & R[:, rows]).any(axis=1)
        nxt[:, bot] |= clash
        if (nxt == R).all():
            break
        R = nxt
        rounds.append(R.copy())
    return SaturationTable(s, logic, universe, R, rounds, neg, base)


# --------------------------------------------------------------------------
# intuitionistic search (G4ip)

_BOT = ("F",)
_TOP = ("T",)


def _internal(f: Formula):
    if isinstance(f, Variable):
        return ("v", f.name)
    if isinstance(f, Top):
        return _TOP
    if isinstance(f, Bottom):
        return _BOT
    if isinstance(f, Neg):
        return ("->", _internal(f.child), _BOT)
    if isinstance(f, And):
        return ("&", _internal(f.left), _internal(f.right))
    return ("|", _internal(f.left), _internal(f.right))


def _prove(ctx: frozenset, goal, memo: dict) -> bool:
    key = (ctx, goal)
    hit = memo.get(key)
    if hit is not None:
        return hit
    memo[key] = False  # the calculus terminates; this only guards re-entry
    out = _search(ctx, goal, memo)
    memo[key] = out
    return out


def _search(ctx: frozenset, goal, memo: dict) -> bool:
    if _BOT in ctx or goal == _TOP or goal in ctx:
        return True
    # invertible left rules
    for h in ctx:
        tag = h[0]
        if tag == "&":
            return _prove(ctx - {h} | {h[1], h[2]}, goal, memo)
        if tag == "|":
            rest = ctx - {h}
            return _prove(rest | {h[1]}, goal, memo) and _prove(rest | {h[2]}, goal, memo)
        if h == _TOP:
            return _prove(ctx - {h}, goal, memo)
        if tag == "->":
            a, b = h[1], h[2]
            rest = ctx - {h}
            if a == _BOT:
                return _prove(rest, goal, memo)
            if a == _TOP:
                return _prove(rest | {b}, goal, memo)
            if a[0] == "v" and a in ctx:
                return _prove(rest | {b}, goal, memo)
            if a[0] == "&":
                return _prove(rest | {("->", a[1], ("->", a[2], b))}, goal, memo)
            if a[0] == "|":
                return _prove(rest | {("->", a[1], b), ("->", a[2], b)}, goal, memo)
    # invertible right rules
    if goal[0] == "&":
        return _prove(ctx, goal[1], memo) and _prove(ctx, goal[2], memo)
    if goal[0] == "->":
        return _prove(ctx | {goal[1]}, goal[2], memo)
    # choices
    if goal[0] == "|" and (_prove(ctx, goal[1], memo) or _prove(ctx, goal[2], memo)):
        return True
    for h in ctx:
        if h[0] == "->" and h[1][0] == "->":
            (_, (_, c, d), b) = h
            rest = ctx - {h}
            if _prove(rest | {("->", d, b)}, ("->", c, d), memo) and _prove(rest | {b}, goal, memo):
                return True
    return False


@functools.lru_cache(maxsize=4096)
def _int_cached(text: str) -> bool:
    s = parse_sequent(text)
    return _prove(frozenset({_internal(s.antecedent)}), _internal(s.consequent), {})


def decide_int(s: Union[str, Sequent]) -> bool:
    """Holds in every Heyting lattice (intuitionistic validity)."""
    return _int_cached(to_text(_as_sequent(s)))


# --------------------------------------------------------------------------
# the remaining logics

@functools.lru_cache(maxsize=4096)
def _saturation_cached(text: str, logic: str, depth: int) -> bool:
    return saturate(parse_sequent(text), logic, depth).derivable


def decide_fundamental(s: Union[str, Sequent], negation_depth: int = 2) -> bool:
    return _saturation_cached(to_text(_as_sequent(s)), "fundamental", negation_depth)


def decide_ortho(s: Union[str, Sequent], negation_depth: int = 2) -> bool:
    return _saturation_cached(to_text(_as_sequent(s)), "ortho", negation_depth)


@dataclass(frozen=True)
class ExVerdict:
    ortho: bool
    int: bool

    @property
    def valid(self) -> bool:
        return self.ortho and self.int

    def __bool__(self) -> bool:
        return self.valid


def decide_ex(s: Union[str, Sequent]) -> ExVerdict:
    """Valid in every ortholattice and every Heyting lattice, i.e. in every Ex-lattice."""
    s = _as_sequent(s)
    return ExVerdict(decide_ortho(s), decide_int(s))


_TWO = boolean_lattice(("x",))


def decide_classical(s: Union[str, Sequent], max_variables: int = CLASSICAL_VARIABLE_LIMIT) -> bool:
    s = _as_sequent(s)
    k = len(s.variables())
    if k > max_variables:
        raise ResourceLimitError(f"{k} variables exceed the truth-table bound of {max_variables}")
    return sequent_valid(s, _TWO, limit=2 ** max_variables) is True


def decide(s: Union[str, Sequent], logic: Union[str, LogicId]) -> bool:
    logic = LogicId(logic)
    return {
        LogicId.FUNDAMENTAL: decide_fundamental,
        LogicId.ORTHO: decide_ortho,
        LogicId.INT: decide_int,
        LogicId.EX: lambda x: decide_ex(x).valid,
        LogicId.CLASSICAL: decide_classical,
    }[logic](s)


# --------------------------------------------------------------------------
# random test material

def random_formula(rng: random.Random, variables=("a", "b", "c"), depth: int = 4) -> Formula:
    """A random formula of depth at most ``depth``."""
    if depth <= 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.06:
            return TOP
        if r < 0.12:
            return BOTTOM
        return Variable(rng.choice(variables))
    op = rng.random()
    if op < 0.3:
        return Neg(random_formula(rng, variables, depth - 1))
    cls = And if op < 0.65 else Or
    return cls(random_formula(rng, variables, depth - 1), random_formula(rng, variables, depth - 1))


def random_sequent(rng: random.Random, variables=("a", "b", "c"), depth: int = 4) -> Sequent:
    return Sequent(random_formula(rng, variables, depth), random_formula(rng, variables, depth))
