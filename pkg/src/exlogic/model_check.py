"""Valuations, evaluation and exhaustive validity checking on finite lattices.

Validity of ``phi |- psi`` on a lattice means ``v(phi) <= v(psi)`` for every
valuation ``v``.  All ``n**k`` valuations are evaluated at once: each
variable becomes an index array along its own numpy axis and the connectives
are table lookups, so a subformula only ever spans the axes of the variables
it mentions.

Valuations are enumerated with variables sorted by name (first variable
varies slowest) and elements in file order; the reported counterexample is
the first failing valuation in that order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .formula import And, Bottom, Formula, Neg, Or, Sequent, Top, Variable
from .lattice import FiniteLattice

__all__ = [
    "DEFAULT_LIMIT",
    "ResourceLimitError",
    "UnboundVariableError",
    "Valuation",
    "CounterexampleWitness",
    "Exhausted",
    "evaluate",
    "value_table",
    "sequent_valid",
    "schema_valid",
    "countermodel_search",
]

DEFAULT_LIMIT = 10 ** 8


class ResourceLimitError(RuntimeError):
    """Too many valuations to enumerate; use a prover instead."""


class UnboundVariableError(KeyError):
    pass


@dataclass(frozen=True)
class Valuation:
    lattice: FiniteLattice
    assignment: Mapping[str, str]

    def __getitem__(self, var: str) -> str:
        return self.assignment[var]


@dataclass(frozen=True)
class CounterexampleWitness:
    """A valuation under which ``lhs_value`` is not below ``rhs_value``.

    Witnesses are falsy so that ``if sequent_valid(s, L):`` reads naturally.
    """

    lattice: FiniteLattice = field(repr=False)
    valuation: dict
    lhs_value: str
    rhs_value: str

    def __bool__(self) -> bool:
        return False

    def as_dict(self) -> dict:
        return {"valuation": dict(self.valuation), "lhs": self.lhs_value, "rhs": self.rhs_value}


@dataclass(frozen=True)
class Exhausted:
    checked: int


def _require_negation(lattice: FiniteLattice):
    if lattice.neg is None:
        raise ValueError("formulas with negation need a lattice with a negation map")


def value_table(
    formulas: Sequence[Formula],
    lattice: FiniteLattice,
    variables: Sequence[str],
    domain: Optional[Sequence[int]] = None,
) -> list[np.ndarray]:
    """Values of each formula under every valuation of ``variables`` into ``domain``.

    The arrays broadcast against the shape ``(len(domain),) * len(variables)``.
    """
    dom = np.arange(lattice.n) if domain is None else np.asarray(domain, dtype=np.int64)
    k = len(variables)
    axis = {v: i for i, v in enumerate(variables)}
    unit = (1,) * k
    memo: dict[Formula, np.ndarray] = {}

    def go(f: Formula) -> np.ndarray:
        hit = memo.get(f)
        if hit is not None:
            return hit
        if isinstance(f, Variable):
            if f.name not in axis:
                raise UnboundVariableError(f.name)
            shape = [1] * k
            shape[axis[f.name]] = len(dom)
            out = dom.reshape(shape)
        elif isinstance(f, Top):
            out = np.full(unit, lattice.top)
        elif isinstance(f, Bottom):
            out = np.full(unit, lattice.bottom)
        elif isinstance(f, Neg):
            _require_negation(lattice)
            out = lattice.neg[go(f.child)]
        elif isinstance(f, And):
            out = lattice.meet[go(f.left), go(f.right)]
        elif isinstance(f, Or):
            out = lattice.join[go(f.left), go(f.right)]
        else:
            raise TypeError(f"not a formula: {f!r}")
        memo[f] = out
        return out

    return [go(f) for f in formulas]


def evaluate(f: Formula, v: Union[Valuation, Mapping[str, str]], lattice: Optional[FiniteLattice] = None) -> str:
    """Value of ``f`` under a single valuation, as an element name."""
    if isinstance(v, Valuation):
        lattice, assignment = v.lattice, v.assignment
    else:
        assignment = v
        if lattice is None:
            raise TypeError("a plain mapping needs the lattice argument")
    names = sorted(f.variables())
    for x in names:
        if x not in assignment:
            raise UnboundVariableError(x)
    dom = [lattice.idx(assignment[x]) for x in names]
    # one-point domain per variable: evaluate over a 1x...x1 grid
    fixed = {x: i for x, i in zip(names, dom)}
    (out,) = _single(f, lattice, fixed)
    return lattice.names[int(out)]


def _single(f: Formula, lattice: FiniteLattice, fixed: Mapping[str, int]):
    memo: dict[Formula, int] = {}

    def go(g: Formula) -> int:
        if g in memo:
            return memo[g]
        if isinstance(g, Variable):
            out = fixed[g.name]
        elif isinstance(g, Top):
            out = lattice.top
        elif isinstance(g, Bottom):
            out = lattice.bottom
        elif isinstance(g, Neg):
            _require_negation(lattice)
            out = int(lattice.neg[go(g.child)])
        elif isinstance(g, And):
            out = int(lattice.meet[go(g.left), go(g.right)])
        else:
            out = int(lattice.join[go(g.left), go(g.right)])
        memo[g] = out
        return out

    return (go(f),)


def sequent_valid(
    s: Sequent,
    lattice: FiniteLattice,
    limit: int = DEFAULT_LIMIT,
    domain: Optional[Sequence[int]] = None,
) -> Union[bool, CounterexampleWitness]:
    """``True`` if ``s`` holds under every valuation, else the first counterexample."""
    variables = sorted(s.variables())
    size = (lattice.n if domain is None else len(domain)) ** len(variables)
    if size > limit:
        raise ResourceLimitError(
            f"{size} valuations exceed the limit of {limit}; try the prover instead"
        )
    lhs, rhs = value_table([s.antecedent, s.consequent], lattice, variables, domain)
    ok = lattice.leq[lhs, rhs]
    if ok.all():
        return True
    dom_n = lattice.n if domain is None else len(domain)
    full = (dom_n,) * len(variables)
    flat = int(np.argmin(np.broadcast_to(ok, full)))
    pos = np.unravel_index(flat, full) if variables else ()
    dom = np.arange(lattice.n) if domain is None else np.asarray(domain)
    assignment = {v: lattice.names[int(dom[p])] for v, p in zip(variables, pos)}
    lv = np.broadcast_to(lhs, full)[pos] if variables else lhs
    rv = np.broadcast_to(rhs, full)[pos] if variables else rhs
    return CounterexampleWitness(lattice, assignment, lattice.names[int(lv)], lattice.names[int(rv)])


# axiom schemata and sequents coincide: valuations range over all assignments
schema_valid = sequent_valid


def countermodel_search(
    s: Sequent, corpus: Iterable[FiniteLattice], limit: int = DEFAULT_LIMIT
) -> Union[CounterexampleWitness, Exhausted]:
    """First counterexample over ``corpus`` in corpus order, or :class:`Exhausted`."""
    checked = 0
    for lattice in corpus:
        checked += 1
        found = sequent_valid(s, lattice, limit)
        if found is not True:
            return found
    return Exhausted(checked)
