"""Decide which lattice classes a finite lattice belongs to.

Every flag is settled by exhaustive evaluation; each failed flag records a
concrete witness (a valuation with the two sides' values, or the offending
elements for the pseudo-complement law, which is a rule rather than a
sequent).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .axioms import get_axiom
from .lattice import FiniteLattice
from .model_check import sequent_valid

__all__ = [
    "FLAGS",
    "LatticeClassReport",
    "classify",
    "pseudocomplement_violation",
    "is_distributive",
    "is_ortholattice",
    "is_heyting",
]

FLAGS = (
    "is_fundamental",
    "is_ortholattice",
    "is_heyting",
    "is_ex",
    "holds_nu",
    "holds_vi",
    "holds_cl",
    "is_orthomodular",
    "is_distributive",
    "has_pseudocomplement",
    "holds_dne",
    "holds_em",
    "holds_wem",
)

# flag -> axiom whose validity decides it
_BY_AXIOM = {
    "holds_nu": "Nu",
    "holds_vi": "Vi",
    "holds_cl": "Cl",
    "holds_dne": "dne",
    "holds_em": "em",
    "holds_wem": "wem",
}


@dataclass(frozen=True)
class LatticeClassReport:
    is_fundamental: bool
    is_ortholattice: bool
    is_heyting: bool
    is_ex: bool
    holds_nu: bool
    holds_vi: bool
    holds_cl: bool
    is_orthomodular: bool
    is_distributive: bool
    has_pseudocomplement: bool
    holds_dne: bool
    holds_em: bool
    holds_wem: bool
    witnesses: dict = field(default_factory=dict)

    def flags(self) -> dict[str, bool]:
        return {k: getattr(self, k) for k in FLAGS}

    def as_dict(self) -> dict:
        return {"flags": self.flags(), "witnesses": self.witnesses}


def pseudocomplement_violation(lattice: FiniteLattice):
    """First ``(a, b)`` with ``a & b = 0`` but ``b`` not below ``~a``; ``None`` if ``~`` is the pseudo-complement."""
    disjoint = lattice.meet == lattice.bottom
    below_neg = lattice.leq[:, lattice.neg].T  # [a, b]: b <= ~a
    bad = disjoint & ~below_neg
    if bad.any():
        a, b = map(int, np.argwhere(bad)[0])
        return a, b
    return None


def _check(name: str, lattice: FiniteLattice):
    found = sequent_valid(get_axiom(name).sequent, lattice)
    return (True, None) if found is True else (False, found.as_dict())


def classify(lattice: FiniteLattice) -> LatticeClassReport:
    flags: dict[str, bool] = {}
    wit: dict[str, dict] = {}

    def record(flag, ok, witness):
        flags[flag] = ok
        if not ok:
            wit[flag] = witness

    record("is_distributive", *_check("distributivity", lattice))

    if lattice.neg is None:
        none = {"reason": "no negation map"}
        for f in FLAGS:
            if f != "is_distributive":
                record(f, False, none)
        return LatticeClassReport(**flags, witnesses=wit)

    flags["is_fundamental"] = True
    for flag, axiom in _BY_AXIOM.items():
        record(flag, *_check(axiom, lattice))
    bad = pseudocomplement_violation(lattice)
    record("has_pseudocomplement", bad is None,
           None if bad is None else {"a": lattice.names[bad[0]], "b": lattice.names[bad[1]],
                                     "neg_a": lattice.names[int(lattice.neg[bad[0]])]})

    ex_ok, ex_wit = _check("Ex", lattice)
    record("is_ex", ex_ok, ex_wit)
    record("is_ortholattice", flags["holds_dne"], wit.get("holds_dne"))
    if not flags["is_distributive"]:
        record("is_heyting", False, wit["is_distributive"])
    else:
        record("is_heyting", flags["has_pseudocomplement"], wit.get("has_pseudocomplement"))
    if not flags["is_ortholattice"]:
        record("is_orthomodular", False, wit["is_ortholattice"])
    else:
        record("is_orthomodular", *_check("orthomodular", lattice))
    return LatticeClassReport(**{f: flags[f] for f in FLAGS}, witnesses=wit)


# cheap direct tests, for large lattices where sequent checks would be costly

def is_distributive(lattice: FiniteLattice) -> bool:
    m, j = lattice.meet, lattice.join
    lhs = m[:, j]  # a & (b | c), indexed [a, b, c]
    rhs = j[m[:, :, None], m[:, None, :]]
    return bool((lhs == rhs).all())


def is_ortholattice(lattice: FiniteLattice) -> bool:
    return lattice.neg is not None and bool((lattice.neg[lattice.neg] == np.arange(lattice.n)).all())


def is_heyting(lattice: FiniteLattice) -> bool:
    return lattice.neg is not None and is_distributive(lattice) and pseudocomplement_violation(lattice) is None
