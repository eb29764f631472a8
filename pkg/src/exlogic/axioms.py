"""Named axiom schemata and the translation of axiomatization pairs.

The central schema is ``Ex``, a six-variable entailment valid in every
ortholattice and every Heyting lattice.  Over fundamental logic it is
equivalent to the conjunction of three smaller schemata ``Nu``, ``Vi`` and
``Cl``, no two of which imply the third.

:func:`translate` turns an extension of orthologic (axioms ``phi |- psi``)
and an extension of intuitionistic logic (axioms ``chi |- theta``) into an
axiomatization of their common validities over fundamental logic:
``phi |- ~~psi``, ``chi |- theta | ~theta`` and ``Ex``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .formula import BOTTOM, TOP, Neg, Or, ParseError, Sequent, Variable, parse_sequent, to_text

__all__ = [
    "NamedAxiom",
    "AxiomatizationPair",
    "UnknownAxiomError",
    "AXIOMS",
    "get_axiom",
    "axiom_names",
    "translate",
    "derive_decomposition_instances",
    "parse_axiom_list",
    "format_axiom_list",
]


@dataclass(frozen=True)
class NamedAxiom:
    name: str
    sequent: Sequent
    provenance: str

    @property
    def text(self) -> str:
        return to_text(self.sequent)


class UnknownAxiomError(KeyError):
    pass


_TABLE = [
    ("Ex",
     "~(a & (b & c | b & d)) & a & (c | e) & ~~f"
     " |- ~~(a & f) & (a & c | a & e | f) & (b & (c | d) | ~(b & (c | d)))",
     "joint validity of orthologic and intuitionistic logic; axiomatizes their intersection"),
    ("Nu", "~~p & ~~q |- ~~(p & q)",
     "double negation commutes with meets; consequence of Ex"),
    ("Vi", "a & (c | e) & ~~f |- a & c | a & e | f",
     "distributivity up to a doubly negated disjunct; consequence of Ex"),
    ("Cl", "~(a & (b & c | b & d)) & a |- b & (c | d) | ~(b & (c | d))",
     "local excluded middle; consequence of Ex"),
    ("distributivity", "a & (b | c) |- a & b | a & c",
     "valid intuitionistically, fails in orthologic"),
    ("dne", "~~a |- a", "double-negation elimination; characterizes ortholattices"),
    ("em", "|- a | ~a", "excluded middle"),
    ("wem", "|- ~a | ~~a", "weak excluded middle; characterizes De Morgan logic"),
    ("orthomodular", "(a | ~a) & (a | b) |- a | ~a & (a | b)",
     "orthomodular law, intuitionistically valid form"),
    ("orthomodular_ortho", "a | b |- a | ~a & (a | b)",
     "orthomodular law in the form added to orthologic"),
]

AXIOMS: dict[str, NamedAxiom] = {
    name: NamedAxiom(name, parse_sequent(text), prov) for name, text, prov in _TABLE
}


def axiom_names() -> list[str]:
    return list(AXIOMS)


def get_axiom(name: str) -> NamedAxiom:
    try:
        return AXIOMS[name]
    except KeyError:
        raise UnknownAxiomError(f"unknown axiom {name!r}; known: {', '.join(AXIOMS)}") from None


@dataclass(frozen=True)
class AxiomatizationPair:
    ortho_axioms: Sequence[Sequent] = field(default_factory=tuple)
    int_axioms: Sequence[Sequent] = field(default_factory=tuple)


def translate(pair: AxiomatizationPair) -> list[Sequent]:
    """Axioms over fundamental logic for the common validities of both extensions.

    Output size is ``len(ortho_axioms) + len(int_axioms) + 1``.  An ortho
    axiom grows by two negations; an int axiom ``A |- B`` becomes
    ``A |- B | ~B``, so it is at most twice as long plus two connectives.
    """
    out = [Sequent(s.antecedent, Neg(Neg(s.consequent))) for s in pair.ortho_axioms]
    out += [Sequent(s.antecedent, Or(s.consequent, Neg(s.consequent))) for s in pair.int_axioms]
    out.append(AXIOMS["Ex"].sequent)
    return out


def derive_decomposition_instances() -> dict[str, tuple[dict, ...]]:
    """Substitutions into ``Ex`` from which ``Nu``, ``Vi`` and ``Cl`` follow.

    ``Nu`` takes two instances: the first gives ``~~p & ~~q |- ~~(~~p & q)``,
    the second ``~~p & q |- ~~(p & q)``; chaining them (and collapsing a
    quadruple negation) yields ``Nu``.
    """
    p, q = Variable("p"), Variable("q")
    return {
        "Nu": (
            {"c": TOP, "e": TOP, "b": BOTTOM, "f": q, "a": Neg(Neg(p))},
            {"c": TOP, "e": TOP, "b": BOTTOM, "a": q, "f": p},
        ),
        "Vi": ({"b": BOTTOM},),
        "Cl": ({"e": TOP, "f": TOP},),
    }


def parse_axiom_list(text: str) -> list[Sequent]:
    """One sequent per line; blank lines and ``#`` comments are skipped."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_sequent(line))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}", exc.position, line) from None
    return out


def format_axiom_list(sequents: Iterable[Sequent]) -> str:
    return "".join(to_text(s) + "\n" for s in sequents)

