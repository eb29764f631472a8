"""Curated regression sequents shared by the prover and model-checking tests."""

from exlogic.axioms import get_axiom
from exlogic.formula import And, Neg, Sequent, TOP, parse_sequent

REGRESSION_TEXT = {
    "distributivity": "a & (b | c) |- a & b | a & c",
    "double_negation_elim": get_axiom("dne").text,
    "excluded_middle": get_axiom("em").text,
    "weak_excluded_middle": get_axiom("wem").text,
    "nu": get_axiom("Nu").text,
    "vi": get_axiom("Vi").text,
    "cl": get_axiom("Cl").text,
    "orthomodular": get_axiom("orthomodular").text,
    "orthomodular_ortho": get_axiom("orthomodular_ortho").text,
    "ex": get_axiom("Ex").text,
    "de_morgan_join": "~(a | b) |- ~a & ~b",
    "double_negation_meet": "a & ~~b |- ~~(a & b)",
}

REGRESSION = {k: parse_sequent(v) for k, v in REGRESSION_TEXT.items()}

# expected verdicts, each checked against countermodels or a derivation in the tests
EXPECTED = {
    #                        fundamental ortho  int    ex     classical
    "distributivity":       (False,      False, True,  False, True),
    "double_negation_elim": (False,      True,  False, False, True),
    "excluded_middle":      (False,      True,  False, False, True),
    "weak_excluded_middle": (False,      True,  False, False, True),
    "nu":                   (False,      True,  True,  True,  True),
    "vi":                   (False,      True,  True,  True,  True),
    "cl":                   (False,      True,  True,  True,  True),
    "orthomodular":         (False,      False, True,  False, True),
    "orthomodular_ortho":   (False,      False, False, False, True),
    "ex":                   (False,      True,  True,  True,  True),
    "de_morgan_join":       (True,       True,  True,  True,  True),
    "double_negation_meet": (False,      True,  True,  True,  True),
}

LOGICS = ("fundamental", "ortho", "int", "ex", "classical")


def regression_formulas():
    """Both sides of every regression sequent plus ``~(A & ~B)`` for each ``A |- B``."""
    out = []
    for s in REGRESSION.values():
        for f in (s.antecedent, s.consequent, Neg(And(s.antecedent, Neg(s.consequent)))):
            if f not in out:
                out.append(f)
    return out


def as_formula_sequent(f):
    return Sequent(TOP, f)
