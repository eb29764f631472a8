import pytest
from hypothesis import given, settings, strategies as st

from exlogic.formula import (
    And, BOTTOM, Neg, Or, ParseError, Sequent, TOP, Variable,
    conj, disj, parse, parse_formula, parse_sequent, subformula_closure, substitute, to_text,
)

a, b, c = Variable("a"), Variable("b"), Variable("c")


def test_precedence_neg_and_or():
    assert parse_formula("~a & b | c") == Or(And(Neg(a), b), c)
    assert parse_formula("a | b & c") == Or(a, And(b, c))


def test_left_associative():
    assert parse_formula("a & b & c") == And(And(a, b), c)
    assert parse_formula("a | b | c") == Or(Or(a, b), c)


def test_constants_and_unicode_aliases():
    assert parse("¬a ∧ ⊤ ⊢ b ∨ ⊥") == parse("~a & T |- b | F")


def test_one_sided_sequents():
    assert parse_sequent("|- a | ~a") == Sequent(TOP, Or(a, Neg(a)))
    assert parse_sequent("a & ~a |-") == Sequent(And(a, Neg(a)), BOTTOM)
    assert parse_sequent("a") == Sequent(TOP, a)


@pytest.mark.parametrize("text, pos", [("a &", 3), ("(a | b", 6), ("a $ b", 2), ("a |- b |- c", 7)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.position == pos


def test_formula_expected_not_sequent():
    with pytest.raises(ParseError):
        parse_formula("a |- b")


def test_printing_uses_minimal_parentheses():
    assert to_text(parse_formula("(a & b) | c")) == "a & b | c"
    assert to_text(parse_formula("a & (b | c)")) == "a & (b | c)"
    assert to_text(parse_formula("a | (b | c)")) == "a | (b | c)"
    assert to_text(parse_formula("~(a & b)")) == "~(a & b)"
    assert to_text(parse_sequent("|- a")) == "|- a"


def test_substitute_is_simultaneous():
    f = parse_formula("a & ~b")
    assert substitute(f, {"a": b, "b": a}) == parse_formula("b & ~a")


def test_conj_disj_of_nothing():
    assert conj() == TOP and disj() == BOTTOM
    assert conj(a, b, c) == parse_formula("a & b & c")


def test_closure_size_matches_reference():
    from oracles import closure_size

    s = parse_sequent("~~p & ~~q |- ~~(p & q)")
    ref = closure_size(
        [("&", ("~", ("~", ("v", "p"))), ("~", ("~", ("v", "q")))), ("~", ("~", ("&", ("v", "p"), ("v", "q"))))],
        2,
    )
    assert len(subformula_closure(s, 2)) == ref == 20


def test_counts():
    s = parse_sequent("a & (b | c) |- a & b | a & c")
    assert s.variables() == {"a", "b", "c"}
    assert s.connectives() == 5


def formulas(depth=4):
    leaf = st.sampled_from([a, b, c, TOP, BOTTOM])
    return st.recursive(
        leaf,
        lambda sub: st.one_of(
            sub.map(Neg),
            st.tuples(sub, sub).map(lambda p: And(*p)),
            st.tuples(sub, sub).map(lambda p: Or(*p)),
        ),
        max_leaves=12,
    )


@settings(max_examples=200, deadline=None)
@given(formulas())
def test_print_parse_round_trip(f):
    assert parse_formula(to_text(f)) == f


@settings(max_examples=100, deadline=None)
@given(formulas(), formulas())
def test_sequent_round_trip(f, g):
    s = Sequent(f, g)
    assert parse_sequent(to_text(s)) == s
