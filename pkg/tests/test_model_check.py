import itertools

import pytest

from exlogic.formula import parse_formula, parse_sequent
from exlogic.model_check import (
    CounterexampleWitness, Exhausted, ResourceLimitError, UnboundVariableError, Valuation,
    countermodel_search, evaluate, sequent_valid, value_table,
)


def test_evaluate_named_valuation(refutes_cl):
    v = Valuation(refutes_cl, {"a": "1", "b": "b", "c": "c", "d": "d"})
    assert evaluate(parse_formula("~(a & (b & c | b & d)) & a"), v) == "1"
    assert evaluate(parse_formula("b & (c | d) | ~(b & (c | d))"), v) == "a"


def test_unbound_variable(square):
    with pytest.raises(UnboundVariableError):
        evaluate(parse_formula("a & z"), {"a": "a"}, square)


def test_excluded_middle_fails_on_chain(three_chain):
    w = sequent_valid(parse_sequent("|- a | ~a"), three_chain)
    assert isinstance(w, CounterexampleWitness) and not w
    assert w.as_dict() == {"valuation": {"a": "m"}, "lhs": "1", "rhs": "m"}


def test_valid_sequent_returns_true(square):
    assert sequent_valid(parse_sequent("~~a |- a"), square) is True


def test_vectorised_agrees_with_pointwise(refutes_nu):
    """Every valuation of a 2-variable formula, table lookup vs single evaluation."""
    f = parse_formula("~~p & ~(q | ~p)")
    (table,) = value_table([f], refutes_nu, ["p", "q"])
    for i, j in itertools.product(range(refutes_nu.n), repeat=2):
        v = {"p": refutes_nu.names[i], "q": refutes_nu.names[j]}
        assert refutes_nu.names[table[i, j]] == evaluate(f, v, refutes_nu)


def test_first_counterexample_is_in_file_order(three_chain):
    w = sequent_valid(parse_sequent("a |- b"), three_chain)
    assert w.valuation == {"a": "m", "b": "0"}


def test_resource_limit(refutes_nu):
    with pytest.raises(ResourceLimitError):
        sequent_valid(parse_sequent("a & b & c & d |- e"), refutes_nu, limit=1000)


def test_negation_required():
    from exlogic.lattice import chain

    with pytest.raises(ValueError):
        sequent_valid(parse_sequent("~a |- a"), chain(3, negation=None))


def test_countermodel_search_order_and_exhaustion(square, three_chain):
    s = parse_sequent("~~a |- a")
    hit = countermodel_search(s, [square, three_chain])
    assert hit.lattice is three_chain
    miss = countermodel_search(s, [square, square])
    assert isinstance(miss, Exhausted) and miss.checked == 2


def test_domain_restricts_valuations(three_chain):
    s = parse_sequent("|- a | ~a")
    assert sequent_valid(s, three_chain, domain=[0, 2]) is True
