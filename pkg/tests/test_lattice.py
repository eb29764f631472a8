import numpy as np
import pytest

from exlogic.lattice import (
    FiniteLattice, LatticeError, boolean_lattice, chain, from_covers, is_homomorphism, product, validate,
)


def test_chain_tables(three_chain):
    L = three_chain
    assert L.meet_of("m", "1") == "m"
    assert L.join_of("0", "m") == "m"
    assert [L.neg_of(x) for x in L.names] == ["1", "0", "0"]


def test_boolean_square(square):
    assert square.names == ("0", "a", "b", "1")
    assert square.neg_of("a") == "b"
    assert square.meet_of("a", "b") == "0" and square.join_of("a", "b") == "1"


def test_covers_and_heights(square):
    assert sorted((square.names[i], square.names[j]) for i, j in square.covers()) == [
        ("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]
    assert square.heights().tolist() == [0, 1, 1, 2]


def test_pentagon_has_no_distributive_meet_join():
    L = from_covers(["0", "x", "y", "z", "1"], [("0", "x"), ("x", "y"), ("y", "1"), ("0", "z"), ("z", "1")])
    assert L.join_of("x", "z") == "1" and L.meet_of("y", "z") == "0"
    assert L.neg is None


@pytest.mark.parametrize("desc, law", [
    ({"elements": ["0", "a", "b", "1"], "covers": [["0", "a"], ["a", "1"], ["0", "b"]]}, "unbounded"),
    ({"elements": ["0", "a", "b", "c", "d", "1"],
      "covers": [["0", "a"], ["0", "b"], ["a", "c"], ["b", "c"], ["a", "d"], ["b", "d"], ["c", "1"], ["d", "1"]]},
     "missing-meet"),
    ({"elements": ["0", "a"], "covers": [["0", "a"], ["a", "0"]]}, "not-a-poset"),
    ({"elements": ["0", "m", "1"], "covers": [["0", "m"], ["m", "1"]], "neg": {"m": "1"}}, "semi-complementation"),
    ({"elements": ["0", "m", "1"], "covers": [["0", "m"], ["m", "1"]], "neg": {"0": "m"}}, "negation-contradiction"),
    ({"elements": ["0", "m", "n", "1"], "covers": [["0", "m"], ["m", "n"], ["n", "1"]], "neg": {"m": "0"}},
     "negation-not-total"),
    ({"elements": ["0", "0"]}, "malformed"),
])
def test_validation_names_the_broken_law(desc, law):
    with pytest.raises(LatticeError) as err:
        validate(desc)
    assert err.value.law == law


def test_antitone_and_dni_violations():
    base = {"elements": ["0", "a", "b", "1"], "covers": [["0", "a"], ["a", "b"], ["b", "1"]]}
    with pytest.raises(LatticeError) as err:
        validate({**base, "neg": {"a": "0", "b": "a"}})
    assert err.value.law in ("semi-complementation", "antitonicity")
    # ~a = 0 makes ~~a = 1 fine; ~b = 0 but ~a = 0 too, all good
    assert validate({**base, "neg": {"a": "0", "b": "0"}}).neg_of("a") == "0"


def test_product_order_is_componentwise(three_chain, square):
    P = product(three_chain, square)
    assert P.n == 12
    i, j = P.pair_index(1, 1), P.pair_index(2, 3)
    assert P.leq[i, j] and not P.leq[j, i]
    assert P.neg[P.pair_index(1, 1)] == P.pair_index(0, 2)


def test_identity_is_homomorphism(square):
    rep = is_homomorphism(list(range(4)), square, square)
    assert rep and rep.injective and rep.order_reflecting


def test_non_homomorphism_reports_violation(square, three_chain):
    rep = is_homomorphism({"0": "0", "a": "m", "b": "m", "1": "1"}, square, three_chain)
    assert not rep
    assert "a & b" in rep.violation or "a | b" in rep.violation


def test_permuted_is_isomorphic(square):
    Q = square.permuted([3, 1, 0, 2])
    assert Q.names == ("1", "a", "0", "b")
    assert Q.neg_of("a") == "b" and Q.top == 0


def test_matrix_is_read_only(square):
    with pytest.raises(ValueError):
        square.leq[0, 0] = False


def test_single_element_lattice():
    L = FiniteLattice(["0"], np.array([[True]]), [0])
    assert L.top == L.bottom == 0


def test_boolean_cube_size():
    assert boolean_lattice(("x", "y", "z")).n == 8
    assert chain(1).n == 1
