import numpy as np
import pytest

from exlogic.enumeration import (
    CeilingError, EnumerationSpec, automorphisms, canonical_form, class_corpus, classify_corpus,
    enumerate_lattices, enumerate_wpc, fundamental_lattices, lattices_of_size, read_corpus, write_corpus,
)
from exlogic.lattice_io import bundled
import oracles


@pytest.mark.parametrize("n", range(1, 8))
def test_lattice_counts_match_reference(n):
    assert len(lattices_of_size(n)) == len(oracles.lattice_orders(n))


def test_lattice_counts_through_eight():
    # 222 is beyond the brute-force oracle; it is the published count (OEIS A006966)
    assert [len(lattices_of_size(n)) for n in range(1, 9)] == [1, 1, 1, 2, 5, 15, 53, 222]


@pytest.mark.parametrize("n", range(1, 7))
def test_fundamental_counts_match_reference(n):
    assert sum(1 for lat in fundamental_lattices(n, n)) == oracles.fundamental_count(n)


def test_weak_pseudocomplements_of_each_order_match_reference():
    for order in lattices_of_size(5):
        le = order.leq.tolist()
        assert sum(1 for _ in enumerate_wpc(order, canonicalize=False)) == len(oracles.weak_pseudocomplements(le))


def test_canonical_form_is_invariant(refutes_nu):
    rng = np.random.default_rng(1)
    key = canonical_form(refutes_nu.leq, refutes_nu.neg).key
    for _ in range(20):
        p = rng.permutation(refutes_nu.n)
        q = refutes_nu.permuted(p)
        assert canonical_form(q.leq, q.neg).key == key


def test_canonical_form_separates_negations(three_chain):
    other = three_chain.with_negation([2, 0, 0])
    assert canonical_form(other.leq, other.neg) == canonical_form(three_chain.leq, three_chain.neg)
    square = lattices_of_size(4)
    keys = {canonical_form(L.leq).key for L in square}
    assert len(keys) == 2


def test_automorphisms_of_square(square):
    auts = automorphisms(square.leq)
    assert len(auts) == 2
    assert len(automorphisms(square.leq, square.neg)) == 2


def test_witness_lattices_appear_in_the_sweep(ex_lattices):
    keys7 = {lat.metadata["key"] for lat in fundamental_lattices(7)}
    for name in ("refutes_cl", "refutes_vi"):
        L = bundled(name)
        assert canonical_form(L.leq, L.neg).hex() in keys7
    L = bundled("refutes_nu")
    assert canonical_form(L.leq, L.neg).hex() in {lat.metadata["key"] for lat in fundamental_lattices(8, 8)}


def test_class_counts(corpus7):
    sizes = {}
    for lat, rep in corpus7:
        if rep.is_ex:
            sizes[lat.n] = sizes.get(lat.n, 0) + 1
    assert [sizes.get(n, 0) for n in range(1, 8)] == [1, 1, 1, 2, 3, 7, 9]
    assert len(class_corpus(7, "ortho")) == 5
    assert len(class_corpus(7, "heyting")) == 21


def test_enumeration_spec_validation():
    with pytest.raises(ValueError):
        EnumerationSpec(1)
    with pytest.raises(ValueError):
        EnumerationSpec(5, "boolean")


def test_ceiling(monkeypatch):
    with pytest.raises(CeilingError):
        classify_corpus(EnumerationSpec(9))
    with pytest.raises(CeilingError):
        list(enumerate_lattices(11))
    monkeypatch.setenv("EXLOGIC_MAX_SIZE", "20")
    list(enumerate_lattices(3))


def test_table_outputs():
    table = classify_corpus(EnumerationSpec(6))
    assert sum(table.sizes().values()) == len(table.rows) == 53
    csv_text = table.to_csv()
    assert csv_text.splitlines()[0].startswith("key,size,is_fundamental")
    assert len(csv_text.splitlines()) == 54
    assert table.counts()["nu vi cl"] == table.flag_counts()["is_ex"]


def test_uncanonicalised_table_is_larger():
    a = classify_corpus(EnumerationSpec(5))
    b = classify_corpus(EnumerationSpec(5, canonicalize=False))
    assert len(b.rows) >= len(a.rows)
    assert {r[0] for r in b.rows} == {r[0] for r in a.rows}


def test_corpus_round_trip(tmp_path):
    lats = list(fundamental_lattices(5))
    assert write_corpus(tmp_path, lats) == len(lats)
    back = read_corpus(tmp_path)
    assert sorted(L.metadata["key"] for L in back) == sorted(L.metadata["key"] for L in lats)
