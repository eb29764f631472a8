import pytest

from exlogic.axioms import (
    AXIOMS, AxiomatizationPair, UnknownAxiomError, derive_decomposition_instances, format_axiom_list,
    get_axiom, parse_axiom_list, translate,
)
from exlogic.formula import ParseError, Sequent, parse_sequent, substitute, to_text
from exlogic.provers import decide_fundamental, decide_ortho


def test_table_has_expected_names():
    assert {"Ex", "Nu", "Vi", "Cl", "distributivity", "dne", "em", "wem"} <= set(AXIOMS)


def test_ex_has_six_variables():
    assert get_axiom("Ex").sequent.variables() == set("abcdef")


def test_unknown_axiom():
    with pytest.raises(UnknownAxiomError):
        get_axiom("nope")


@pytest.mark.parametrize("name", ["Vi", "Cl"])
def test_single_substitution_gives_component(name):
    (sub,) = derive_decomposition_instances()[name]
    inst = substitute(get_axiom("Ex").sequent, sub)
    target = get_axiom(name).sequent
    # instance and component are inter-derivable over fundamental logic
    assert decide_fundamental(Sequent(target.antecedent, inst.antecedent))
    assert decide_fundamental(Sequent(inst.consequent, target.consequent))


def test_nu_takes_two_instances_chained():
    first, second = (substitute(get_axiom("Ex").sequent, s) for s in derive_decomposition_instances()["Nu"])
    # each instance is inter-derivable with one step of the chain
    step1 = parse_sequent("~~p & ~~q |- ~~(~~p & q)")
    step2 = parse_sequent("~~p & q |- ~~(p & q)")
    assert decide_fundamental(Sequent(step1.antecedent, first.antecedent))
    assert decide_fundamental(Sequent(first.consequent, step1.consequent))
    assert decide_fundamental(Sequent(step2.antecedent, second.antecedent))
    assert decide_fundamental(Sequent(second.consequent, step2.consequent))
    # chaining: ~~(~~p & q) |- ~~~~(p & q) = ~~(p & q) by antitonicity twice
    assert decide_fundamental(parse_sequent("~~~~(p & q) |- ~~(p & q)"))


def test_translate_shape():
    ortho = [parse_sequent("a | b |- a | ~a & (a | b)")]
    intu = [parse_sequent("|- ~a | ~~a"), parse_sequent("~~a |- a | ~a")]
    out = translate(AxiomatizationPair(ortho, intu))
    assert len(out) == 4
    assert to_text(out[0]) == "a | b |- ~~(a | ~a & (a | b))"
    assert to_text(out[1]) == "|- ~a | ~~a | ~(~a | ~~a)"
    assert out[-1] == get_axiom("Ex").sequent
    for src, dst in zip(ortho, out):
        assert dst.connectives() == src.connectives() + 2
    for src, dst in zip(intu, out[len(ortho):]):
        assert dst.connectives() == src.connectives() + src.consequent.connectives() + 2


def test_translated_orthomodular_axiom_is_ortho_valid_after_translation():
    (ax,) = translate(AxiomatizationPair([get_axiom("orthomodular_ortho").sequent], []))[:1]
    assert not decide_ortho(get_axiom("orthomodular_ortho").sequent)
    assert not decide_ortho(ax)


def test_axiom_list_round_trip():
    text = "# comment\n~~a |- a\n\n|- a | ~a   # em\n"
    seqs = parse_axiom_list(text)
    assert format_axiom_list(seqs) == "~~a |- a\n|- a | ~a\n"


def test_axiom_list_error_names_line():
    with pytest.raises(ParseError, match="line 2"):
        parse_axiom_list("a |- b\na &\n")
