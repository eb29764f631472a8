import pytest

from exlogic.enumeration import class_corpus, corpus
from exlogic.lattice import boolean_lattice, chain, from_covers
from exlogic.lattice_io import bundled


@pytest.fixture(scope="session")
def refutes_cl():
    return bundled("refutes_cl")


@pytest.fixture(scope="session")
def refutes_vi():
    return bundled("refutes_vi")


@pytest.fixture(scope="session")
def refutes_nu():
    return bundled("refutes_nu")


@pytest.fixture(scope="session")
def three_chain():
    return chain(3, ["0", "m", "1"])


@pytest.fixture(scope="session")
def square():
    return boolean_lattice(("a", "b"))


@pytest.fixture(scope="session")
def benzene():
    """The six-element ortholattice O6, orthomodularity fails on it."""
    return from_covers(
        ["0", "a", "b", "na", "nb", "1"],
        [("0", "a"), ("a", "nb"), ("nb", "1"), ("0", "b"), ("b", "na"), ("na", "1")],
        {"a": "na", "na": "a", "b": "nb", "nb": "b"},
    )


@pytest.fixture(scope="session")
def corpus7():
    return corpus(7)


@pytest.fixture(scope="session")
def ex_lattices():
    return class_corpus(7, "ex")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
