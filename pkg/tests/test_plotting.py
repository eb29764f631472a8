from exlogic.enumeration import EnumerationSpec, classify_corpus
from exlogic.plotting import hasse_layout, plot_corpus_summary, plot_hasse


def test_layout_levels_follow_heights(refutes_cl):
    pos = hasse_layout(refutes_cl)
    h = refutes_cl.heights()
    assert all(pos[i][1] == h[i] for i in range(refutes_cl.n))
    assert pos[refutes_cl.top][0] == 0.0


def test_layout_spreads_siblings(square):
    pos = hasse_layout(square)
    assert pos[1][1] == pos[2][1] and pos[1][0] != pos[2][0]


def test_hasse_png(tmp_path, refutes_nu):
    out = plot_hasse(refutes_nu, tmp_path / "nu.png", title="nu")
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_corpus_summary_png(tmp_path):
    out = plot_corpus_summary(classify_corpus(EnumerationSpec(5)), tmp_path / "s.png")
    assert out.stat().st_size > 1000
