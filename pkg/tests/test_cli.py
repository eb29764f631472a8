import json
import subprocess
import sys


from exlogic.cli import main
from exlogic.lattice_io import load, parse_dot


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decide_ex_false(capsys):
    code, out, _ = run(capsys, "decide", "~~a |- a", "--logic", "ex")
    assert code == 1
    assert "ortho: valid" in out and "int: invalid" in out


def test_decide_json_is_sorted(capsys):
    code, out, _ = run(capsys, "decide", "a & b |- b", "--logic", "fundamental", "--json")
    data = json.loads(out)
    assert code == 0 and data["valid"] is True and data["exit_code"] == 0
    assert out == json.dumps(data, sort_keys=True, indent=2) + "\n"
    assert "seconds" not in data


def test_decide_trace(capsys):
    code, out, _ = run(capsys, "decide", "a & ~a |- b", "--logic", "fundamental", "--trace")
    assert code == 0 and "derivation:" in out and "(10; 2, 1)" in out


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "decide", "a & |- b")
    assert code == 2 and "parse error" in err


def test_check_lattice(capsys, tmp_path):
    png = tmp_path / "l.png"
    code, out, _ = run(capsys, "check-lattice", "sect5_lattice1", "--plot", str(png))
    assert code == 0
    line = next(x for x in out.splitlines() if x.startswith("holds_cl"))
    assert "no" in line and "a=1" in line and "1 not <= a" in line
    assert png.stat().st_size > 1000


def test_check_lattice_bad_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"elements": ["0", "a", "b", "1"], "covers": [["0", "a"], ["a", "1"], ["0", "b"]]}')
    code, _, err = run(capsys, "check-lattice", str(bad))
    assert code == 2 and "unbounded" in err


def test_countermodel_found(capsys, tmp_path):
    code, out, _ = run(capsys, "countermodel", "|- a | ~a", "--class", "ex", "--max-size", "6",
                       "--out", str(tmp_path), "--json")
    data = json.loads(out)
    assert code == 1
    assert data["witness"]["valuation"] == {"a": "a"}
    assert load(tmp_path / "countermodel.json").n == 3
    assert (tmp_path / "countermodel.png").exists()


def test_countermodel_exhausted(capsys):
    code, out, _ = run(capsys, "countermodel", "~~a |- a", "--class", "ortho", "--max-size", "6")
    assert code == 0 and "exhausted" in out


def test_resource_limit_exit_code(capsys):
    code, _, err = run(capsys, "classify-corpus", "--max-size", "12")
    assert code == 3 and "ceiling" in err


def test_dot(capsys):
    code, out, _ = run(capsys, "dot", "sect5_lattice1")
    g = parse_dot(out)
    assert code == 0 and len(g.solid_edges()) == 9


def test_embed_writes_files(capsys, tmp_path):
    code, out, _ = run(capsys, "embed", "sect5_lattice2", "--out", str(tmp_path), "--plots")
    assert code == 1 and "e identifies b, c" in out
    names = {p.name for p in tmp_path.iterdir()}
    assert {"ortho.json", "heyting.json", "map.csv", "ortho.dot", "heyting.dot", "heyting.png"} <= names
    assert (tmp_path / "map.csv").read_text().splitlines()[0] == "element,ortho,heyting"


def test_embed_verified(capsys, tmp_path):
    from exlogic.lattice import chain
    from exlogic.lattice_io import dump

    dump(chain(4), tmp_path / "c4.json")
    code, out, _ = run(capsys, "embed", str(tmp_path / "c4.json"), "--out", str(tmp_path / "o"))
    assert code == 0 and "embedding verified" in out


def test_translate(capsys, tmp_path):
    (tmp_path / "o.txt").write_text("a | b |- a | ~a & (a | b)\n")
    (tmp_path / "i.txt").write_text("# De Morgan\n|- ~a | ~~a\n")
    code, out, _ = run(capsys, "translate", "--ortho-axioms", str(tmp_path / "o.txt"),
                       "--int-axioms", str(tmp_path / "i.txt"))
    lines = out.splitlines()
    assert code == 0 and len(lines) == 3
    assert lines[0] == "a | b |- ~~(a | ~a & (a | b))"


def test_classify_corpus_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "classify-corpus", "--max-size", "5", "--out", str(tmp_path), "--lattices")
    assert code == 0 and "lattices: 15" in out
    assert len((tmp_path / "classification.csv").read_text().splitlines()) == 16
    assert (tmp_path / "summary.png").exists()
    assert len(list((tmp_path / "lattices").glob("*.json"))) == 15


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--max-size", "6", "--json")
    assert json.loads(out)["counts"] == {"1": 1, "2": 1, "3": 1, "4": 2, "5": 5, "6": 15}
    code, out, _ = run(capsys, "enumerate", "--max-size", "6", "--wpc", "--json")
    assert json.loads(out)["counts"]["6"] == 38


def test_timings_flag(capsys):
    _, out, _ = run(capsys, "decide", "a |- a", "--json", "--timings")
    assert "seconds" in json.loads(out)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "exlogic.cli", "decide", "|- a | ~a", "--logic", "classical"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "classical: valid" in proc.stdout
