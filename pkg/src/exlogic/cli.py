"""Command-line interface.

Exit codes: 0 verdict true or success, 1 verdict false or witness found,
2 input error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .axioms import AxiomatizationPair, format_axiom_list, parse_axiom_list, translate
from .classify import FLAGS, classify
from .constructions import CarrierLimitError, PreconditionError, ex_embedding
from .enumeration import CLASS_FILTERS, CeilingError, EnumerationSpec, class_corpus, classify_corpus, write_corpus
from .formula import ParseError, parse_sequent, to_text
from .lattice import LatticeError
from .lattice_io import LatticeFileError, dump, dumps, load, to_dot
from .model_check import ResourceLimitError, countermodel_search
from .provers import LogicId, decide_classical, decide_ex, decide_fundamental, decide_int, decide_ortho, saturate

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class _Report:
    """Collects a run's output; prints text lines or one JSON document."""

    def __init__(self, args, argv):
        self.as_json = getattr(args, "json", False)
        self.timings = getattr(args, "timings", False)
        self.data: dict = {"command": list(argv)}
        self.lines: list[str] = []
        self.t0 = time.perf_counter()

    def put(self, key, value):
        self.data[key] = value

    def say(self, line: str = ""):
        self.lines.append(line)

    def emit(self, out=None):
        out = out or sys.stdout
        if self.timings:
            self.data["seconds"] = round(time.perf_counter() - self.t0, 4)
        if self.as_json:
            out.write(json.dumps(self.data, sort_keys=True, indent=2) + "\n")
        else:
            if self.timings:
                self.lines.append(f"time: {self.data['seconds']:.3f} s")
            out.write("".join(line + "\n" for line in self.lines))


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def _fmt_witness(w: dict) -> str:
    if "valuation" in w:
        val = " ".join(f"{k}={v}" for k, v in w["valuation"].items())
        return f"{val}; {w['lhs']} not <= {w['rhs']}"
    return " ".join(f"{k}={v}" for k, v in w.items())


# --------------------------------------------------------------------------
# commands

def cmd_check_lattice(args, rep: _Report) -> int:
    lat = load(args.path)
    r = classify(lat)
    rep.put("lattice", lat.metadata.get("name", Path(args.path).stem))
    rep.put("size", lat.n)
    rep.put("flags", r.flags())
    rep.put("witnesses", r.witnesses)
    rep.say(f"lattice: {rep.data['lattice']} ({lat.n} elements)")
    for f in FLAGS:
        line = f"{f:22s}{_yes(getattr(r, f))}"
        if f in r.witnesses:
            line += "   " + _fmt_witness(r.witnesses[f])
        rep.say(line)
    if args.plot:
        from .plotting import plot_hasse

        plot_hasse(lat, args.plot, title=rep.data["lattice"])
        rep.say(f"wrote {args.plot}")
    return EXIT_OK


def cmd_decide(args, rep: _Report) -> int:
    s = parse_sequent(args.sequent)
    logic = LogicId(args.logic)
    rep.put("sequent", to_text(s))
    rep.put("logic", logic.value)
    if logic is LogicId.EX:
        v = decide_ex(s)
        valid = v.valid
        rep.put("ortho", v.ortho)
        rep.put("int", v.int)
        rep.say(f"ortho: {'valid' if v.ortho else 'invalid'}")
        rep.say(f"int: {'valid' if v.int else 'invalid'}")
    elif logic is LogicId.FUNDAMENTAL:
        valid = decide_fundamental(s, args.depth)
    elif logic is LogicId.ORTHO:
        valid = decide_ortho(s, args.depth)
    elif logic is LogicId.INT:
        valid = decide_int(s)
    else:
        valid = decide_classical(s)
    rep.put("valid", valid)
    rep.say(f"{logic.value}: {'valid' if valid else 'invalid'}  {to_text(s)}")
    if args.trace and logic in (LogicId.FUNDAMENTAL, LogicId.ORTHO) and valid:
        trace = saturate(s, logic, args.depth).explain()
        rep.put("trace", trace)
        rep.say("derivation:")
        for line in trace:
            rep.say("  " + line)
    return EXIT_OK if valid else EXIT_FALSE


def cmd_embed(args, rep: _Report) -> int:
    lat = load(args.path)
    res = ex_embedding(lat)
    d = res.diagnostics
    ex = classify(lat).is_ex
    name = lat.metadata.get("name", Path(args.path).stem)
    rep.put("lattice", name)
    rep.put("is_ex", ex)
    rep.put("diagnostics", {k: d[k] for k in sorted(d)})
    rep.put("map", {k: list(v) for k, v in res.named_map().items()})
    rep.say(f"lattice: {name} ({lat.n} elements)")
    rep.say(f"Ex-lattice: {_yes(ex)}")
    rep.say(f"~ is a congruence: {_yes(res.congruence.compatible)}")
    for k in ("homomorphism", "injective", "order_reflecting", "ortho_is_ortholattice", "heyting_is_heyting"):
        rep.say(f"{k:22s}{_yes(d[k])}")
    if d["violation"]:
        rep.say(f"violation: {d['violation']}")
    for group in d["identified"]:
        rep.say("e identifies " + ", ".join(group))
    if not ex:
        rep.say("not an Ex-lattice")
    out = Path(args.out) if args.out else Path(f"{Path(args.path).stem}-embedding")
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if res.ortho_part is not None:
        dump(res.ortho_part, out / "ortho.json")
        (out / "ortho.dot").write_text(to_dot(res.ortho_part, "ortho"), encoding="utf-8")
        written += ["ortho.json", "ortho.dot"]
    dump(res.heyting_part, out / "heyting.json")
    (out / "heyting.dot").write_text(to_dot(res.heyting_part, "heyting"), encoding="utf-8")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["element", "ortho", "heyting"])
    for k, (o, h) in res.named_map().items():
        w.writerow([k, o, h])
    (out / "map.csv").write_text(buf.getvalue(), encoding="utf-8")
    written += ["heyting.json", "heyting.dot", "map.csv"]
    if args.plots:
        from .plotting import plot_hasse

        plot_hasse(lat, out / "source.png", title=name)
        plot_hasse(res.heyting_part, out / "heyting.png", title="down-set algebra")
        written += ["source.png", "heyting.png"]
        if res.ortho_part is not None:
            plot_hasse(res.ortho_part, out / "ortho.png", title="quotient")
            written.append("ortho.png")
    rep.put("written", [str(out / f) for f in written])
    rep.say(f"wrote {', '.join(written)} to {out}")
    if res.verified:
        rep.say("embedding verified")
        return EXIT_OK
    return EXIT_FALSE


def cmd_translate(args, rep: _Report) -> int:
    ortho = parse_axiom_list(Path(args.ortho_axioms).read_text(encoding="utf-8")) if args.ortho_axioms else []
    intu = parse_axiom_list(Path(args.int_axioms).read_text(encoding="utf-8")) if args.int_axioms else []
    out = translate(AxiomatizationPair(ortho, intu))
    rep.put("axioms", [to_text(s) for s in out])
    for line in format_axiom_list(out).splitlines():
        rep.say(line)
    return EXIT_OK


def cmd_countermodel(args, rep: _Report) -> int:
    s = parse_sequent(args.sequent)
    lattices = class_corpus(args.max_size, args.cls)
    rep.put("sequent", to_text(s))
    rep.put("class", args.cls)
    rep.put("max_size", args.max_size)
    found = countermodel_search(s, lattices)
    if found:  # Exhausted is truthy, witnesses are falsy
        rep.put("exhausted", found.checked)
        rep.say(f"exhausted: no countermodel among {found.checked} {args.cls} lattices of size <= {args.max_size}")
        return EXIT_OK
    lat = found.lattice
    rep.put("witness", {"lattice": json.loads(dumps(lat)), **found.as_dict()})
    rep.say(f"countermodel: {args.cls} lattice of size {lat.n} (key {lat.metadata.get('key', '?')})")
    rep.say(f"valuation: {_fmt_witness(found.as_dict())}")
    rep.say("lattice: " + dumps(lat).replace("\n", " ").replace("  ", " ").strip())
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        dump(lat, out / "countermodel.json")
        from .plotting import plot_hasse

        plot_hasse(lat, out / "countermodel.png", title=to_text(s))
        rep.say(f"wrote countermodel.json, countermodel.png to {out}")
    return EXIT_FALSE


def cmd_dot(args, rep: _Report) -> int:
    lat = load(args.path)
    text = to_dot(lat, lat.metadata.get("name", Path(args.path).stem))
    rep.put("dot", text)
    rep.lines.append(text.rstrip("\n"))
    return EXIT_OK


def cmd_classify_corpus(args, rep: _Report) -> int:
    spec = EnumerationSpec(args.max_size, args.cls)
    table = classify_corpus(spec)
    rep.put("max_size", args.max_size)
    rep.put("class", args.cls)
    rep.put("total", len(table.rows))
    rep.put("sizes", {str(k): v for k, v in table.sizes().items()})
    rep.put("flag_counts", table.flag_counts())
    rep.put("combinations", table.counts())
    minimal = {k: {"size": v.n, "key": v.metadata.get("key")} for k, v in table.minimal_examples().items()}
    rep.put("minimal_examples", minimal)
    rep.say(f"lattices: {len(table.rows)} (size <= {args.max_size}{', class ' + args.cls if args.cls else ''})")
    rep.say("per size: " + ", ".join(f"{k}:{v}" for k, v in table.sizes().items()))
    for k, v in table.flag_counts().items():
        rep.say(f"{k:22s}{v}")
    for k, v in table.counts().items():
        rep.say(f"{k:14s}{v:6d}   smallest size {minimal[k]['size']}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "classification.csv").write_text(table.to_csv(), encoding="utf-8")
        written = ["classification.csv"]
        if not args.no_plots:
            from .plotting import plot_corpus_summary

            plot_corpus_summary(table, out / "summary.png")
            written.append("summary.png")
        if args.lattices:
            write_corpus(out / "lattices", (r[2] for r in table.rows))
            written.append("lattices/")
        rep.say(f"wrote {', '.join(written)} to {out}")
    return EXIT_OK


def cmd_enumerate(args, rep: _Report) -> int:
    from .enumeration import enumerate_wpc, lattices_of_size

    sizes = {}
    for n in range(1, args.max_size + 1):
        orders = lattices_of_size(n)
        count = len(orders) if not args.wpc else sum(1 for o in orders for _ in enumerate_wpc(o))
        sizes[str(n)] = count
        rep.say(f"{n:3d} {count}")
    rep.put("kind", "fundamental" if args.wpc else "lattice")
    rep.put("counts", sizes)
    return EXIT_OK


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="exlogic", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON report instead of text")
    common.add_argument("--timings", action="store_true", help="include wall-clock time in the report")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-lattice", parents=[common], help="classify a lattice file")
    s.add_argument("path")
    s.add_argument("--plot", metavar="PNG", help="also draw the Hasse diagram")
    s.set_defaults(func=cmd_check_lattice)

    s = sub.add_parser("decide", parents=[common], help="decide a sequent in one logic")
    s.add_argument("sequent")
    s.add_argument("--logic", choices=[x.value for x in LogicId], default="ex")
    s.add_argument("--trace", action="store_true", help="print a derivation (fundamental/ortho)")
    s.add_argument("--depth", type=int, default=2, help="negation depth of the saturation universe")
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("embed", parents=[common], help="build and check the embedding of a lattice")
    s.add_argument("path")
    s.add_argument("--out", help="output directory (default: <stem>-embedding)")
    s.add_argument("--plots", action="store_true", help="draw the three lattices as PNG")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("translate", parents=[common], help="axioms for the common validities of two extensions")
    s.add_argument("--ortho-axioms", metavar="FILE")
    s.add_argument("--int-axioms", metavar="FILE")
    s.set_defaults(func=cmd_translate)

    s = sub.add_parser("countermodel", parents=[common], help="search enumerated lattices for a countermodel")
    s.add_argument("sequent")
    s.add_argument("--max-size", type=int, default=6)
    s.add_argument("--class", dest="cls", choices=sorted(CLASS_FILTERS), default="ex")
    s.add_argument("--out", help="write the witness lattice and its diagram here")
    s.set_defaults(func=cmd_countermodel)

    s = sub.add_parser("dot", parents=[common], help="Graphviz DOT for a lattice file")
    s.add_argument("path")
    s.set_defaults(func=cmd_dot)

    s = sub.add_parser("classify-corpus", parents=[common], help="classify every fundamental lattice up to a size")
    s.add_argument("--max-size", type=int, default=6)
    s.add_argument("--class", dest="cls", choices=sorted(CLASS_FILTERS))
    s.add_argument("--out", help="write classification.csv and summary.png here")
    s.add_argument("--lattices", action="store_true", help="also write one lattice file per canonical key")
    s.add_argument("--no-plots", action="store_true")
    s.set_defaults(func=cmd_classify_corpus)

    s = sub.add_parser("enumerate", parents=[common], help="count lattices (or fundamental lattices) per size")
    s.add_argument("--max-size", type=int, default=7)
    s.add_argument("--wpc", action="store_true", help="count fundamental lattices instead of orders")
    s.set_defaults(func=cmd_enumerate)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = _Report(args, argv)
    try:
        code = args.func(args, rep)
    except (ResourceLimitError, CeilingError, CarrierLimitError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (LatticeError, LatticeFileError, PreconditionError, FileNotFoundError, OSError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rep.put("exit_code", code)
    rep.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
