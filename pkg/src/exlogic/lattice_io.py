"""Lattice files (JSON), Graphviz DOT output and a reader for that DOT subset.

A lattice file is one JSON object::

    {
      "elements": ["1", "a", "b", "0"],
      "covers": [["a", "1"], ["b", "1"], ["0", "a"], ["0", "b"]],
      "neg": {"1": "0", "a": "b", "b": "a", "0": "1"},
      "metadata": {"name": "square"}
    }

``leq`` may replace ``covers``; ``neg`` may leave out ``0`` and ``1``.  Files
written by :func:`dumps` reload to the same lattice and re-dump to the same
bytes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Union

from .lattice import FiniteLattice, validate

__all__ = [
    "LatticeFileError",
    "loads",
    "dumps",
    "load",
    "dump",
    "bundled",
    "bundled_names",
    "resolve_path",
    "to_dot",
    "DotGraph",
    "parse_dot",
]

# file names used for the three witness lattices in older write-ups
ALIASES = {
    "sect5_lattice1": "refutes_cl",
    "sect5_lattice2": "refutes_vi",
    "sect5_lattice3": "refutes_nu",
}


class LatticeFileError(ValueError):
    """Unreadable lattice file; ``line``/``column`` point into the text when known."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f" (line {line}, column {column})" if line else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


def loads(text: str) -> FiniteLattice:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LatticeFileError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(raw, dict):
        raise LatticeFileError("a lattice file must hold a JSON object")
    return validate(raw)


def _line(key: str, value, last: bool = False) -> str:
    return f"  {json.dumps(key)}: {json.dumps(value, ensure_ascii=False, sort_keys=True)}" + ("" if last else ",")


def dumps(lattice: FiniteLattice) -> str:
    """Canonical text: one key per line, covers sorted by file order."""
    names = lattice.names
    parts = [
        _line("elements", list(names)),
        _line("covers", [[names[i], names[j]] for i, j in sorted(lattice.covers(), key=lambda e: (e[1], e[0]))]),
    ]
    if lattice.neg is not None:
        # file order, not sorted keys
        neg = ", ".join(f"{json.dumps(names[i])}: {json.dumps(names[int(lattice.neg[i])])}" for i in range(lattice.n))
        parts.append(f'  "neg": {{{neg}}},')
    parts.append(_line("metadata", lattice.metadata, last=True))
    return "{\n" + "\n".join(parts) + "\n}\n"


def load(path: Union[str, Path]) -> FiniteLattice:
    p = resolve_path(path)
    return loads(p.read_text(encoding="utf-8"))


def dump(lattice: FiniteLattice, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(lattice), encoding="utf-8")


def _data_dir():
    return resources.files("exlogic") / "data"


def bundled_names() -> list[str]:
    return sorted(p.name[:-5] for p in _data_dir().iterdir() if p.name.endswith(".json"))


def bundled(name: str) -> FiniteLattice:
    name = ALIASES.get(name, name)
    try:
        text = (_data_dir() / f"{name}.json").read_text(encoding="utf-8")
    except FileNotFoundError:
        raise LatticeFileError(f"no bundled lattice named {name!r}; have {', '.join(bundled_names())}") from None
    return loads(text)


def resolve_path(path: Union[str, Path]) -> Path:
    """Use ``path`` if it exists, else fall back to a bundled file of the same stem."""
    p = Path(path)
    if p.exists():
        return p
    stem = p.name[:-5] if p.name.endswith(".json") else p.name
    stem = ALIASES.get(stem, stem)
    candidate = _data_dir() / f"{stem}.json"
    if candidate.is_file():
        return Path(str(candidate))
    raise FileNotFoundError(f"no such lattice file: {path}")


# --------------------------------------------------------------------------
# DOT

def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(lattice: FiniteLattice, name: str = "lattice") -> str:
    """Hasse edges solid (drawn upward), negation dashed red.

    ``~0 = 1`` and ``~1 = 0`` are left out; mutual pairs ``~x = y, ~y = x`` become
    one two-headed edge.
    """
    names = lattice.names
    lines = [f"digraph {_q(name)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for x in names:
        lines.append(f"  {_q(x)};")
    for i, j in sorted(lattice.covers(), key=lambda e: (e[1], e[0])):
        lines.append(f"  {_q(names[i])} -> {_q(names[j])} [style=solid];")
    if lattice.neg is not None:
        ends = {lattice.bottom, lattice.top}
        done = set()
        for i in range(lattice.n):
            j = int(lattice.neg[i])
            if i in ends and j in ends or i in done:
                continue
            if i != j and int(lattice.neg[j]) == i:
                done.add(j)
                lines.append(
                    f"  {_q(names[i])} -> {_q(names[j])} [style=dashed, color=red, dir=both, constraint=false];"
                )
            else:
                lines.append(f"  {_q(names[i])} -> {_q(names[j])} [style=dashed, color=red, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass
class DotGraph:
    name: str
    nodes: list = field(default_factory=list)
    edges: list = field(default_factory=list)  # (tail, head, attrs)

    def solid_edges(self) -> list[tuple[str, str]]:
        return [(a, b) for a, b, at in self.edges if at.get("style", "solid") == "solid"]

    def dashed_edges(self) -> list[tuple[str, str, bool]]:
        return [(a, b, at.get("dir") == "both") for a, b, at in self.edges if at.get("style") == "dashed"]


_DOT_TOKEN = re.compile(r'\s*(?:("(?:[^"\\]|\\.)*")|(->|--)|([{}\[\];=,])|([A-Za-z_0-9.]+))')


def _dot_tokens(text: str):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _DOT_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise LatticeFileError(f"bad DOT input at offset {pos}")
        pos = m.end()
        if m.group(1) is not None:
            yield ("id", re.sub(r"\\(.)", r"\1", m.group(1)[1:-1]))
        elif m.group(4) is not None:
            yield ("id", m.group(4))
        else:
            yield ("op", m.group(2) or m.group(3))


def parse_dot(text: str) -> DotGraph:
    """Read the digraph subset written by :func:`to_dot`.

    Supports ``digraph ID { stmt; ... }`` with node statements, single edge
    statements, attribute lists and graph/node default attributes.
    """
    toks = list(_dot_tokens(text))
    k = 0

    def take(kind=None, value=None):
        nonlocal k
        if k >= len(toks):
            raise LatticeFileError("unexpected end of DOT input")
        t = toks[k]
        if (kind and t[0] != kind) or (value and t[1] != value):
            raise LatticeFileError(f"expected {value or kind}, got {t[1]!r}")
        k += 1
        return t[1]

    def attrs():
        out = {}
        take("op", "[")
        while toks[k] != ("op", "]"):
            key = take("id")
            take("op", "=")
            out[key] = take("id")
            if toks[k] == ("op", ","):
                take()
        take("op", "]")
        return out

    if take("id") != "digraph":
        raise LatticeFileError("expected 'digraph'")
    g = DotGraph(take("id") if toks[k][0] == "id" else "")
    take("op", "{")
    while toks[k] != ("op", "}"):
        head = take("id")
        if k < len(toks) and toks[k] == ("op", "="):
            take()
            take("id")
        elif head in ("node", "edge", "graph"):
            attrs()
        elif toks[k] == ("op", "->"):
            take()
            tail = take("id")
            g.edges.append((head, tail, attrs() if toks[k] == ("op", "[") else {}))
        else:
            if toks[k] == ("op", "["):
                attrs()
            g.nodes.append(head)
        if toks[k] == ("op", ";"):
            take()
    take("op", "}")
    if k != len(toks):
        raise LatticeFileError("trailing input after the closing brace")
    return g
