"""Exhaustive generation of small lattices and their weak pseudo-complements.

Lattices of size ``n`` come from lattices of size ``n - 1`` by adding one
join-irreducible element ``j``: pick its unique lower cover ``l`` and the
set ``U`` of elements strictly above it (an up-set inside the strict
up-set of ``l`` containing the top).  Every lattice arises this way since
deleting a join-irreducible element leaves a lattice.  Duplicates are
removed by canonical form.

Weak pseudo-complements on a fixed order are found by backtracking and
reduced modulo the order's automorphisms.
"""

from __future__ import annotations

import csv
import functools
import io
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .classify import FLAGS, LatticeClassReport, classify
from .lattice import FiniteLattice

__all__ = [
    "CeilingError",
    "CanonicalForm",
    "EnumerationSpec",
    "ClassificationTable",
    "DEFAULT_ORDER_CEILING",
    "DEFAULT_FUNDAMENTAL_CEILING",
    "canonical_form",
    "automorphisms",
    "lattices_of_size",
    "enumerate_lattices",
    "enumerate_wpc",
    "fundamental_lattices",
    "corpus",
    "class_corpus",
    "classify_corpus",
    "write_corpus",
    "read_corpus",
    "CLASS_FILTERS",
]

DEFAULT_ORDER_CEILING = 10
DEFAULT_FUNDAMENTAL_CEILING = 8
CEILING_ENV = "EXLOGIC_MAX_SIZE"

CLASS_FILTERS = {
    "fundamental": "is_fundamental",
    "ex": "is_ex",
    "ortho": "is_ortholattice",
    "heyting": "is_heyting",
    "nu": "holds_nu",
    "vi": "holds_vi",
    "cl": "holds_cl",
}


class CeilingError(ValueError):
    """Requested size exceeds the configured ceiling."""


def _ceiling(default: int) -> int:
    raw = os.environ.get(CEILING_ENV)
    return int(raw) if raw else default


def _check_ceiling(max_size: int, default: int) -> None:
    top = _ceiling(default)
    if max_size > top:
        raise CeilingError(f"size {max_size} exceeds the ceiling of {top} (set {CEILING_ENV} to raise it)")


# --------------------------------------------------------------------------
# canonical form

@dataclass(frozen=True, order=True)
class CanonicalForm:
    key: bytes
    order: tuple = field(compare=False)  # order[k] = original index placed at position k

    def hex(self) -> str:
        return self.key.hex()


def _refine(leq: np.ndarray, neg: Optional[np.ndarray], colour: list) -> list:
    """Stable colouring; colour ids are ranks of isomorphism-invariant signatures."""
    n = len(leq)
    below = [np.flatnonzero(leq[:, x]) for x in range(n)]
    above = [np.flatnonzero(leq[x, :]) for x in range(n)]
    pre = [[] for _ in range(n)]
    if neg is not None:
        for x in range(n):
            pre[int(neg[x])].append(x)
    while True:
        sig = []
        for x in range(n):
            s = (
                colour[x],
                tuple(sorted(colour[y] for y in below[x])),
                tuple(sorted(colour[y] for y in above[x])),
            )
            if neg is not None:
                s += (colour[int(neg[x])], tuple(sorted(colour[y] for y in pre[x])))
            sig.append(s)
        ranks = {s: r for r, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(ranks) == len(set(colour)):
            return new
        colour = new


def _encode(leq: np.ndarray, neg: Optional[np.ndarray], order: Sequence[int]) -> bytes:
    o = np.asarray(order)
    key = np.packbits(leq[np.ix_(o, o)]).tobytes()
    if neg is not None:
        inv = np.empty_like(o)
        inv[o] = np.arange(len(o))
        key += bytes(int(v) for v in inv[neg[o]])
    return key


def _swap_is_automorphism(leq, neg, a, b) -> bool:
    p = np.arange(len(leq))
    p[a], p[b] = b, a
    if not (leq[np.ix_(p, p)] == leq).all():
        return False
    return neg is None or bool((p[neg[p]] == neg).all())


def canonical_form(leq: np.ndarray, neg: Optional[np.ndarray] = None) -> CanonicalForm:
    """Least encoding of ``(leq, neg)`` over all relabellings.

    Search is individualize-and-refine; a cell whose members are pairwise
    swappable by automorphisms is split on its first member only.
    """
    leq = np.asarray(leq, dtype=bool)
    neg = None if neg is None else np.asarray(neg, dtype=np.int64)
    n = len(leq)
    start = [int(leq[:, x].sum()) * (n + 1) + (n - int(leq[x, :].sum())) for x in range(n)]
    best: list = [None, None]

    def go(colour):
        colour = _refine(leq, neg, colour)
        cells: dict = {}
        for x, c in enumerate(colour):
            cells.setdefault(c, []).append(x)
        if len(cells) == n:
            order = tuple(sorted(range(n), key=lambda x: colour[x]))
            key = _encode(leq, neg, order)
            if best[0] is None or key < best[0]:
                best[0], best[1] = key, order
            return
        c = min(c for c, xs in cells.items() if len(xs) > 1)
        cell = cells[c]
        first = cell[0]
        branch = cell
        if all(_swap_is_automorphism(leq, neg, first, v) for v in cell[1:]):
            branch = [first]
        for v in branch:
            # v keeps a colour just below the rest of its cell
            go([2 * k + (1 if (k == c and x != v) else 0) for x, k in enumerate(colour)])

    go(start)
    return CanonicalForm(best[0], best[1])


def automorphisms(leq: np.ndarray, neg: Optional[np.ndarray] = None) -> np.ndarray:
    """All permutations ``p`` with ``leq[p][:, p] == leq`` (and commuting with ``neg``), one per row."""
    leq = np.asarray(leq, dtype=bool)
    n = len(leq)
    colour = _refine(leq, neg, [int(leq[:, x].sum()) for x in range(n)])
    out = []
    img = [-1] * n
    used = [False] * n

    def go(i):
        if i == n:
            p = np.array(img)
            if neg is None or (p[neg] == np.asarray(neg)[p]).all():
                out.append(p)
            return
        for y in range(n):
            if used[y] or colour[y] != colour[i]:
                continue
            if all(leq[i, k] == leq[y, img[k]] and leq[k, i] == leq[img[k], y] for k in range(i)):
                img[i] = y
                used[y] = True
                go(i + 1)
                used[y] = False
        img[i] = -1

    go(0)
    return np.array(out, dtype=np.int64).reshape(len(out), n)


# --------------------------------------------------------------------------
# lattice orders

def _names(n: int) -> list[str]:
    if n == 1:
        return ["0"]
    inner = [chr(ord("a") + i) for i in range(n - 2)]
    return ["0"] + inner + ["1"]


def _meet_table(leq: np.ndarray) -> np.ndarray:
    # in a lattice the meet is the common lower bound with the largest down-set
    size = leq.sum(axis=0)
    common = leq.T[:, None, :] & leq.T[None, :, :]
    return np.where(common, size[None, None, :], -1).argmax(axis=2)


def _antichains(inc: np.ndarray, elems: list[int]) -> Iterator[list[int]]:
    """Nonempty antichains of ``elems`` under the incomparability matrix ``inc``."""
    m = len(elems)

    def go(start, chosen):
        for t in range(start, m):
            e = elems[t]
            if all(inc[e, c] for c in chosen):
                chosen.append(e)
                yield list(chosen)
                yield from go(t + 1, chosen)
                chosen.pop()

    yield from go(0, [])


def _extensions(leq: np.ndarray) -> Iterator[np.ndarray]:
    n = len(leq)
    top = int(np.flatnonzero(leq.all(axis=0))[0])
    meet = _meet_table(leq)
    inc = ~(leq | leq.T)
    for l in range(n):
        if l == top:
            continue
        ups = [x for x in range(n) if leq[l, x] and x != l]
        for mins in _antichains(inc, ups):
            U = leq[mins, :].any(axis=0)
            # meets inside U fall in U or below l
            uu = np.flatnonzero(U)
            M = meet[np.ix_(uu, uu)]
            if not (U[M] | leq[M, l]).all():
                continue
            # every element has a least upper bound with j
            A = U[None, :] & leq
            has_min = (A[:, :, None] & (~A[:, None, :] | leq[None, :, :])).all(axis=2) & A
            outside = ~leq[:, l] & ~U
            if not has_min.any(axis=1)[outside].all():
                continue
            big = np.zeros((n + 1, n + 1), dtype=bool)
            big[:n, :n] = leq
            big[n, n] = True
            big[:n, n] = leq[:, l]
            big[n, :n] = U
            yield big


@functools.lru_cache(maxsize=None)
def _orders(n: int) -> tuple:
    """Canonical order matrices of all lattices of size ``n``, sorted by key."""
    if n == 1:
        return (np.ones((1, 1), dtype=bool),)
    if n == 2:
        return (np.array([[True, True], [False, True]]),)
    found: dict = {}
    for small in _orders(n - 1):
        for big in _extensions(small):
            cf = canonical_form(big)
            if cf.key not in found:
                o = np.asarray(cf.order)
                m = big[np.ix_(o, o)]
                m.setflags(write=False)
                found[cf.key] = m
    return tuple(found[k] for k in sorted(found))


def lattices_of_size(n: int) -> list[FiniteLattice]:
    _check_ceiling(n, DEFAULT_ORDER_CEILING)
    out = []
    for leq in _orders(n):
        key = canonical_form(leq).hex()
        out.append(FiniteLattice(_names(n), leq, None, {"key": key, "size": n}))
    return out


def enumerate_lattices(max_size: int, min_size: int = 1) -> Iterator[FiniteLattice]:
    """Every lattice with ``min_size <= size <= max_size`` once, up to isomorphism, in a fixed order."""
    _check_ceiling(max_size, DEFAULT_ORDER_CEILING)
    for n in range(min_size, max_size + 1):
        yield from lattices_of_size(n)


# --------------------------------------------------------------------------
# weak pseudo-complements

def _wpc_maps(lattice: FiniteLattice) -> Iterator[np.ndarray]:
    n = lattice.n
    leq, meet = lattice.leq, lattice.meet
    bot, top = lattice.bottom, lattice.top
    if n == 1:
        yield np.zeros(1, dtype=np.int64)
        return
    neg = [-1] * n
    neg[bot], neg[top] = top, bot
    cands = [[y for y in range(n) if meet[x, y] == bot] for x in range(n)]
    todo = [x for x in range(n) if x not in (bot, top)]

    def consistent(x):
        y = neg[x]
        for z in range(n):
            w = neg[z]
            if w < 0:
                continue
            if leq[x, z] and not leq[w, y]:
                return False
            if leq[z, x] and not leq[y, w]:
                return False
            if w == x and not leq[z, y]:  # z <= ~~z = ~x
                return False
        ny = neg[y]
        return ny < 0 or bool(leq[x, ny])

    def go(k):
        if k == len(todo):
            yield np.array(neg, dtype=np.int64)
            return
        x = todo[k]
        for y in cands[x]:
            neg[x] = y
            if consistent(x):
                yield from go(k + 1)
        neg[x] = -1

    yield from go(0)


def enumerate_wpc(lattice: FiniteLattice, canonicalize: bool = True) -> Iterator[FiniteLattice]:
    """All weak pseudo-complements on ``lattice``'s order, one per automorphism orbit if ``canonicalize``."""
    auts = automorphisms(lattice.leq) if canonicalize else None
    inv = None
    if auts is not None:
        inv = np.argsort(auts, axis=1)
    for k, neg in enumerate(_wpc_maps(lattice)):
        if auts is not None and len(auts) > 1:
            # conjugates p . neg . p^-1; keep neg only if it is the least
            conj = np.take_along_axis(auts, neg[inv], axis=1)
            if any(tuple(c) < tuple(neg) for c in conj.tolist()):
                continue
        meta = dict(lattice.metadata)
        meta["neg"] = k
        yield lattice.with_negation(neg, meta)


def fundamental_lattices(max_size: int, min_size: int = 1) -> Iterator[FiniteLattice]:
    """Every fundamental lattice up to isomorphism, orders first, then negations."""
    _check_ceiling(max_size, DEFAULT_FUNDAMENTAL_CEILING)
    for order in enumerate_lattices(max_size, min_size):
        for lat in enumerate_wpc(order):
            lat.metadata["key"] = canonical_form(lat.leq, lat.neg).hex()
            yield lat


@functools.lru_cache(maxsize=8)
def corpus(max_size: int) -> tuple:
    """Cached tuple of ``(lattice, report)`` for every fundamental lattice up to ``max_size``."""
    return tuple((lat, classify(lat)) for lat in fundamental_lattices(max_size))


def class_corpus(max_size: int, class_name: str) -> list[FiniteLattice]:
    flag = CLASS_FILTERS[class_name]
    return [lat for lat, rep in corpus(max_size) if getattr(rep, flag)]


# --------------------------------------------------------------------------
# classification tables

@dataclass(frozen=True)
class EnumerationSpec:
    max_size: int
    class_filter: Optional[str] = None
    canonicalize: bool = True
    min_size: int = 1

    def __post_init__(self):
        if self.max_size < 2:
            raise ValueError("max_size must be at least 2")
        if self.class_filter is not None and self.class_filter not in CLASS_FILTERS:
            raise ValueError(f"unknown class {self.class_filter!r}; known: {', '.join(CLASS_FILTERS)}")


@dataclass
class ClassificationTable:
    spec: EnumerationSpec
    rows: list  # (key, size, lattice, report)

    def counts(self) -> dict[str, int]:
        """Number of lattices per class combination, keyed ``nu/vi/cl`` style strings."""
        out: dict[str, int] = {}
        for _, _, _, rep in self.rows:
            k = _combo(rep)
            out[k] = out.get(k, 0) + 1
        return dict(sorted(out.items()))

    def flag_counts(self) -> dict[str, int]:
        return {f: sum(bool(getattr(r[3], f)) for r in self.rows) for f in FLAGS}

    def sizes(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for _, n, _, _ in self.rows:
            out[n] = out.get(n, 0) + 1
        return out

    def minimal_examples(self) -> dict[str, FiniteLattice]:
        """Smallest lattice (first in generation order) for each class combination."""
        out: dict[str, FiniteLattice] = {}
        for _, _, lat, rep in self.rows:
            out.setdefault(_combo(rep), lat)
        return dict(sorted(out.items()))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "size", *FLAGS])
        for key, n, _, rep in self.rows:
            w.writerow([key, n, *(int(getattr(rep, f)) for f in FLAGS)])
        return buf.getvalue()


def _combo(rep: LatticeClassReport) -> str:
    parts = [("nu" if rep.holds_nu else "-nu"), ("vi" if rep.holds_vi else "-vi"), ("cl" if rep.holds_cl else "-cl")]
    return " ".join(parts)


def classify_corpus(spec: EnumerationSpec) -> ClassificationTable:
    _check_ceiling(spec.max_size, DEFAULT_FUNDAMENTAL_CEILING)
    flag = CLASS_FILTERS.get(spec.class_filter) if spec.class_filter else None
    rows = []
    if spec.canonicalize:
        source = ((lat, rep) for lat, rep in corpus(spec.max_size) if lat.n >= spec.min_size)
    else:
        source = (
            (lat, classify(lat))
            for order in enumerate_lattices(spec.max_size, spec.min_size)
            for lat in enumerate_wpc(order, canonicalize=False)
        )
    for lat, rep in source:
        if flag and not getattr(rep, flag):
            continue
        # uncanonicalised rows carry only the order's key in their metadata
        key = lat.metadata["key"] if spec.canonicalize else canonical_form(lat.leq, lat.neg).hex()
        rows.append((key, lat.n, lat, rep))
    return ClassificationTable(spec, rows)


# --------------------------------------------------------------------------
# on-disk corpus

def write_corpus(directory, lattices: Iterable[FiniteLattice]) -> int:
    """One lattice file per canonical key; returns the number written."""
    from .lattice_io import dumps

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    count = 0
    for lat in lattices:
        key = lat.metadata.get("key") or canonical_form(lat.leq, lat.neg).hex()
        (d / f"{key}.json").write_text(dumps(lat), encoding="utf-8")
        count += 1
    return count


def read_corpus(directory) -> list[FiniteLattice]:
    from .lattice_io import load

    return [load(p) for p in sorted(Path(directory).glob("*.json"))]
