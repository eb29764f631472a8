"""Finite bounded lattices carrying a unary negation map.

A :class:`FiniteLattice` stores its order as a boolean matrix together with
precomputed meet/join tables.  Elements are addressed by index internally
and by name at the edges (files, reports).  When a negation map is present
it must be a weak pseudo-complement, i.e. antitone, semi-complementing
(``a & ~a = 0``) and double-negation introducing (``a <= ~~a``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

__all__ = [
    "LatticeError",
    "FiniteLattice",
    "OrderedPairLattice",
    "HomomorphismReport",
    "validate",
    "from_covers",
    "chain",
    "boolean_lattice",
    "product",
    "is_homomorphism",
    "negation_violation",
]


class LatticeError(ValueError):
    """A lattice description violates a named law.

    ``law`` is one of ``not-a-poset``, ``unbounded``, ``missing-meet``,
    ``missing-join``, ``negation-not-total``, ``negation-contradiction``,
    ``antitonicity``, ``semi-complementation``,
    ``double-negation-introduction`` or ``malformed``.
    """

    def __init__(self, law: str, detail: str):
        super().__init__(f"{law}: {detail}")
        self.law = law
        self.detail = detail


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def _transitive_closure(rel: np.ndarray) -> np.ndarray:
    closed = rel.copy()
    n = len(closed)
    for k in range(n):
        closed |= closed[:, k : k + 1] & closed[k : k + 1, :]
    return closed


def _bound_table(leq: np.ndarray, lower: bool) -> Optional[tuple[np.ndarray, tuple[int, int]]]:
    """Greatest lower (or least upper) bounds; returns (table, None) or (None, failing pair)."""
    n = len(leq)
    rel = leq if lower else leq.T
    # bounds[i, j, x] : x is a lower bound of i and j
    bounds = rel.T[:, None, :] & rel.T[None, :, :]
    height = rel.sum(axis=0)  # |down-set| (or |up-set|)
    score = np.where(bounds, height[None, None, :], -1)
    cand = score.argmax(axis=2)
    # the candidate must sit above every other common bound
    ok = (bounds <= rel[np.arange(n)[None, None, :], cand[:, :, None]]).all(axis=2)
    ok &= bounds.any(axis=2)
    if not ok.all():
        i, j = map(int, np.argwhere(~ok)[0])
        return None, (i, j)
    return cand.astype(np.int64), None


def negation_violation(leq: np.ndarray, meet: np.ndarray, neg: np.ndarray, bottom: int):
    """Return ``(law, witness)`` for the first failed weak pseudo-complement law, else ``None``."""
    n = len(leq)
    idx = np.arange(n)
    bad = meet[idx, neg] != bottom
    if bad.any():
        return "semi-complementation", (int(np.argmax(bad)),)
    # antitonicity: a <= b  ==>  ~b <= ~a
    bad = leq & ~leq[neg[None, :], neg[:, None]]
    if bad.any():
        a, b = map(int, np.argwhere(bad)[0])
        return "antitonicity", (a, b)
    bad = ~leq[idx, neg[neg]]
    if bad.any():
        return "double-negation-introduction", (int(np.argmax(bad)),)
    return None


class FiniteLattice:
    """A validated finite bounded lattice, optionally with a weak pseudo-complement.

    Parameters
    ----------
    names:
        Element names in file order; the order fixes valuation enumeration.
    leq:
        ``n x n`` boolean matrix, ``leq[i, j]`` iff element ``i <= j``.  It is
        checked to be a partial order with binary meets and joins.
    neg:
        Optional integer array, ``neg[i]`` is the index of ``~i``.
    """

    def __init__(
        self,
        names: Sequence[str],
        leq: np.ndarray,
        neg: Optional[Sequence[int]] = None,
        metadata: Optional[Mapping] = None,
    ):
        names = tuple(str(x) for x in names)
        n = len(names)
        if n == 0:
            raise LatticeError("malformed", "a lattice needs at least one element")
        if len(set(names)) != n:
            raise LatticeError("malformed", "duplicate element names")
        leq = np.asarray(leq, dtype=bool)
        if leq.shape != (n, n):
            raise LatticeError("malformed", f"order matrix has shape {leq.shape}, expected {(n, n)}")
        if not leq.diagonal().all():
            raise LatticeError("not-a-poset", "order is not reflexive")
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            i, j = np.argwhere(leq & leq.T & ~np.eye(n, dtype=bool))[0]
            raise LatticeError("not-a-poset", f"{names[i]} <= {names[j]} <= {names[i]}")
        if (_transitive_closure(leq) != leq).any():
            raise LatticeError("not-a-poset", "order is not transitive")
        bottoms = np.flatnonzero(leq.all(axis=1))
        tops = np.flatnonzero(leq.all(axis=0))
        if len(bottoms) != 1 or len(tops) != 1:
            raise LatticeError("unbounded", "no least or no greatest element")
        meet, bad = _bound_table(leq, lower=True)
        if bad is not None:
            raise LatticeError("missing-meet", f"{names[bad[0]]} and {names[bad[1]]} have no meet")
        join, bad = _bound_table(leq, lower=False)
        if bad is not None:
            raise LatticeError("missing-join", f"{names[bad[0]]} and {names[bad[1]]} have no join")

        self.names = names
        self.n = n
        self.index = {x: i for i, x in enumerate(names)}
        self.leq = _frozen(leq)
        self.meet = _frozen(meet)
        self.join = _frozen(join)
        self.bottom = int(bottoms[0])
        self.top = int(tops[0])
        self.metadata = dict(metadata or {})
        self.neg = None
        if neg is not None:
            neg = np.asarray(neg, dtype=np.int64)
            if neg.shape != (n,) or (neg < 0).any() or (neg >= n).any():
                raise LatticeError("negation-not-total", "negation must map every element into the lattice")
            found = negation_violation(self.leq, self.meet, neg, self.bottom)
            if found is not None:
                law, w = found
                raise LatticeError(law, "violated at " + ", ".join(names[i] for i in w))
            self.neg = _frozen(neg)

    # -- element helpers ---------------------------------------------------

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        kind = "FiniteLattice" if self.neg is None else "FundamentalLattice"
        return f"<{kind} n={self.n} {list(self.names)}>"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        same_neg = (self.neg is None) == (other.neg is None) and (
            self.neg is None or np.array_equal(self.neg, other.neg)
        )
        return self.names == other.names and np.array_equal(self.leq, other.leq) and same_neg

    __hash__ = None

    def idx(self, x) -> int:
        return x if isinstance(x, (int, np.integer)) else self.index[x]

    def le(self, a, b) -> bool:
        return bool(self.leq[self.idx(a), self.idx(b)])

    def meet_of(self, a, b) -> str:
        return self.names[self.meet[self.idx(a), self.idx(b)]]

    def join_of(self, a, b) -> str:
        return self.names[self.join[self.idx(a), self.idx(b)]]

    def neg_of(self, a) -> str:
        if self.neg is None:
            raise LatticeError("negation-not-total", "lattice carries no negation")
        return self.names[self.neg[self.idx(a)]]

    @property
    def has_negation(self) -> bool:
        return self.neg is not None

    def covers(self) -> list[tuple[int, int]]:
        """Hasse edges ``(lower, upper)`` sorted by file order."""
        lt = self.leq & ~np.eye(self.n, dtype=bool)
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        cov = lt & ~between
        return [(int(i), int(j)) for i, j in np.argwhere(cov)]

    def heights(self) -> np.ndarray:
        """Length of the longest chain from the bottom to each element."""
        h = np.zeros(self.n, dtype=np.int64)
        # x < y implies |down(x)| < |down(y)|, so this order is topological
        for lo, hi in sorted(self.covers(), key=lambda e: self.leq[:, e[0]].sum()):
            h[hi] = max(h[hi], h[lo] + 1)
        return h

    def with_negation(self, neg: Sequence[int], metadata: Optional[Mapping] = None) -> "FiniteLattice":
        return FiniteLattice(self.names, self.leq, neg, metadata if metadata is not None else self.metadata)

    def renamed(self, names: Sequence[str]) -> "FiniteLattice":
        return FiniteLattice(names, self.leq, self.neg, self.metadata)

    def permuted(self, order: Sequence[int], names: Optional[Sequence[str]] = None) -> "FiniteLattice":
        """Relabel so that new element ``k`` is old element ``order[k]``."""
        order = np.asarray(order)
        inv = np.empty_like(order)
        inv[order] = np.arange(len(order))
        neg = None if self.neg is None else inv[self.neg[order]]
        new_names = [self.names[i] for i in order] if names is None else names
        return FiniteLattice(new_names, self.leq[np.ix_(order, order)], neg, self.metadata)


class OrderedPairLattice(FiniteLattice):
    """Componentwise product; element ``k`` is the pair ``pairs[k]`` of indices."""

    def __init__(self, left: FiniteLattice, right: FiniteLattice):
        pairs = [(i, j) for i in range(left.n) for j in range(right.n)]
        names = [f"({left.names[i]},{right.names[j]})" for i, j in pairs]
        leq = (left.leq[:, None, :, None] & right.leq[None, :, None, :]).reshape(
            left.n * right.n, left.n * right.n
        )
        neg = None
        if left.neg is not None and right.neg is not None:
            neg = (left.neg[:, None] * right.n + right.neg[None, :]).reshape(-1)
        super().__init__(names, leq, neg)
        self.left = left
        self.right = right
        self.pairs = pairs

    def pair_index(self, i: int, j: int) -> int:
        return i * self.right.n + j


def product(a: FiniteLattice, b: FiniteLattice) -> OrderedPairLattice:
    return OrderedPairLattice(a, b)


def from_covers(
    names: Sequence[str],
    covers: Iterable[tuple[str, str]],
    neg: Optional[Mapping[str, str]] = None,
    metadata: Optional[Mapping] = None,
) -> FiniteLattice:
    """Build from Hasse edges ``(lower, upper)`` and a (possibly partial) negation map."""
    return validate({"elements": list(names), "covers": [list(c) for c in covers],
                     "neg": dict(neg) if neg is not None else None, "metadata": metadata or {}})


def validate(description: Mapping) -> FiniteLattice:
    """Turn a raw description into a :class:`FiniteLattice`.

    ``description`` has keys ``elements``, one of ``covers`` / ``leq`` (lists
    of ``[lower, upper]`` name pairs, transitively closed here), optional
    ``neg`` (name -> name) and ``metadata``.  Missing ``~0 = 1`` and ``~1 = 0``
    entries are filled in; a contradicting entry is an error.
    """
    try:
        names = [str(x) for x in description["elements"]]
    except (KeyError, TypeError):
        raise LatticeError("malformed", "description needs an 'elements' list") from None
    index = {x: i for i, x in enumerate(names)}
    if len(index) != len(names):
        raise LatticeError("malformed", "duplicate element names")
    n = len(names)
    if "covers" in description and "leq" in description:
        raise LatticeError("malformed", "give either 'covers' or 'leq', not both")
    edges = description.get("covers", description.get("leq", []))
    rel = np.eye(n, dtype=bool)
    for e in edges:
        try:
            lo, hi = e
            rel[index[str(lo)], index[str(hi)]] = True
        except KeyError as exc:
            raise LatticeError("malformed", f"unknown element {exc.args[0]!r} in order") from None
        except (TypeError, ValueError):
            raise LatticeError("malformed", f"order entry {e!r} is not a pair") from None
    rel = _transitive_closure(rel)
    bare = FiniteLattice(names, rel, None, description.get("metadata"))
    raw_neg = description.get("neg")
    if raw_neg is None:
        return bare
    neg = {}
    for k, v in dict(raw_neg).items():
        if str(k) not in index or str(v) not in index:
            raise LatticeError("malformed", f"negation entry {k!r} -> {v!r} names an unknown element")
        neg[index[str(k)]] = index[str(v)]
    for x, y in ((bare.bottom, bare.top), (bare.top, bare.bottom)):
        if x in neg and neg[x] != y and n > 1:
            raise LatticeError(
                "negation-contradiction", f"~{names[x]} must be {names[y]}, file says {names[neg[x]]}"
            )
        neg.setdefault(x, y)
    missing = [names[i] for i in range(n) if i not in neg]
    if missing:
        raise LatticeError("negation-not-total", "no negation given for " + ", ".join(missing))
    return FiniteLattice(names, rel, [neg[i] for i in range(n)], description.get("metadata"))


def chain(n: int, names: Optional[Sequence[str]] = None, negation: str = "pseudo") -> FiniteLattice:
    """The ``n``-chain ``0 < ... < 1``; ``negation`` is ``"pseudo"`` (Heyting) or ``None``."""
    if names is None:
        names = ["0"] + [f"m{i}" for i in range(1, n - 1)] + (["1"] if n > 1 else [])
    leq = np.triu(np.ones((n, n), dtype=bool))
    neg = None
    if negation == "pseudo":
        neg = [n - 1] + [0] * (n - 1) if n > 1 else [0]
    elif negation is not None:
        raise ValueError(f"unknown negation kind {negation!r}")
    return FiniteLattice(names, leq, neg)


def boolean_lattice(atoms: Sequence[str] = ("a", "b")) -> FiniteLattice:
    """Powerset of ``atoms`` with set complement; element names join atoms (``0`` and ``1`` at the ends)."""
    k = len(atoms)
    masks = sorted(range(2 ** k), key=lambda m: (bin(m).count("1"), m))
    full = 2 ** k - 1

    def name(m):
        if m == 0:
            return "0"
        if m == full:
            return "1"
        return "".join(atoms[i] for i in range(k) if m >> i & 1)

    pos = {m: i for i, m in enumerate(masks)}
    leq = np.array([[a & ~b == 0 for b in masks] for a in masks], dtype=bool)
    neg = [pos[full & ~m] for m in masks]
    return FiniteLattice([name(m) for m in masks], leq, neg)


@dataclass(frozen=True)
class HomomorphismReport:
    is_homomorphism: bool
    violation: Optional[str]
    injective: bool
    order_reflecting: bool

    def __bool__(self) -> bool:
        return self.is_homomorphism


def is_homomorphism(h, source: FiniteLattice, target: FiniteLattice) -> HomomorphismReport:
    """Check that ``h`` preserves 0, 1, meets, joins and (when both carry one) negation.

    ``h`` is a mapping from source names to target names, or a sequence of
    target indices indexed by source index.
    """
    if isinstance(h, Mapping):
        try:
            m = np.array([target.idx(h[x]) for x in source.names], dtype=np.int64)
        except KeyError as exc:
            raise ValueError(f"map is not total: {exc.args[0]!r} has no image") from None
    else:
        m = np.asarray(h, dtype=np.int64)
        if m.shape != (source.n,):
            raise ValueError("map is not total on the source lattice")
    s, t = source.names, target.names
    violation = None
    if m[source.bottom] != target.bottom:
        violation = f"h({s[source.bottom]}) = {t[m[source.bottom]]} is not the bottom"
    elif m[source.top] != target.top:
        violation = f"h({s[source.top]}) = {t[m[source.top]]} is not the top"
    else:
        for label, src_op, dst_op, sym in (("meet", source.meet, target.meet, "&"),
                                           ("join", source.join, target.join, "|")):
            bad = m[src_op] != dst_op[m[:, None], m[None, :]]
            if bad.any():
                i, j = np.argwhere(bad)[0]
                violation = f"h({s[i]} {sym} {s[j]}) != h({s[i]}) {sym} h({s[j]})"
                break
        if violation is None and source.neg is not None and target.neg is not None:
            bad = m[source.neg] != target.neg[m]
            if bad.any():
                i = int(np.argmax(bad))
                violation = f"h(~{s[i]}) != ~h({s[i]})"
    injective = len(set(m.tolist())) == source.n
    reflecting = bool((target.leq[m[:, None], m[None, :]] <= source.leq).all())
    return HomomorphismReport(violation is None, violation, injective, reflecting)
