"""The embedding of an Ex-lattice into an ortholattice times a Heyting lattice.

Pipeline for a finite fundamental lattice ``L``:

* ``~`` identifies elements with equal negations (:func:`resim_congruence`);
  ``O_L = L / ~`` (:func:`quotient`) is an ortholattice when ``L`` is an
  Ex-lattice.
* Prime filters of a finite lattice are the principal filters ``up(m)`` of
  join-prime elements ``m`` (:func:`join_primes`).  ``A_L`` is the algebra of
  down-closed sets of join-primes generated by ``a^ = {m : m <= a}`` under
  intersection, union and ``~A = primes minus up(A)`` (:func:`heyting_algebra`).
* ``e(a) = (a*, a^)`` (:func:`ex_embedding`).

The three search helpers :func:`interpolant`, :func:`separating_prime_filter`
and :func:`extend_prime_filter` are finite searches for the intermediate steps the
embedding proof rests on.  :func:`add_top` puts a fresh top above a lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .axioms import get_axiom
from .classify import is_heyting, is_ortholattice
from .lattice import FiniteLattice, HomomorphismReport, LatticeError, OrderedPairLattice, is_homomorphism
from .model_check import sequent_valid

__all__ = [
    "PreconditionError",
    "CarrierLimitError",
    "Congruence",
    "JoinPrimeSet",
    "DownSetAlgebra",
    "EmbeddingResult",
    "resim_congruence",
    "quotient",
    "join_primes",
    "heyting_algebra",
    "ex_embedding",
    "interpolant",
    "separating_prime_filter",
    "extend_prime_filter",
    "add_top",
    "collapse_map",
]


class PreconditionError(ValueError):
    """The hypotheses of a construction do not hold for the given input."""


class CarrierLimitError(RuntimeError):
    pass


def _holds(lattice: FiniteLattice, axiom: str) -> bool:
    return sequent_valid(get_axiom(axiom).sequent, lattice) is True


# --------------------------------------------------------------------------
# congruence and quotient

@dataclass(frozen=True)
class Congruence:
    """A partition of ``lattice``'s elements; ``compatible`` reports the congruence check."""

    lattice: FiniteLattice = field(repr=False)
    classes: tuple
    class_of: tuple
    compatible: bool
    violation: Optional[str] = None

    def named_classes(self) -> list[list[str]]:
        return [[self.lattice.names[i] for i in c] for c in self.classes]


def _partition(lattice: FiniteLattice, key) -> tuple[tuple, tuple]:
    seen: dict = {}
    class_of = []
    for i in range(lattice.n):
        class_of.append(seen.setdefault(key[i], len(seen)))
    classes = [[] for _ in seen]
    for i, c in enumerate(class_of):
        classes[c].append(i)
    return tuple(tuple(c) for c in classes), tuple(class_of)


def congruence_violation(lattice: FiniteLattice, class_of) -> Optional[str]:
    """First operation that is not compatible with the partition, or ``None``."""
    cls = np.asarray(class_of)
    same = cls[:, None] == cls[None, :]
    names = lattice.names
    ops = [("&", lattice.meet), ("|", lattice.join)]
    for sym, table in ops:
        img = cls[table]  # [x, y] -> class of x op y
        # x ~ x' must give x op y ~ x' op y for every y (one side suffices by symmetry)
        bad = same[:, :, None] & (img[:, None, :] != img[None, :, :])
        if bad.any():
            x, x2, y = map(int, np.argwhere(bad)[0])
            return f"{names[x]} ~ {names[x2]} but {names[x]} {sym} {names[y]} !~ {names[x2]} {sym} {names[y]}"
    if lattice.neg is not None:
        img = cls[lattice.neg]
        bad = same & (img[:, None] != img[None, :])
        if bad.any():
            x, x2 = map(int, np.argwhere(bad)[0])
            return f"{names[x]} ~ {names[x2]} but ~{names[x]} !~ ~{names[x2]}"
    return None


def resim_congruence(lattice: FiniteLattice) -> Congruence:
    """Group elements by their negation and check compatibility exhaustively."""
    if lattice.neg is None:
        raise PreconditionError("the lattice carries no negation")
    classes, class_of = _partition(lattice, lattice.neg.tolist())
    violation = congruence_violation(lattice, class_of)
    return Congruence(lattice, classes, class_of, violation is None, violation)


def quotient(lattice: FiniteLattice, congruence: Congruence) -> FiniteLattice:
    """``L`` modulo a compatible partition.

    A class is named after its largest element, starred when the class has
    more than one member.
    """
    if not congruence.compatible:
        raise PreconditionError(f"not a congruence: {congruence.violation}")
    classes = congruence.classes
    k = len(classes)
    leq = lattice.leq
    reps = []
    names = []
    for c in classes:
        top = [x for x in c if all(leq[y, x] for y in c)]
        rep = top[0] if top else c[0]
        reps.append(rep)
        names.append(lattice.names[rep] + ("*" if len(c) > 1 else ""))
    cls = np.asarray(congruence.class_of)
    rel = np.zeros((k, k), dtype=bool)
    for i, j in zip(*np.nonzero(leq)):
        rel[cls[i], cls[j]] = True
    neg = None if lattice.neg is None else [int(cls[lattice.neg[r]]) for r in reps]
    try:
        return FiniteLattice(names, rel, neg, {"quotient_of": lattice.metadata.get("name", "")})
    except LatticeError as exc:
        raise PreconditionError(f"induced order is not a lattice order: {exc}") from None


# --------------------------------------------------------------------------
# join-primes and the down-set algebra

@dataclass(frozen=True)
class JoinPrimeSet:
    lattice: FiniteLattice = field(repr=False)
    primes: tuple  # element indices in file order

    @property
    def names(self) -> list[str]:
        return [self.lattice.names[m] for m in self.primes]

    def order(self) -> np.ndarray:
        p = list(self.primes)
        return self.lattice.leq[np.ix_(p, p)]


def join_primes(lattice: FiniteLattice) -> JoinPrimeSet:
    """Nonzero ``m`` such that ``m <= a | b`` forces ``m <= a`` or ``m <= b``."""
    leq, join = lattice.leq, lattice.join
    # bad[m, a, b]: m <= a|b, m not<= a, m not<= b
    bad = leq[:, join] & ~leq[:, :, None] & ~leq[:, None, :]
    prime = ~bad.any(axis=(1, 2))
    prime[lattice.bottom] = False
    return JoinPrimeSet(lattice, tuple(int(m) for m in np.flatnonzero(prime)))


@dataclass(frozen=True)
class DownSetAlgebra:
    """Down-closed sets of join-primes, stored as bitmasks over ``primes.primes``.

    ``generator[a]`` is the carrier position of ``a^``; ``algebra`` is the
    carrier materialized as a lattice ordered by inclusion.
    """

    primes: JoinPrimeSet
    carrier: tuple  # bitmasks, in the element order of ``algebra``
    generator: tuple
    algebra: FiniteLattice = field(repr=False)

    def members(self, mask: int) -> list[str]:
        names = self.primes.names
        return [names[i] for i in range(len(names)) if mask >> i & 1]

    def hat(self, a) -> frozenset[str]:
        lat = self.primes.lattice
        return frozenset(self.members(self.carrier[self.generator[lat.idx(a)]]))


def heyting_algebra(lattice: FiniteLattice, limit: int = 1 << 12) -> DownSetAlgebra:
    """Close ``{a^}`` under intersection, union and ``~`` and materialize it."""
    jp = join_primes(lattice)
    k = len(jp.primes)
    leq = lattice.leq
    full = (1 << k) - 1
    # up[i]: mask of primes above prime i
    up = [sum(1 << j for j in range(k) if leq[jp.primes[i], jp.primes[j]]) for i in range(k)]

    def up_closure(mask):
        out = 0
        for i in range(k):
            if mask >> i & 1:
                out |= up[i]
        return out

    def tilde(mask):
        return full & ~up_closure(mask)

    gens = [sum(1 << i for i, m in enumerate(jp.primes) if leq[m, a]) for a in range(lattice.n)]
    carrier = set(gens) | {0, full}
    frontier = list(carrier)
    while frontier:
        new = set()
        for x in frontier:
            cands = [tilde(x)]
            for y in carrier:
                cands += (x & y, x | y)
            for z in cands:
                if z not in carrier and z not in new:
                    new.add(z)
        if len(carrier) + len(new) > limit:
            raise CarrierLimitError(f"down-set algebra exceeds {limit} elements")
        carrier |= new
        frontier = list(new)

    masks = sorted(carrier, key=lambda m: (bin(m).count("1"), m))
    pos = {m: i for i, m in enumerate(masks)}
    sub = np.array([[a & ~b == 0 for b in masks] for a in masks], dtype=bool)
    names = ["{" + ",".join(jp.names[i] for i in range(k) if m >> i & 1) + "}" for m in masks]
    neg = [pos[tilde(m)] for m in masks]
    alg = FiniteLattice(names, sub, neg, {"down_sets_of": lattice.metadata.get("name", "")})
    return DownSetAlgebra(jp, tuple(masks), tuple(pos[g] for g in gens), alg)


# --------------------------------------------------------------------------
# the embedding

@dataclass(frozen=True)
class EmbeddingResult:
    source: FiniteLattice = field(repr=False)
    congruence: Congruence
    ortho_part: Optional[FiniteLattice] = field(repr=False)
    down_sets: DownSetAlgebra = field(repr=False)
    map: tuple  # element index -> (index in O_L or -1, index in A_L)
    diagnostics: dict

    @property
    def heyting_part(self) -> FiniteLattice:
        return self.down_sets.algebra

    @property
    def verified(self) -> bool:
        d = self.diagnostics
        return all(d[k] for k in ("homomorphism", "order_reflecting", "ortho_is_ortholattice", "heyting_is_heyting"))

    def named_map(self) -> dict[str, tuple[str, str]]:
        o, a = self.ortho_part, self.heyting_part
        return {
            self.source.names[x]: (o.names[i] if o is not None else "?", a.names[j])
            for x, (i, j) in enumerate(self.map)
        }

    def product(self) -> OrderedPairLattice:
        if self.ortho_part is None:
            raise PreconditionError("no ortholattice part: ~ is not a congruence here")
        return OrderedPairLattice(self.ortho_part, self.heyting_part)


def ex_embedding(lattice: FiniteLattice) -> EmbeddingResult:
    """Build ``e(a) = (a*, a^)`` and check it.

    Diagnostics: ``homomorphism`` (with ``violation`` text), ``injective``,
    ``order_reflecting``, ``ortho_is_ortholattice``, ``heyting_is_heyting``.
    Non-Ex inputs are not an error; the diagnostics say what breaks.
    """
    cong = resim_congruence(lattice)
    ds = heyting_algebra(lattice)
    alg = ds.algebra
    hat = np.asarray(ds.generator)
    diag: dict = {}
    hat_rep = is_homomorphism(hat, lattice, alg)
    ortho = None
    star = np.full(lattice.n, -1)
    if cong.compatible:
        ortho = quotient(lattice, cong)
        star = np.asarray(cong.class_of)
        star_rep = is_homomorphism(star, lattice, ortho)
        diag["ortho_is_ortholattice"] = is_ortholattice(ortho)
        o_leq = ortho.leq[star[:, None], star[None, :]]
    else:
        star_rep = HomomorphismReport(False, f"~ is not a congruence: {cong.violation}", False, False)
        diag["ortho_is_ortholattice"] = False
        o_leq = np.ones((lattice.n, lattice.n), dtype=bool)
    diag["heyting_is_heyting"] = is_heyting(alg)
    diag["homomorphism"] = bool(star_rep) and bool(hat_rep)
    diag["violation"] = star_rep.violation or (f"a -> a^: {hat_rep.violation}" if hat_rep.violation else None)
    image_leq = o_leq & alg.leq[hat[:, None], hat[None, :]]
    diag["order_reflecting"] = bool((image_leq <= lattice.leq).all())
    pairs = tuple((int(i), int(j)) for i, j in zip(star, hat))
    diag["injective"] = cong.compatible and len(set(pairs)) == lattice.n
    collisions = {}
    for x, p in enumerate(pairs):
        collisions.setdefault(p, []).append(lattice.names[x])
    diag["identified"] = [g for g in collisions.values() if len(g) > 1]
    return EmbeddingResult(lattice, cong, ortho, ds, pairs, diag)


# --------------------------------------------------------------------------
# witness searches behind the embedding

def interpolant(lattice: FiniteLattice, a, b, check_axiom: bool = True) -> Optional[str]:
    """``c = a & b`` with ``c <= a, b <= ~~c``, for ``a``, ``b`` of equal negation.

    Returns ``None`` if the candidate fails its checks (which the (Nu) law
    rules out); raises :class:`PreconditionError` if the hypotheses fail.
    """
    L = lattice
    if L.neg is None:
        raise PreconditionError("the lattice carries no negation")
    i, j = L.idx(a), L.idx(b)
    if L.neg[i] != L.neg[j]:
        raise PreconditionError(f"~{L.names[i]} != ~{L.names[j]}")
    if check_axiom and not _holds(L, "Nu"):
        raise PreconditionError("Nu fails on this lattice")
    c = int(L.meet[i, j])
    nnc = int(L.neg[L.neg[c]])
    ok = L.leq[c, i] and L.leq[c, j] and L.leq[i, nnc] and L.leq[j, nnc]
    return L.names[c] if ok else None


def separating_prime_filter(lattice: FiniteLattice, f, i, a, check_axiom: bool = True) -> Optional[str]:
    """A join-prime ``m`` with ``m <= f`` and ``m`` not below ``i``.

    ``up(m)`` is then a prime filter containing ``up(f)`` and missing ``down(i)``.
    Hypotheses: Vi holds, ``f`` not below ``i``, ``a <= i`` and ``f <= ~~a``.
    """
    L = lattice
    if L.neg is None:
        raise PreconditionError("the lattice carries no negation")
    f, i, a = L.idx(f), L.idx(i), L.idx(a)
    if L.leq[f, i]:
        raise PreconditionError("filter and ideal meet")
    if not L.leq[a, i]:
        raise PreconditionError(f"{L.names[a]} is not in the ideal")
    if not L.leq[f, L.neg[L.neg[a]]]:
        raise PreconditionError(f"~~{L.names[a]} is not in the filter")
    if check_axiom and not _holds(L, "Vi"):
        raise PreconditionError("Vi fails on this lattice")
    for m in join_primes(L).primes:
        if L.leq[m, f] and not L.leq[m, i]:
            return L.names[m]
    return None


def extend_prime_filter(lattice: FiniteLattice, p, a, check_axiom: bool = True) -> Optional[str]:
    """A join-prime ``q`` with ``q <= p`` and ``q <= a``: ``up(q)`` extends ``up(p)`` and contains ``a``.

    Hypotheses: Cl holds, ``p`` is join-prime and ``p`` not below ``~a``.
    """
    L = lattice
    if L.neg is None:
        raise PreconditionError("the lattice carries no negation")
    p, a = L.idx(p), L.idx(a)
    primes = join_primes(L).primes
    if p not in primes:
        raise PreconditionError(f"{L.names[p]} is not join-prime")
    if L.leq[p, L.neg[a]]:
        raise PreconditionError(f"~{L.names[a]} is in the filter")
    if check_axiom and not _holds(L, "Cl"):
        raise PreconditionError("Cl fails on this lattice")
    for q in primes:
        if L.leq[q, p] and L.leq[q, a]:
            return L.names[q]
    return None


# --------------------------------------------------------------------------
# a new top

def add_top(lattice: FiniteLattice) -> FiniteLattice:
    """Put a new greatest element above ``lattice``.

    The new top takes the old top's name and the old top is renamed with a
    trailing ``*``.  Negation is kept except that ``~0`` becomes the new top
    and the new top negates to ``0``.
    """
    L = lattice
    if L.neg is None:
        raise PreconditionError("the lattice carries no negation")
    old = L.top
    n = L.n
    # new element sits at the old top's position, the old top right after it
    pos = old
    new_names = list(L.names)
    new_names[pos] = L.names[old] + "*"
    new_names.insert(pos, L.names[old])

    def shift(i):
        return i + 1 if i >= pos else i

    leq = np.zeros((n + 1, n + 1), dtype=bool)
    for i in range(n):
        for j in range(n):
            leq[shift(i), shift(j)] = L.leq[i, j]
    leq[:, pos] = True
    leq[pos, :] = False
    leq[pos, pos] = True
    neg = [0] * (n + 1)
    for i in range(n):
        neg[shift(i)] = shift(int(L.neg[i]))
    neg[shift(L.bottom)] = pos
    neg[pos] = shift(L.bottom)
    return FiniteLattice(new_names, leq, neg, {"new_top_over": L.metadata.get("name", "")})


def collapse_map(extended: FiniteLattice, original: FiniteLattice) -> list[int]:
    """Index map from ``add_top(original)`` onto ``original`` sending both tops to the old top."""
    out = []
    for x in extended.names:
        if x in original.index:
            out.append(original.index[x])
        else:
            out.append(original.index[x[:-1]])
    return out
