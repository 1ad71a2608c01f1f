"""Dedekind-MacNeille completion, the principal-ideal sublattice and lattice congruences."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from scipy.cluster.hierarchy import DisjointSet

from .errors import NotLattice, NotOrderCongruence, TooLarge
from .partition import Partition
from .poset import Poset, bits

CONGRUENCE_CAP = 12


@dataclass(frozen=True)
class Completion:
    """A lattice of closed subsets of a source poset.

    ``closed_sets[k]`` is the bitmask (over source elements) represented by
    lattice element ``k``; ``embed[p]`` is the element holding the principal
    ideal of ``p``.
    """

    lattice: Poset
    embed: tuple[int, ...]
    closed_sets: tuple[int, ...]


@dataclass(frozen=True)
class CongruenceLattice:
    congruences: tuple[Partition, ...]
    leq: tuple[tuple[bool, ...], ...]

    def __len__(self) -> int:
        return len(self.congruences)


def _set_label(p: Poset, A: int) -> str:
    return "{" + ",".join(p.labels[a] for a in bits(A)) + "}"


def _completion_from_sets(p: Poset, sets: Iterable[int]) -> Completion:
    ordered = sorted(set(sets), key=lambda s: (s.bit_count(), s))
    index = {s: k for k, s in enumerate(ordered)}
    principal = {p.down[x]: x for x in range(p.n)}
    rows = []
    for s in ordered:
        row = 0
        for k, t in enumerate(ordered):
            if s & ~t == 0:
                row |= 1 << k
        rows.append(row)
    labels = tuple(
        p.labels[principal[s]] if s in principal else _set_label(p, s) for s in ordered
    )
    lattice = Poset(tuple(rows), labels)
    embed = tuple(index[p.down[x]] for x in range(p.n))
    return Completion(lattice, embed, tuple(ordered))


def dm_closure(p: Poset, A: int) -> int:
    """``L(U(A))``."""
    return p.lower_bounds(p.upper_bounds(A))


@lru_cache(maxsize=4096)
def dm_completion(p: Poset) -> Completion:
    """All sets fixed by ``A -> L(U(A))``: intersections of principal ideals and P."""
    family = {p.full}
    for x in range(p.n):
        ideal = p.down[x]
        family |= {s & ideal for s in family}
    return _completion_from_sets(p, family)


@lru_cache(maxsize=4096)
def m0_sublattice(p: Poset) -> Completion:
    """Sublattice of the completion generated by the principal ideals."""
    family = {p.down[x] for x in range(p.n)}
    frontier = set(family)
    while frontier:
        new = set()
        for a in frontier:
            for b in family | frontier:
                for c in (a & b, dm_closure(p, a | b)):
                    if c not in family and c not in new:
                        new.add(c)
        family |= new
        frontier = new
    return _completion_from_sets(p, family)


def _require_lattice(l: Poset) -> None:
    if not l.is_lattice:
        raise NotLattice("operation requires a lattice")


def smallest_lattice_congruence(l: Poset, pairs: Iterable[tuple[int, int]]) -> Partition:
    """Least lattice congruence identifying each given pair.

    Every union performed is recorded as a generating pair; each generating
    pair is pushed through joins and meets with every element.  Since
    substitution is preserved along chains of generators, the resulting
    equivalence is closed, and nothing was merged that a congruence containing
    the input could avoid.
    """
    _require_lattice(l)
    n = l.n
    join = l.join_table
    meet = l.meet_table
    ds = DisjointSet(range(n))
    work: list[tuple[int, int]] = []
    for a, b in pairs:
        if ds.merge(a, b):
            work.append((a, b))
    while work:
        a, b = work.pop()
        ja, jb, ma, mb = join[a], join[b], meet[a], meet[b]
        for w in range(n):
            x, y = ja[w], jb[w]
            if x != y and ds.merge(x, y):
                work.append((x, y))
            x, y = ma[w], mb[w]
            if x != y and ds.merge(x, y):
                work.append((x, y))
    return Partition.from_labels([ds[i] for i in range(n)])


def _congruence_join(l: Poset, a: Partition, b: Partition) -> Partition:
    return smallest_lattice_congruence(l, a.pairs() + b.pairs())


def enumerate_lattice_congruences(l: Poset, cap: int = CONGRUENCE_CAP) -> CongruenceLattice:
    """Every lattice congruence, as joins of the principal congruences of covers."""
    _require_lattice(l)
    if l.n > cap:
        raise TooLarge("lattice congruence enumeration", l.n, cap)
    return _enumerate_congruences(l)


@lru_cache(maxsize=1024)
def _enumerate_congruences(l: Poset) -> CongruenceLattice:
    principal = []
    for a, b in l.covers():
        c = smallest_lattice_congruence(l, [(a, b)])
        if c not in principal:
            principal.append(c)
    found = {Partition.identity(l.n)}
    frontier = list(found)
    while frontier:
        nxt = []
        for c in frontier:
            for pr in principal:
                j = _congruence_join(l, c, pr)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    cong = tuple(sorted(found, key=lambda t: (-len(t), t.blocks)))
    leq = tuple(tuple(a.refines(b) for b in cong) for a in cong)
    return CongruenceLattice(cong, leq)


def quotient_lattice(l: Poset, t: Partition) -> Poset:
    """Quotient of a lattice by a lattice congruence (blocks ordered by representatives)."""
    from .quotients import quotient_poset

    return quotient_poset(l, t, "strict").quotient


def restricts_exactly(completion: Completion, theta: Partition) -> bool:
    """Every class meeting the image of P has both interval ends in the image."""
    lat = completion.lattice
    image = 0
    for e in completion.embed:
        image |= 1 << e
    for mask in theta.masks:
        ends = lat.interval_ends(mask)
        if ends is None:
            return False
        if mask & image and not ((image >> ends[0]) & 1 and (image >> ends[1]) & 1):
            return False
    return True


def restriction(embed: Sequence[int], theta: Partition) -> Partition:
    return theta.restrict(list(embed))


@dataclass(frozen=True)
class ReadingCheck:
    holds: bool
    extensions: tuple[Partition, ...]
    quotient_isomorphic: bool
    detail: str

    def __bool__(self) -> bool:
        return self.holds


def reading_dm_check(p: Poset, t: Partition, cap: int = CONGRUENCE_CAP) -> ReadingCheck:
    """Find the completion congruences restricting exactly to ``t`` and compare quotients.

    Holds when there is exactly one such congruence and the completion of the
    quotient is isomorphic to the quotient of the completion.
    """
    from .congruences import is_order
    from .iso import is_isomorphic
    from .quotients import quotient_poset

    verdict = is_order(p, t)
    if not verdict.holds:
        raise NotOrderCongruence("partition is not an order congruence", verdict.witness)
    comp = dm_completion(p)
    congs = enumerate_lattice_congruences(comp.lattice, cap=cap)
    hits = tuple(
        c
        for c in congs.congruences
        if restricts_exactly(comp, c) and restriction(comp.embed, c) == t
    )
    if len(hits) != 1:
        return ReadingCheck(False, hits, False, f"{len(hits)} exact extensions found")
    q = quotient_poset(p, t, "strict").quotient
    lhs = dm_completion(q).lattice
    rhs = quotient_lattice(comp.lattice, hits[0])
    iso = is_isomorphic(lhs, rhs)
    return ReadingCheck(iso, hits, iso, "unique extension" + ("" if iso else "; quotients differ"))
