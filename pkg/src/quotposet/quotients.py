"""Quotient constructions: strict and closed quotients, the universal quotient,
the smallest compatible coarsening, lexicographic sums and orbit partitions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from scipy.cluster.hierarchy import DisjointSet

from .congruences import _bit_closure, block_up, is_compatible, is_weak_order
from .errors import NotAutomorphism, NotCompatible, NotWeakOrder
from .iso import is_automorphism
from .partition import Partition
from .poset import Poset, bits


@dataclass(frozen=True)
class QuotientResult:
    quotient: Poset
    class_map: tuple[int, ...]
    needed_transitive_closure: bool
    needed_collapse: bool

    def kernel(self) -> Partition:
        return Partition.from_labels(self.class_map)


@dataclass(frozen=True)
class PermutationGroup:
    degree: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for k, g in enumerate(self.generators):
            if sorted(g) != list(range(self.degree)):
                raise ValueError(f"generator {k} is not a permutation of 0..{self.degree - 1}")


def block_label(p: Poset, block: Sequence[int]) -> str:
    if len(block) == 1:
        return p.labels[block[0]]
    return "{" + ",".join(p.labels[x] for x in block) + "}"


def quotient_relation(p: Poset, t: Partition) -> tuple[tuple[bool, ...], ...]:
    """Matrix over blocks: ``[a] <= [b]`` iff some members satisfy ``x <= y``."""
    rel = block_up(p, t)
    k = len(rel)
    return tuple(tuple(bool((rel[a] >> b) & 1) for b in range(k)) for a in range(k))


def quotient_poset(p: Poset, t: Partition, mode: str = "strict") -> QuotientResult:
    """Quotient by a weak order congruence (strict) or a compatible one (closure)."""
    if mode == "strict":
        v = is_weak_order(p, t)
        if not v:
            raise NotWeakOrder("quotient relation is not a partial order", v.witness)
        rows = block_up(p, t)
        closed = False
    elif mode == "closure":
        v = is_compatible(p, t)
        if not v:
            raise NotCompatible("closure of the quotient relation is not antisymmetric", v.witness)
        rel = block_up(p, t)
        rows = tuple(_bit_closure(rel))
        closed = rows != rel
    else:
        raise ValueError(f"unknown quotient mode {mode!r}")
    labels = tuple(block_label(p, b) for b in t.blocks)
    q = Poset(tuple(rows), labels)
    return QuotientResult(q, t.class_of, closed, False)


def universal_quotient(p: Poset, t: Partition) -> QuotientResult:
    """Close the block pre-order transitively and collapse mutually related blocks."""
    rel = block_up(p, t)
    reach = _bit_closure(rel)
    k = len(rel)
    group = [-1] * k
    reps: list[int] = []
    for a in range(k):
        if group[a] >= 0:
            continue
        group[a] = len(reps)
        for b in range(a + 1, k):
            if (reach[a] >> b) & 1 and (reach[b] >> a) & 1:
                group[b] = len(reps)
        reps.append(a)
    rows = []
    for a in reps:
        row = 0
        for b in bits(reach[a]):
            row |= 1 << group[b]
        rows.append(row)
    merged: list[list[int]] = [[] for _ in reps]
    for a in range(k):
        merged[group[a]].extend(t.blocks[a])
    labels = tuple(block_label(p, sorted(m)) for m in merged)
    q = Poset(tuple(rows), labels)
    class_map = tuple(group[c] for c in t.class_of)
    return QuotientResult(q, class_map, reach != list(rel), len(reps) < k)


def smallest_compatible(p: Poset, t: Partition) -> Partition:
    """Least compatible partition coarser than ``t`` (merge strongly connected blocks)."""
    return universal_quotient(p, t).kernel()


def kernel(f: Sequence[object]) -> Partition:
    return Partition.from_labels(list(f))


def lex_sum(index: Poset, fibers: Sequence[Poset]) -> tuple[Poset, Partition]:
    """Lexicographic sum; elements are ordered by index element, then fiber element."""
    if len(fibers) != index.n:
        raise ValueError("need exactly one fiber per index element")
    elems = [(q, x) for q in range(index.n) for x in range(fibers[q].n)]
    rows = []
    for q, x in elems:
        row = 0
        for k, (q2, x2) in enumerate(elems):
            if index.lt(q, q2) or (q == q2 and fibers[q].leq(x, x2)):
                row |= 1 << k
        rows.append(row)
    labels = tuple(f"{index.labels[q]}.{fibers[q].labels[x]}" for q, x in elems)
    part = Partition.from_labels([q for q, _ in elems])
    return Poset(tuple(rows), labels), part


def orbit_partition(p: Poset, g: PermutationGroup) -> Partition:
    """Orbits of the group generated by ``g``, without enumerating the group."""
    if g.degree != p.n:
        raise ValueError("group degree differs from poset size")
    for k, gen in enumerate(g.generators):
        bad = is_automorphism(p, gen)
        if bad is not None:
            raise NotAutomorphism(k, bad)
    ds = DisjointSet(range(p.n))
    for gen in g.generators:
        for x, y in enumerate(gen):
            ds.merge(x, y)
    return Partition.from_labels([ds[x] for x in range(p.n)])


def is_order_preserving(p: Poset, q: Poset, f: Sequence[int]) -> bool:
    return all(q.leq(f[a], f[b]) for a, b in p.covers())


def is_strong_map(p: Poset, q: Poset, f: Sequence[int]) -> bool:
    """Order-preserving and every relation among images lifts to a relation in ``p``."""
    if not is_order_preserving(p, q, f):
        return False
    fibers: dict[int, int] = {}
    for x, fx in enumerate(f):
        fibers[fx] = fibers.get(fx, 0) | (1 << x)
    lifted: dict[int, int] = {}
    for fx, mask in fibers.items():
        reach = 0
        for x in bits(mask):
            reach |= p.up[x]
        lifted[fx] = reach
    for a in fibers:
        for b in fibers:
            if q.leq(a, b) and not lifted[a] & fibers[b]:
                return False
    return True


def is_order_morphism(p: Poset, q: Poset, f: Sequence[int]) -> bool:
    """``f(L(a,b)) = L_{f(P)}(f a, f b)`` and likewise for upper bounds."""
    image = 0
    for fx in f:
        image |= 1 << fx
    for a in range(p.n):
        for b in range(a, p.n):
            for pb, qb in ((p.lower_bounds, q.lower_bounds), (p.upper_bounds, q.upper_bounds)):
                got = 0
                for x in bits(pb((1 << a) | (1 << b))):
                    got |= 1 << f[x]
                want = qb((1 << f[a]) | (1 << f[b])) & image
                if got != want:
                    return False
    return True


def factor_through(
    result: QuotientResult,
    p: Poset,
    target: Poset,
    g: Sequence[int],
) -> tuple[int, ...] | None:
    """The unique ``h`` with ``g = h . f`` if it exists and is order-preserving."""
    h = [-1] * result.quotient.n
    for x, fx in enumerate(result.class_map):
        if h[fx] == -1:
            h[fx] = g[x]
        elif h[fx] != g[x]:
            return None
    if not is_order_preserving(result.quotient, target, h):
        return None
    return tuple(h)


def order_preserving_maps(p: Poset, target: Poset) -> Iterable[tuple[int, ...]]:
    """All order-preserving maps ``p -> target`` (small inputs only)."""
    from itertools import product

    for f in product(range(target.n), repeat=p.n):
        if is_order_preserving(p, target, f):
            yield f
