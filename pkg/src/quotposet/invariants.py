"""Möbius function, characteristic polynomial, k-families and Peck properties."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import networkx as nx
import sympy

from .congruences import is_homogeneous, is_weak_order
from .errors import ConditionFails, NotGraded, NoUniqueMin, PreconditionFailed
from .partition import Partition
from .poset import Poset, bits
from .quotients import quotient_poset


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial; ``coefficients[i]`` multiplies ``t**i``."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        c = list(self.coefficients)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(int(x) for x in c))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for e in range(self.degree, -1, -1):
            c = self.coefficients[e]
            if c == 0:
                continue
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if mag == 1 else f"{mag}{var}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)


def mobius(p: Poset) -> tuple[int, ...]:
    """One-variable Möbius function: sum of mu over ``[0, q]`` is 1 at the bottom, else 0."""
    zero = p.minimum
    if zero is None:
        raise NoUniqueMin("Möbius function needs a unique minimal element")
    mu = [0] * p.n
    for q in sorted(range(p.n), key=lambda x: p.down[x].bit_count()):
        if q == zero:
            mu[q] = 1
        else:
            mu[q] = -sum(mu[x] for x in bits(p.strict_down[q]))
    return tuple(mu)


def _graded_rank(p: Poset) -> tuple[int, ...]:
    g = p.grading_info
    if not g.is_graded or g.rank is None:
        raise NotGraded("poset is not graded")
    return g.rank


def char_poly(p: Poset) -> IntPolynomial:
    mu = mobius(p)
    rank = _graded_rank(p)
    top = max(rank)
    coeffs = [0] * (top + 1)
    for x in range(p.n):
        coeffs[top - rank[x]] += mu[x]
    return IntPolynomial(tuple(coeffs))


@dataclass(frozen=True)
class PreservationResult:
    holds: bool
    condition: str
    chi_original: IntPolynomial
    chi_quotient: IntPolynomial
    mobius_matches: bool

    def __bool__(self) -> bool:
        return self.holds


def _rank_constant(rank: Sequence[int], t: Partition) -> bool:
    return all(len({rank[x] for x in b}) == 1 for b in t.blocks)


def homogeneous_preservation_check(
    p: Poset, t: Partition, condition: str = "original"
) -> PreservationResult:
    """Check a summation condition guaranteeing the quotient keeps the
    characteristic polynomial, then compare both polynomials directly.

    ``original``: homogeneous and rank-constant; for every class not holding
    the bottom, mu sums to zero over the common lower bounds of the class.
    ``alternative``: rank-constant only; for every class, mu summed over all
    classes below it in the quotient is 1 for the bottom class and 0 otherwise.
    Raises :class:`ConditionFails` when the summation condition fails.
    """
    mu = mobius(p)
    rank = _graded_rank(p)
    zero = p.minimum
    assert zero is not None
    if not _rank_constant(rank, t):
        raise PreconditionFailed("rank function is not constant on classes")
    if condition == "original":
        if not is_homogeneous(p, t):
            raise PreconditionFailed("partition is not homogeneous")
        mode = "strict" if is_weak_order(p, t) else "closure"
    elif condition == "alternative":
        mode = "closure"
    else:
        raise ValueError(f"unknown condition {condition!r}")
    res = quotient_poset(p, t, mode)
    q = res.quotient
    chi_p = char_poly(p)
    chi_q = char_poly(q)
    class_mu = [sum(mu[x] for x in b) for b in t.blocks]
    zero_block = t.class_of[zero]
    for k, mask in enumerate(t.masks):
        if condition == "original":
            if k == zero_block:
                continue
            total = sum(mu[x] for x in bits(p.lower_bounds(mask)))
            want = 0
        else:
            total = sum(class_mu[j] for j in bits(q.down[k]))
            want = 1 if k == zero_block else 0
        if total != want:
            raise ConditionFails(
                k,
                chi_p,
                chi_q,
                f"class {t.blocks[k]}: sum is {total}, expected {want}",
            )
    mu_q = mobius(q)
    matches = all(mu_q[k] == class_mu[k] for k in range(len(t.blocks)))
    return PreservationResult(matches and chi_p == chi_q, condition, chi_p, chi_q, matches)


def max_k_family(p: Poset, k: int) -> int:
    """Largest union of ``k`` antichains, by min-cost flow over chain covers.

    Each unit of flow from the source either bypasses to the sink or traces a
    chain, paying ``k`` to start and earning 1 per element.  Elements outside
    the traced chains count once each, so ``n + cost`` is the minimum over
    chain partitions of the sum of ``min(|C|, k)``.
    """
    n = p.n
    if k <= 0 or n == 0:
        return 0
    if k >= n:
        return n
    g = nx.DiGraph()
    g.add_node("s", demand=-n)
    g.add_node("t", demand=n)
    g.add_edge("s", "t", capacity=n, weight=0)
    for v in range(n):
        g.add_edge("s", ("in", v), capacity=1, weight=k)
        g.add_edge(("in", v), ("out", v), capacity=1, weight=-1)
        g.add_edge(("out", v), "t", capacity=1, weight=0)
        for w in bits(p.strict_up[v]):
            g.add_edge(("out", v), ("in", w), capacity=1, weight=0)
    cost = nx.min_cost_flow_cost(g)
    return n + cost


@dataclass(frozen=True)
class PeckReport:
    rank_sizes: tuple[int, ...]
    rank_symmetric: bool
    rank_unimodal: bool
    strongly_sperner: bool
    is_peck: bool
    unitary_certificate: tuple[int, ...] | None

    def to_json(self) -> dict:
        return {
            "rank_sizes": list(self.rank_sizes),
            "rank_symmetric": self.rank_symmetric,
            "rank_unimodal": self.rank_unimodal,
            "strongly_sperner": self.strongly_sperner,
            "is_peck": self.is_peck,
            "unitary_certificate": None
            if self.unitary_certificate is None
            else list(self.unitary_certificate),
        }


def is_unimodal(seq: Sequence[int]) -> bool:
    i = 0
    while i + 1 < len(seq) and seq[i] <= seq[i + 1]:
        i += 1
    while i + 1 < len(seq) and seq[i] >= seq[i + 1]:
        i += 1
    return i >= len(seq) - 1


def _levels(p: Poset, rank: Sequence[int]) -> list[list[int]]:
    levels: list[list[int]] = [[] for _ in range(max(rank) + 1)]
    for x in range(p.n):
        levels[rank[x]].append(x)
    return levels


def unitary_certificate(p: Poset) -> tuple[int, ...] | None:
    """Ranks of the products of all-ones up maps ``V_i -> V_{n-i}``, if all invertible."""
    rank = _graded_rank(p)
    levels = _levels(p, rank)
    top = len(levels) - 1
    ups = []
    for i in range(top):
        lower, upper = levels[i], levels[i + 1]
        ups.append(
            sympy.Matrix(len(upper), len(lower), lambda r, c: int(p.leq(lower[c], upper[r])))
        )
    ranks = []
    for i in range((top + 1) // 2):
        if len(levels[i]) != len(levels[top - i]):
            return None
        m = sympy.eye(len(levels[i]))
        for j in range(i, top - i):
            m = ups[j] * m
        r = m.rank()
        if r != len(levels[i]):
            return None
        ranks.append(r)
    return tuple(ranks)


def peck_report(p: Poset) -> PeckReport:
    g = p.grading_info
    if not g.is_graded:
        raise NotGraded("Peck properties need a graded poset")
    if len(p.components) > 1:
        raise PreconditionFailed("Peck properties need a connected poset")
    sizes = g.rank_sizes
    symmetric = tuple(sizes) == tuple(reversed(sizes))
    unimodal = is_unimodal(sizes)
    ordered = sorted(sizes, reverse=True)
    sperner = all(max_k_family(p, k) <= sum(ordered[:k]) for k in range(1, len(sizes) + 1))
    cert = unitary_certificate(p) if p.n else None
    return PeckReport(
        tuple(sizes),
        symmetric,
        unimodal,
        sperner,
        symmetric and unimodal and sperner,
        cert,
    )
