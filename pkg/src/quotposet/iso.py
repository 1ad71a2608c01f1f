"""Isomorphism and automorphism search by colour refinement plus backtracking."""

from __future__ import annotations

from collections import Counter
from typing import Iterator, Sequence

from .poset import Poset, bits


def _refined_colours(p: Poset) -> list[int]:
    colours = [hash((p.up[i].bit_count(), p.down[i].bit_count())) for i in range(p.n)]
    n_classes = len(set(colours))
    while True:
        new = [
            hash(
                (
                    colours[i],
                    tuple(sorted(colours[j] for j in bits(p.cover_up[i]))),
                    tuple(sorted(colours[j] for j in bits(p.cover_down[i]))),
                )
            )
            for i in range(p.n)
        ]
        k = len(set(new))
        colours = new
        if k == n_classes:
            return colours
        n_classes = k


def _search(
    p: Poset,
    q: Poset,
    candidates: list[list[int]],
) -> Iterator[tuple[int, ...]]:
    n = p.n
    # order elements so that each one is adjacent to an earlier one when possible
    order: list[int] = []
    placed = 0
    remaining = set(range(n))
    while remaining:
        best = min(
            remaining,
            key=lambda x: (
                0 if (p.cover_up[x] | p.cover_down[x]) & placed else 1,
                len(candidates[x]),
                x,
            ),
        )
        order.append(best)
        placed |= 1 << best
        remaining.discard(best)

    image = [-1] * n
    used = 0

    def rec(k: int) -> Iterator[tuple[int, ...]]:
        nonlocal used
        if k == n:
            yield tuple(image)
            return
        x = order[k]
        for y in candidates[x]:
            if (used >> y) & 1:
                continue
            ok = True
            for prev in order[:k]:
                fy = image[prev]
                if p.leq(prev, x) != q.leq(fy, y) or p.leq(x, prev) != q.leq(y, fy):
                    ok = False
                    break
            if not ok:
                continue
            image[x] = y
            used |= 1 << y
            yield from rec(k + 1)
            used &= ~(1 << y)
            image[x] = -1

    yield from rec(0)


def find_isomorphism(p: Poset, q: Poset) -> tuple[int, ...] | None:
    """Return ``f`` with ``p.leq(a, b) == q.leq(f[a], f[b])``, or ``None``."""
    if p.n != q.n:
        return None
    if p.n == 0:
        return ()
    cp = _refined_colours(p)
    cq = _refined_colours(q)
    if Counter(cp) != Counter(cq):
        return None
    by_colour: dict[int, list[int]] = {}
    for j, c in enumerate(cq):
        by_colour.setdefault(c, []).append(j)
    candidates = [by_colour.get(cp[i], []) for i in range(p.n)]
    return next(_search(p, q, candidates), None)


def is_isomorphic(p: Poset, q: Poset) -> bool:
    return find_isomorphism(p, q) is not None


def automorphisms(p: Poset, allowed: Sequence[int] | None = None) -> Iterator[tuple[int, ...]]:
    """Enumerate automorphisms; ``allowed[i]`` optionally masks images of ``i``."""
    colours = _refined_colours(p)
    candidates = []
    for i in range(p.n):
        cand = [j for j in range(p.n) if colours[j] == colours[i]]
        if allowed is not None:
            cand = [j for j in cand if (allowed[i] >> j) & 1]
        candidates.append(cand)
    yield from _search(p, p, candidates)


def is_automorphism(p: Poset, perm: Sequence[int]) -> tuple[int, int] | None:
    """``None`` if ``perm`` is an automorphism, else an offending pair."""
    n = p.n
    if sorted(perm) != list(range(n)):
        return (-1, -1)
    for i in range(n):
        for j in range(n):
            if p.leq(i, j) != p.leq(perm[i], perm[j]):
                return (i, j)
    return None
