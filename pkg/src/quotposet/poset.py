"""Finite posets stored as bitset rows of the order relation.

``up[i]`` is an integer whose bit ``j`` is set exactly when ``i <= j``.
Everything else (covers, bounds, meets, grading) is derived from it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence

from .errors import BadIndex, CyclicInput, InvalidOrder, TooLarge

ENUMERATION_CAP = 5


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def _as_mask(A: int | Iterable[int]) -> int:
    return A if isinstance(A, int) else mask_of(A)


@dataclass(frozen=True)
class StructuralPredicates:
    is_lattice: bool
    is_directed: bool
    is_connected: bool
    is_total: bool
    has_min: bool
    has_max: bool


@dataclass(frozen=True)
class GradingInfo:
    is_graded: bool
    rank: tuple[int, ...] | None
    rank_sizes: tuple[int, ...]
    witness: tuple[int, int] | None = None

    @property
    def height(self) -> int:
        return len(self.rank_sizes) - 1


@dataclass(frozen=True)
class Poset:
    up: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.up) != len(self.labels):
            raise InvalidOrder("labels and order rows differ in length")

    # basic access

    @property
    def n(self) -> int:
        return len(self.up)

    def __len__(self) -> int:
        return len(self.up)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def leq(self, i: int, j: int) -> bool:
        return (self.up[i] >> j) & 1 == 1

    def lt(self, i: int, j: int) -> bool:
        return i != j and (self.up[i] >> j) & 1 == 1

    def comparable(self, i: int, j: int) -> bool:
        return self.leq(i, j) or self.leq(j, i)

    @cached_property
    def matrix(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(self.leq(i, j) for j in range(self.n)) for i in range(self.n))

    def index(self, label: str) -> int:
        return self._label_index[label]

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    # derived relations

    @cached_property
    def down(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for i, row in enumerate(self.up):
            for j in bits(row):
                rows[j] |= 1 << i
        return tuple(rows)

    @cached_property
    def strict_up(self) -> tuple[int, ...]:
        return tuple(row & ~(1 << i) for i, row in enumerate(self.up))

    @cached_property
    def strict_down(self) -> tuple[int, ...]:
        return tuple(row & ~(1 << i) for i, row in enumerate(self.down))

    @cached_property
    def cover_up(self) -> tuple[int, ...]:
        out = []
        su = self.strict_up
        for i in range(self.n):
            above = su[i]
            blocked = 0
            for k in bits(above):
                blocked |= su[k]
            out.append(above & ~blocked)
        return tuple(out)

    @cached_property
    def cover_down(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for i, row in enumerate(self.cover_up):
            for j in bits(row):
                rows[j] |= 1 << i
        return tuple(rows)

    def covers(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in bits(self.cover_up[i])]

    # bounds and extremal elements

    def upper_bounds(self, A: int | Iterable[int]) -> int:
        m = self.full
        for a in bits(_as_mask(A)):
            m &= self.up[a]
        return m

    def lower_bounds(self, A: int | Iterable[int]) -> int:
        m = self.full
        for a in bits(_as_mask(A)):
            m &= self.down[a]
        return m

    def minimal_of(self, A: int) -> int:
        """Minimal elements of the subset ``A`` (as a mask)."""
        out = 0
        for a in bits(A):
            if not (self.strict_down[a] & A):
                out |= 1 << a
        return out

    def maximal_of(self, A: int) -> int:
        out = 0
        for a in bits(A):
            if not (self.strict_up[a] & A):
                out |= 1 << a
        return out

    @cached_property
    def minimum(self) -> int | None:
        for i in range(self.n):
            if self.up[i] == self.full:
                return i
        return None

    @cached_property
    def maximum(self) -> int | None:
        for i in range(self.n):
            if self.down[i] == self.full:
                return i
        return None

    def least_of(self, A: int) -> int | None:
        """The least element of subset ``A`` if it has one."""
        for a in bits(A):
            if self.up[a] & A == A:
                return a
        return None

    def greatest_of(self, A: int) -> int | None:
        for a in bits(A):
            if self.down[a] & A == A:
                return a
        return None

    def meet(self, a: int, b: int) -> int | None:
        return self.greatest_of(self.down[a] & self.down[b])

    def join(self, a: int, b: int) -> int | None:
        return self.least_of(self.up[a] & self.up[b])

    @cached_property
    def meet_table(self) -> tuple[tuple[int, ...], ...]:
        """``meet_table[a][b]`` is the greatest lower bound or -1."""
        n = self.n
        rows = [[-1] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                g = self.meet(a, b)
                rows[a][b] = rows[b][a] = -1 if g is None else g
        return tuple(tuple(r) for r in rows)

    @cached_property
    def join_table(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        rows = [[-1] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                g = self.join(a, b)
                rows[a][b] = rows[b][a] = -1 if g is None else g
        return tuple(tuple(r) for r in rows)

    @cached_property
    def is_lattice(self) -> bool:
        return all(x >= 0 for row in self.meet_table for x in row) and all(
            x >= 0 for row in self.join_table for x in row
        )

    @cached_property
    def is_directed(self) -> bool:
        # finite: directed iff nonempty with a top element
        return self.maximum is not None

    @cached_property
    def components(self) -> tuple[int, ...]:
        """Connected components of the comparability graph, as masks."""
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 0
            frontier = 1 << s
            while frontier:
                comp |= frontier
                nxt = 0
                for x in bits(frontier):
                    nxt |= self.up[x] | self.down[x]
                frontier = nxt & ~comp
            seen |= comp
            comps.append(comp)
        return tuple(comps)

    def structural_predicates(self) -> StructuralPredicates:
        return StructuralPredicates(
            is_lattice=self.is_lattice,
            is_directed=self.is_directed,
            is_connected=len(self.components) <= 1,
            is_total=all((self.up[i] | self.down[i]) == self.full for i in range(self.n)),
            has_min=self.minimum is not None,
            has_max=self.maximum is not None,
        )

    # subsets

    def is_convex(self, A: int | Iterable[int]) -> bool:
        A = _as_mask(A)
        for a in bits(A):
            between = 0
            for c in bits(self.up[a] & A):
                between |= self.down[c]
            if between & self.up[a] & ~A:
                return False
        return True

    def convexity_witness(self, A: int) -> tuple[int, int, int] | None:
        for a in bits(A):
            for c in bits(self.up[a] & A):
                middle = self.up[a] & self.down[c] & ~A
                if middle:
                    return (a, next(bits(middle)), c)
        return None

    def interval(self, a: int, b: int) -> int:
        return self.up[a] & self.down[b]

    def interval_ends(self, A: int) -> tuple[int, int] | None:
        """Return ``(lo, hi)`` when ``A`` equals the interval ``[lo, hi]``."""
        lo = self.least_of(A)
        hi = self.greatest_of(A)
        if lo is None or hi is None or self.interval(lo, hi) != A:
            return None
        return lo, hi

    def hasse_connected(self, A: int) -> bool:
        """Whether the Hasse diagram restricted to ``A`` is connected."""
        if A == 0:
            return True
        start = A & -A
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            for x in bits(frontier):
                nxt |= (self.cover_up[x] | self.cover_down[x]) & A
            frontier = nxt & ~comp
            comp |= frontier
        return comp == A

    def subposet(self, elements: Sequence[int]) -> Poset:
        """Induced subposet on ``elements``, indexed in the order given."""
        pos = {e: k for k, e in enumerate(elements)}
        rows = []
        for e in elements:
            row = 0
            for f in bits(self.up[e]):
                k = pos.get(f)
                if k is not None:
                    row |= 1 << k
            rows.append(row)
        return Poset(tuple(rows), tuple(self.labels[e] for e in elements))

    def dual(self) -> Poset:
        return Poset(self.down, self.labels)

    def relabel(self, labels: Sequence[str]) -> Poset:
        return Poset(self.up, tuple(labels))

    # grading

    def grading(self) -> GradingInfo:
        n = self.n
        rank: list[int | None] = [None] * n
        for comp in self.components:
            start = next(bits(comp))
            rank[start] = 0
            queue = deque([start])
            members = [start]
            while queue:
                x = queue.popleft()
                rx = rank[x]
                assert rx is not None
                for y, step in [(y, 1) for y in bits(self.cover_up[x])] + [
                    (y, -1) for y in bits(self.cover_down[x])
                ]:
                    ry = rank[y]
                    if ry is None:
                        rank[y] = rx + step
                        queue.append(y)
                        members.append(y)
                    elif ry != rx + step:
                        pair = (x, y) if step == 1 else (y, x)
                        return GradingInfo(False, None, (), pair)
            low = min(rank[m] for m in members)  # type: ignore[type-var]
            for m in members:
                rank[m] -= low  # type: ignore[operator]
        final = tuple(int(r) for r in rank)  # type: ignore[arg-type]
        sizes = [0] * (max(final) + 1 if final else 0)
        for r in final:
            sizes[r] += 1
        return GradingInfo(True, final, tuple(sizes))

    @cached_property
    def grading_info(self) -> GradingInfo:
        return self.grading()

    # validation

    def validate(self) -> None:
        n = self.n
        for i in range(n):
            row = self.up[i]
            if row >> n:
                raise InvalidOrder(f"row {i} refers to elements beyond n={n}")
            if not (row >> i) & 1:
                raise InvalidOrder(f"not reflexive at {i}")
            for j in bits(row):
                if j != i and self.leq(j, i):
                    raise InvalidOrder(f"not antisymmetric: {i} <= {j} <= {i}")
                if self.up[j] & ~row:
                    raise InvalidOrder(f"not transitive through {i} <= {j}")


def _default_labels(n: int) -> tuple[str, ...]:
    return tuple(str(i) for i in range(n))


def from_covers(
    n: int,
    covers: Iterable[tuple[int, int]],
    labels: Sequence[str] | None = None,
) -> Poset:
    """Build a poset as the reflexive-transitive closure of cover pairs."""
    succ = [0] * n
    indeg = [0] * n
    for pair in covers:
        i, j = pair
        for x in (i, j):
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                raise BadIndex(x, n)
        if i == j:
            raise CyclicInput([i, i])
        if not (succ[i] >> j) & 1:
            succ[i] |= 1 << j
            indeg[j] += 1
    order = []
    queue = deque(i for i in range(n) if indeg[i] == 0)
    deg = list(indeg)
    while queue:
        x = queue.popleft()
        order.append(x)
        for y in bits(succ[x]):
            deg[y] -= 1
            if deg[y] == 0:
                queue.append(y)
    if len(order) != n:
        raise CyclicInput(_find_cycle(succ, [i for i in range(n) if deg[i] > 0]))
    up = [0] * n
    for x in reversed(order):
        row = 1 << x
        for y in bits(succ[x]):
            row |= up[y]
        up[x] = row
    labs = _default_labels(n) if labels is None else tuple(labels)
    return Poset(tuple(up), labs)


def _find_cycle(succ: list[int], remaining: list[int]) -> list[int]:
    alive = mask_of(remaining)
    x = remaining[0]
    path: list[int] = []
    seen: dict[int, int] = {}
    while x not in seen:
        seen[x] = len(path)
        path.append(x)
        x = next(bits(succ[x] & alive))
    return path[seen[x]:] + [x]


def from_matrix(matrix: Sequence[Sequence[bool]], labels: Sequence[str] | None = None) -> Poset:
    n = len(matrix)
    rows = []
    for i, r in enumerate(matrix):
        if len(r) != n:
            raise InvalidOrder(f"row {i} has length {len(r)}, expected {n}")
        rows.append(mask_of(j for j, v in enumerate(r) if v))
    p = Poset(tuple(rows), _default_labels(n) if labels is None else tuple(labels))
    p.validate()
    return p


def from_relation(
    elements: Sequence[object],
    leq: Callable[[object, object], bool],
    labels: Sequence[str] | None = None,
) -> Poset:
    """Build a poset from a comparison function (validated)."""
    rows = []
    for a in elements:
        rows.append(mask_of(j for j, b in enumerate(elements) if leq(a, b)))
    labs = tuple(str(e) for e in elements) if labels is None else tuple(labels)
    p = Poset(tuple(rows), labs)
    p.validate()
    return p


def chain(n: int) -> Poset:
    return from_covers(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return from_covers(n, [])


def enumerate_posets(n: int, cap: int = ENUMERATION_CAP) -> Iterator[Poset]:
    """Every labeled partial order on ``{0..n-1}``, each exactly once.

    Element ``k`` is added to a poset on ``{0..k-1}`` by choosing a down-closed
    set ``D`` below it and an up-closed set ``U`` above it with every member of
    ``D`` below every member of ``U``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise TooLarge("labeled poset enumeration", n, cap)
    labels = _default_labels(n)

    def extend(up: list[int], down: list[int], k: int) -> Iterator[tuple[int, ...]]:
        if k == n:
            yield tuple(up)
            return
        downsets = []
        upsets = []
        for S in range(1 << k):
            if all(down[x] & ~S == 0 for x in bits(S)):
                downsets.append(S)
            if all(up[x] & ~S == 0 for x in bits(S)):
                upsets.append(S)
        for D in downsets:
            above_all = (1 << k) - 1
            for d in bits(D):
                above_all &= up[d]
            for U in upsets:
                if U & D or U & ~above_all:
                    continue
                new_up = [row | (1 << k) if (D >> x) & 1 else row for x, row in enumerate(up)]
                new_up.append((1 << k) | U)
                new_down = [row | (1 << k) if (U >> x) & 1 else row for x, row in enumerate(down)]
                new_down.append((1 << k) | D)
                yield from extend(new_up, new_down, k + 1)

    for rows in extend([], [], 0):
        yield Poset(rows, labels)


def enumerate_lattices(n: int, cap: int = 7) -> Iterator[Poset]:
    """Labeled lattices on ``n`` elements with 0 as bottom and n-1 as top.

    Every lattice up to isomorphism appears (usually several times).
    """
    if n > cap:
        raise TooLarge("lattice enumeration", n, cap)
    if n == 0:
        return
    if n == 1:
        yield chain(1)
        return
    full = (1 << n) - 1
    top = 1 << (n - 1)
    for middle in enumerate_posets(n - 2, cap=cap - 2):
        rows = [full]
        for row in middle.up:
            rows.append((row << 1) | top)
        rows.append(top)
        p = Poset(tuple(rows), _default_labels(n))
        if p.is_lattice:
            yield p
