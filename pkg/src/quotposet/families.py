"""Example families: Boolean, Young, Tamari and Bruhat orders, and their
canonical congruences (Cambrian, Simion, double cosets, graph orbits)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Sequence

from scipy.cluster.hierarchy import DisjointSet

from .errors import InvalidPartition, TooLarge
from .lattices import smallest_lattice_congruence
from .partition import Partition
from .poset import Poset, antichain, bits, chain, from_covers
from .quotients import PermutationGroup, orbit_partition, quotient_poset

__all__ = [
    "boolean_lattice",
    "chain",
    "antichain",
    "product",
    "crown4",
    "pentagon",
    "two_diamond_lattice",
    "stacked_bowties",
    "split_upper_bounds",
    "uneven_fork",
    "hexagon",
    "two_cherries",
    "young_lattice",
    "weak_bruhat_A",
    "weak_bruhat_A_by_covers",
    "weak_bruhat_B",
    "strong_bruhat_A",
    "double_coset_partition",
    "tamari",
    "psi",
    "psi_partition",
    "cambrian_partition",
    "cambrian_partition_B",
    "simion_partition",
    "graph_poset",
]

GRAPH_POSET_CAP = 4


# ---------------------------------------------------------------- basics


def _subset_label(s: int) -> str:
    return "{" + ",".join(str(i + 1) for i in bits(s)) + "}"


def boolean_lattice(n: int) -> Poset:
    """Subsets of ``{1..n}``; element ``k`` is the subset with bitmask ``k``."""
    size = 1 << n
    rows = []
    for s in range(size):
        row = 0
        for t in range(size):
            if s & ~t == 0:
                row |= 1 << t
        rows.append(row)
    return Poset(tuple(rows), tuple(_subset_label(s) for s in range(size)))


def product(p: Poset, q: Poset) -> Poset:
    """Cartesian product; element ``i * q.n + j`` is the pair ``(i, j)``."""
    rows = []
    for i in range(p.n):
        for j in range(q.n):
            row = 0
            for a in bits(p.up[i]):
                for b in bits(q.up[j]):
                    row |= 1 << (a * q.n + b)
            rows.append(row)
    labels = tuple(f"({p.labels[i]},{q.labels[j]})" for i in range(p.n) for j in range(q.n))
    return Poset(tuple(rows), labels)


def crown4() -> Poset:
    """Two minimal elements each below both of two maximal elements."""
    return from_covers(4, [(0, 2), (0, 3), (1, 2), (1, 3)], ["a1", "a2", "b1", "b2"])


def pentagon() -> Poset:
    """The non-modular five-element lattice ``0 < a < b < 1``, ``0 < c < 1``."""
    return from_covers(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], ["0", "a", "b", "c", "1"])


def two_diamond_lattice() -> tuple[Poset, Partition]:
    """Two stacked diamonds joined by a cover, with the class merging that cover."""
    labels = ["x00", "x10", "x01", "x11", "y00", "y10", "y01", "y11"]
    covers = [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 7), (6, 7)]
    p = from_covers(8, covers, labels)
    return p, Partition.from_blocks(8, [[0], [1], [2], [3, 4], [5], [6], [7]])


def stacked_bowties() -> Poset:
    """``0 < 1, 2 < 3, 4 < 5`` with every cover between consecutive levels."""
    covers = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)]
    return from_covers(6, covers, ["0", "a", "b", "c", "d", "1"])


def split_upper_bounds() -> tuple[Poset, Partition]:
    """Six elements where ``p' ~ p <= q`` but ``p'`` and ``q`` have two minimal
    upper bounds in different classes, with its three-class partition."""
    labels = ["p", "p'", "q", "m", "u", "M"]
    covers = [(0, 1), (0, 2), (2, 3), (1, 3), (2, 4), (1, 4), (4, 5), (3, 5)]
    return from_covers(6, covers, labels), Partition.from_blocks(6, [[0, 1], [2, 3], [4, 5]])


def uneven_fork() -> Poset:
    """Chains of lengths three and two from a common bottom."""
    return from_covers(6, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5)], ["0", "a1", "a2", "a3", "b1", "b2"])


def hexagon() -> Poset:
    """Two chains of length three sharing both ends; collapsing one inner
    cover leaves a non-graded quotient."""
    return from_covers(6, [(0, 1), (1, 4), (4, 5), (0, 2), (2, 3), (3, 5)], ["0", "a1", "b1", "b2", "a2", "1"])


def two_cherries() -> Poset:
    """Two disjoint copies of two minimal elements under a common top."""
    return from_covers(6, [(0, 2), (1, 2), (3, 5), (4, 5)], ["a", "b", "ab", "c", "d", "cd"])


# ------------------------------------------------------------ Young's lattice


def young_diagrams(m: int, n: int) -> list[tuple[int, ...]]:
    """Partitions with at most ``m`` parts, each at most ``n``, as weakly
    decreasing ``m``-tuples padded with zeros."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], bound: int) -> None:
        if len(prefix) == m:
            out.append(tuple(prefix))
            return
        for part in range(bound, -1, -1):
            rec(prefix + [part], part)

    rec([], n)
    out.sort(key=lambda lam: (sum(lam), tuple(-x for x in lam)))
    return out


def young_lattice(m: int, n: int) -> Poset:
    """Young diagrams fitting in an ``m x n`` box, ordered by containment."""
    diagrams = young_diagrams(m, n)
    rows = []
    for lam in diagrams:
        row = 0
        for k, mu in enumerate(diagrams):
            if all(a <= b for a, b in zip(lam, mu)):
                row |= 1 << k
        rows.append(row)
    labels = tuple("(" + ",".join(str(x) for x in lam if x) + ")" for lam in diagrams)
    return Poset(tuple(rows), labels)


# ------------------------------------------------------------- type A


def _perm_label(w: Sequence[int]) -> str:
    return "".join(str(x) for x in w) if len(w) < 10 else " ".join(str(x) for x in w)


def permutations_of(n: int) -> list[tuple[int, ...]]:
    return list(permutations(range(1, n + 1)))


def inversion_mask(w: Sequence[int]) -> int:
    """Position pairs ``i < j`` with ``w[i] > w[j]``, as a bitmask over pairs."""
    n = len(w)
    mask = 0
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if w[i] > w[j]:
                mask |= 1 << k
            k += 1
    return mask


def apply_word(n: int, word: Iterable[int]) -> tuple[int, ...]:
    """Apply generators left to right, each ``s_i`` swapping the values ``i`` and ``i+1``."""
    w = list(range(1, n + 1))
    for i in word:
        a, b = w.index(i), w.index(i + 1)
        w[a], w[b] = w[b], w[a]
    return tuple(w)


def reduced_word(w: Sequence[int]) -> tuple[int, ...]:
    """A reduced word ``(i_1, ..., i_k)`` with ``apply_word(n, word) == w``."""
    cur = list(w)
    rev: list[int] = []
    while True:
        pos = {v: k for k, v in enumerate(cur)}
        for i in range(1, len(cur)):
            if pos[i + 1] < pos[i]:
                a, b = pos[i], pos[i + 1]
                cur[a], cur[b] = cur[b], cur[a]
                rev.append(i)
                break
        else:
            return tuple(reversed(rev))


def weak_bruhat_A(n: int) -> Poset:
    """Permutations of ``[n]`` ordered by containment of inversion sets."""
    perms = permutations_of(n)
    inv = [inversion_mask(w) for w in perms]
    rows = []
    for a in inv:
        row = 0
        for k, b in enumerate(inv):
            if a & ~b == 0:
                row |= 1 << k
        rows.append(row)
    return Poset(tuple(rows), tuple(_perm_label(w) for w in perms))


def weak_bruhat_A_by_covers(n: int) -> Poset:
    """Same order, from covers: swap adjacent values ``i``, ``i+1`` when ``i`` comes first."""
    perms = permutations_of(n)
    index = {w: k for k, w in enumerate(perms)}
    covers = []
    for w in perms:
        pos = {v: k for k, v in enumerate(w)}
        for i in range(1, n):
            if pos[i] < pos[i + 1]:
                v = list(w)
                v[pos[i]], v[pos[i + 1]] = i + 1, i
                covers.append((index[w], index[tuple(v)]))
    return from_covers(len(perms), covers, [_perm_label(w) for w in perms])


def strong_bruhat_A(n: int) -> Poset:
    """Bruhat order: ``u <= w`` iff ``u`` is the product of a subword of a
    fixed reduced word of ``w``."""
    perms = permutations_of(n)
    index = {w: k for k, w in enumerate(perms)}
    rows = [0] * len(perms)
    for w in perms:
        reach = {tuple(range(1, n + 1))}
        for i in reduced_word(w):
            step = set()
            for x in reach:
                v = list(x)
                a, b = v.index(i), v.index(i + 1)
                v[a], v[b] = v[b], v[a]
                step.add(tuple(v))
            reach |= step
        for u in reach:
            rows[index[u]] |= 1 << index[w]
    return Poset(tuple(rows), tuple(_perm_label(w) for w in perms))


def double_coset_partition(n: int, J: Iterable[int], K: Iterable[int]) -> Partition:
    """Double cosets ``W_J w W_K``: ``J`` swaps values, ``K`` swaps positions."""
    perms = permutations_of(n)
    index = {w: k for k, w in enumerate(perms)}
    J, K = sorted(set(J)), sorted(set(K))
    for s in J + K:
        if not 1 <= s < n:
            raise ValueError(f"generator s{s} out of range for n={n}")
    ds = DisjointSet(range(len(perms)))
    for w in perms:
        for s in J:
            v = tuple(s + 1 if x == s else s if x == s + 1 else x for x in w)
            ds.merge(index[w], index[v])
        for s in K:
            v = list(w)
            v[s - 1], v[s] = v[s], v[s - 1]
            ds.merge(index[w], index[tuple(v)])
    return Partition.from_labels([ds[k] for k in range(len(perms))])


def cambrian_partition(n: int, orientation: str) -> Partition:
    """Cambrian congruence on ``weak_bruhat_A(n)``.

    ``orientation[i]`` is ``">"`` when the diagram edge between ``s_{i+1}``
    and ``s_{i+2}`` points up (``s_{i+1} -> s_{i+2}``) and ``"<"`` otherwise.
    An edge ``s -> t`` contributes the generating pair ``(t, ts)``.
    """
    if len(orientation) != max(n - 2, 0) or set(orientation) - {"<", ">"}:
        raise ValueError(f"orientation needs {max(n - 2, 0)} characters from '<>'")
    perms = permutations_of(n)
    index = {w: k for k, w in enumerate(perms)}
    pairs = []
    for i, c in enumerate(orientation):
        s, t = (i + 1, i + 2) if c == ">" else (i + 2, i + 1)
        pairs.append((index[apply_word(n, [t])], index[apply_word(n, [t, s])]))
    return smallest_lattice_congruence(weak_bruhat_A(n), pairs)


# ------------------------------------------------------------ binary trees

Tree = tuple | None


def binary_trees(n: int) -> list[Tree]:
    """All binary trees with ``n`` internal nodes; a leaf is ``None``."""
    if n == 0:
        return [None]
    out: list[Tree] = []
    for k in range(n):
        for left in binary_trees(k):
            for right in binary_trees(n - 1 - k):
                out.append((left, right))
    return out


def tree_label(t: Tree) -> str:
    if t is None:
        return "."
    return "(" + tree_label(t[0]) + tree_label(t[1]) + ")"


def tree_size(t: Tree) -> int:
    return 0 if t is None else 1 + tree_size(t[0]) + tree_size(t[1])


def forward_rotations(t: Tree) -> Iterable[Tree]:
    """Trees obtained by one rotation ``((A, B), C) -> (A, (B, C))`` anywhere."""
    if t is None:
        return
    left, right = t
    if left is not None:
        a, b = left
        yield (a, (b, right))
    for l2 in forward_rotations(left):
        yield (l2, right)
    for r2 in forward_rotations(right):
        yield (left, r2)


def tamari(n: int) -> Poset:
    """Binary trees with ``n`` internal nodes; covers are forward rotations."""
    trees = binary_trees(n)
    index = {t: k for k, t in enumerate(trees)}
    covers = [(index[t], index[u]) for t in trees for u in forward_rotations(t)]
    return from_covers(len(trees), covers, [tree_label(t) for t in trees])


def _standardize(seq: Sequence[int]) -> tuple[int, ...]:
    order = sorted(seq)
    rank = {v: k + 1 for k, v in enumerate(order)}
    return tuple(rank[v] for v in seq)


def psi(w: Sequence[int]) -> Tree:
    """Permutation-to-tree map: split at the largest value; the left and right
    parts, standardized, give the two subtrees."""
    if not w:
        return None
    k = w.index(max(w))
    return (psi(_standardize(w[:k])), psi(_standardize(w[k + 1 :])))


def psi_partition(n: int) -> tuple[Partition, tuple[int, ...]]:
    """Kernel of the permutation-to-tree map on ``weak_bruhat_A(n)``, plus the
    image index of each permutation in ``tamari(n)``."""
    index = {t: k for k, t in enumerate(binary_trees(n))}
    image = tuple(index[psi(w)] for w in permutations_of(n))
    return Partition.from_labels(image), image


# ------------------------------------------------------------- type B


@dataclass(frozen=True)
class SignedPermutation:
    """Abbreviated one-line form ``x_1 ... x_n`` with ``x_{-i} = -x_i``."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(abs(x) for x in self.values) != list(range(1, len(self.values) + 1)):
            raise ValueError(f"{self.values} is not a signed permutation")

    @property
    def n(self) -> int:
        return len(self.values)

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.values)

    @property
    def positive_part(self) -> tuple[int, ...]:
        return tuple(x for x in self.values if x > 0)

    @property
    def negative_part(self) -> tuple[int, ...]:
        return tuple(x for x in self.values if x < 0)

    def length(self) -> int:
        """Coxeter length for generators: swap positions ``i, i+1``, negate the last entry.

        Reversing positions and values conjugates these generators to the
        usual ones (negate the first entry), where the length is the number
        of inversions minus the sum of the negative entries.
        """
        n = self.n
        conj = [(1 if x > 0 else -1) * (n + 1 - abs(x)) for x in reversed(self.values)]
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if conj[i] > conj[j])
        return inv - sum(x for x in conj if x < 0)

    def right_generators(self) -> list[SignedPermutation]:
        """``w s`` for each simple generator ``s``."""
        v = self.values
        out = [SignedPermutation(v[:i] + (v[i + 1], v[i]) + v[i + 2 :]) for i in range(self.n - 1)]
        out.append(SignedPermutation(v[:-1] + (-v[-1],)))
        return out


def _bfs_signed(n: int) -> list[SignedPermutation]:
    start = SignedPermutation(tuple(range(1, n + 1)))
    seen = {start: 0}
    order = [start]
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for v in w.right_generators():
            if v not in seen:
                seen[v] = len(seen)
                order.append(v)
                queue.append(v)
    order.sort(key=lambda w: (w.length(), w.values))
    return order


def signed_permutations(n: int) -> list[SignedPermutation]:
    return _bfs_signed(n)


def weak_bruhat_B(n: int) -> Poset:
    """Right weak order on signed permutations, generated by length-increasing
    right multiplications by simple generators."""
    elems = signed_permutations(n)
    index = {w: k for k, w in enumerate(elems)}
    covers = []
    for w in elems:
        lw = w.length()
        for v in w.right_generators():
            if v.length() == lw + 1:
                covers.append((index[w], index[v]))
    return from_covers(len(elems), covers, [str(w) for w in elems])


def simion_partition(n: int) -> Partition:
    """Intervals ``[s+ s-, s- s+]`` of the weak order on signed permutations,
    where ``s+`` and ``s-`` are the positive and negative subwords."""
    p = weak_bruhat_B(n)
    elems = signed_permutations(n)
    index = {w: k for k, w in enumerate(elems)}
    blocks = []
    covered = 0
    for w in elems:
        lo = index[SignedPermutation(w.positive_part + w.negative_part)]
        hi = index[SignedPermutation(w.negative_part + w.positive_part)]
        mask = p.interval(lo, hi)
        if not (mask >> index[w]) & 1:
            raise InvalidPartition(f"{w} lies outside its interval")
        if mask in blocks:
            continue
        if mask & covered:
            raise InvalidPartition("intervals overlap")
        blocks.append(mask)
        covered |= mask
    return Partition.from_blocks(p.n, [list(bits(m)) for m in blocks])


def cambrian_partition_B(n: int) -> Partition:
    """Cambrian congruence on ``weak_bruhat_B(n)`` for the orientation making
    the sign generator a source and the rest a forward path.

    The sign generator meets its neighbour with ``m = 4``, so that edge
    contributes ``t ~ tst``; the other edges contribute ``t ~ ts``.
    """
    p = weak_bruhat_B(n)
    elems = signed_permutations(n)
    index = {w: k for k, w in enumerate(elems)}
    ident = SignedPermutation(tuple(range(1, n + 1)))

    def word(letters: Sequence[int]) -> int:
        w = ident
        for gen in letters:
            w = w.right_generators()[gen]
        return index[w]

    # generator n-1 negates the last entry; generator i swaps positions i, i+1
    sign = n - 1
    chain_gens = list(range(n - 2, -1, -1))
    pairs = []
    if n >= 2:
        s, t = sign, chain_gens[0]
        pairs.append((word([t]), word([t, s, t])))
        for s, t in zip(chain_gens, chain_gens[1:]):
            pairs.append((word([t]), word([t, s])))
    return smallest_lattice_congruence(p, pairs)


# -------------------------------------------------------- group actions


def induced_subset_action(n: int, perm: Sequence[int]) -> tuple[int, ...]:
    """Permutation of the subsets of ``{0..n-1}`` induced by ``perm``."""
    out = []
    for s in range(1 << n):
        t = 0
        for i in bits(s):
            t |= 1 << perm[i]
        out.append(t)
    return tuple(out)


def boolean_action(n: int, generators: Iterable[Sequence[int]]) -> PermutationGroup:
    """Lift permutations of the ground set to automorphisms of ``boolean_lattice(n)``."""
    return PermutationGroup(1 << n, tuple(induced_subset_action(n, g) for g in generators))


def _transposition(n: int, i: int, j: int) -> tuple[int, ...]:
    g = list(range(n))
    g[i], g[j] = j, i
    return tuple(g)


def _cycle(n: int) -> tuple[int, ...]:
    return tuple((i + 1) % n for i in range(n))


def symmetric_generators(points: Sequence[int], n: int) -> list[tuple[int, ...]]:
    """Adjacent transpositions of ``points`` inside ``S_n``."""
    return [_transposition(n, a, b) for a, b in zip(points, points[1:])]


def wreath_generators(rows: int, cols: int) -> list[tuple[int, ...]]:
    """Permute entries within each row of a ``rows x cols`` grid, and permute the rows."""
    n = rows * cols
    gens = []
    for r in range(rows):
        gens += symmetric_generators([r * cols + c for c in range(cols)], n)
    for r in range(rows - 1):
        g = list(range(n))
        for c in range(cols):
            a, b = r * cols + c, (r + 1) * cols + c
            g[a], g[b] = b, a
        gens.append(tuple(g))
    return gens


def edge_generators(m: int) -> tuple[list[tuple[int, int]], list[tuple[int, ...]]]:
    """Vertex pairs of ``K_m`` and the action of adjacent vertex swaps on them."""
    edges = list(combinations(range(m), 2))
    index = {e: k for k, e in enumerate(edges)}
    gens = []
    for v in range(m - 1):
        swap = _transposition(m, v, v + 1)
        gens.append(tuple(index[tuple(sorted((swap[a], swap[b])))] for a, b in edges))
    return edges, gens


def harness_groups(n: int) -> list[tuple[str, list[tuple[int, ...]]]]:
    """Named permutation groups of ``{0..n-1}`` used to test orbit quotients."""
    groups: list[tuple[str, list[tuple[int, ...]]]] = [("trivial", [])]
    if n >= 2:
        groups.append(("symmetric", symmetric_generators(range(n), n)))
        groups.append(("cyclic", [_cycle(n)]))
    if n >= 3:
        flip = tuple(n - 1 - i for i in range(n))
        groups.append(("dihedral", [_cycle(n), flip]))
    for k in range(1, n // 2 + 1):
        if n - k >= 1 and (k >= 2 or n - k >= 2):
            gens = symmetric_generators(range(k), n) + symmetric_generators(range(k, n), n)
            groups.append((f"young_{k}_{n - k}", gens))
    for rows in range(2, n):
        if n % rows == 0 and n // rows >= 2:
            groups.append((f"wreath_{rows}x{n // rows}", wreath_generators(rows, n // rows)))
    for m in range(3, 5):
        if m * (m - 1) // 2 == n:
            groups.append((f"edges_K{m}", edge_generators(m)[1]))
    return groups


def orbit_quotient_of_boolean(n: int, generators: Sequence[Sequence[int]]) -> tuple[Poset, Partition]:
    b = boolean_lattice(n)
    part = orbit_partition(b, boolean_action(n, generators))
    return quotient_poset(b, part, "strict").quotient, part


def graph_poset(m: int, cap: int = GRAPH_POSET_CAP) -> tuple[Poset, Partition]:
    """Isomorphism classes of simple graphs on ``m`` vertices under the subgraph order,
    as the orbit quotient of the Boolean lattice on vertex pairs."""
    if m > cap:
        raise TooLarge("graph poset vertex count", m, cap)
    edges, gens = edge_generators(m)
    q, part = orbit_quotient_of_boolean(len(edges), gens)
    labels = tuple(f"{bin(part.blocks[k][0]).count('1')}e#{k}" for k in range(q.n))
    return q.relabel(labels), part
