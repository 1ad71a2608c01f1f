"""Decision procedures for the congruence notions on finite posets.

Every predicate takes a poset and a partition of its elements and returns a
:class:`Verdict`.  Failing verdicts carry a :class:`Witness` naming the clause
that breaks and the elements that break it, so the failure can be replayed
against the definition independently.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from scipy.cluster.hierarchy import DisjointSet

from .errors import ImplicationViolation
from .iso import automorphisms
from .lattices import m0_sublattice, smallest_lattice_congruence
from .partition import Partition
from .poset import Poset, bits


@dataclass(frozen=True)
class Witness:
    kind: str
    clause: str
    elements: tuple[int, ...]
    explanation: str

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "clause": self.clause,
            "elements": list(self.elements),
            "explanation": self.explanation,
        }


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Witness | None = None
    not_applicable_reason: str | None = None

    def __bool__(self) -> bool:
        return self.holds

    @property
    def applicable(self) -> bool:
        return self.not_applicable_reason is None

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "witness": None if self.witness is None else self.witness.to_json(),
            "not_applicable_reason": self.not_applicable_reason,
        }


OK = Verdict(True)


def _fail(kind: str, clause: str, elements: tuple[int, ...], explanation: str) -> Verdict:
    return Verdict(False, Witness(kind, clause, tuple(elements), explanation))


def _na(reason: str) -> Verdict:
    return Verdict(False, None, reason)


def _retag(v: Verdict, kind: str, prefix: str | None = None) -> Verdict:
    """Re-label a sub-check's failure as a failure of ``kind``."""
    if v.holds or v.witness is None:
        return v
    w = v.witness
    clause = w.clause if prefix is None else f"{prefix}: {w.clause}"
    return Verdict(False, Witness(kind, clause, w.elements, w.explanation))


def _check_sizes(p: Poset, t: Partition) -> None:
    if p.n != t.n:
        raise ValueError(f"partition is on {t.n} elements but the poset has {p.n}")


# block-level quotient relation


def block_up(p: Poset, t: Partition) -> tuple[int, ...]:
    """``rel[a]`` is the mask of blocks ``b`` with some ``x in a``, ``y in b``, ``x <= y``."""
    out = []
    for mask in t.masks:
        reach = 0
        for x in bits(mask):
            reach |= p.up[x]
        out.append(t.blocks_hit(reach))
    return tuple(out)


def _bit_closure(rel: tuple[int, ...]) -> list[int]:
    reach = list(rel)
    changed = True
    while changed:
        changed = False
        for a in range(len(reach)):
            r = reach[a]
            acc = r
            for b in bits(r):
                acc |= reach[b]
            if acc != r:
                reach[a] = acc
                changed = True
    return reach


def _related_pair(p: Poset, t: Partition, a: int, b: int) -> tuple[int, int]:
    target = t.masks[b]
    for x in t.blocks[a]:
        hit = p.up[x] & target
        if hit:
            return x, next(bits(hit))
    raise AssertionError("blocks are not related")


def _block_path(rel: tuple[int, ...], src: int, dst: int) -> list[int]:
    parent = {src: src}
    queue = deque([src])
    while queue:
        a = queue.popleft()
        if a == dst and len(parent) > 1:
            break
        for b in bits(rel[a]):
            if b not in parent:
                parent[b] = a
                queue.append(b)
    path = [dst]
    while path[-1] != src:
        path.append(parent[path[-1]])
    return path[::-1]


def _lift_block_cycle(p: Poset, t: Partition, cycle: list[int]) -> tuple[int, ...]:
    """Turn a block cycle ``a0 -> a1 -> ... -> a0`` into an element circle."""
    steps = []
    for u, v in zip(cycle, cycle[1:]):
        steps.append(_related_pair(p, t, u, v))
    circle = [steps[0][0]]
    for x, y in steps:
        if circle[-1] != x:
            circle.append(x)
        circle.append(y)
    if circle[-1] != circle[0]:
        circle.append(circle[0])
    return tuple(circle)


# compatible


def is_compatible(p: Poset, t: Partition) -> Verdict:
    """No cycle through two blocks in the digraph of blocks under ``<``."""
    _check_sizes(p, t)
    rel = block_up(p, t)
    reach = _bit_closure(rel)
    for a in range(len(rel)):
        for b in bits(reach[a] & ~(1 << a)):
            if (reach[b] >> a) & 1:
                cycle = _block_path(rel, a, b)[:-1] + _block_path(rel, b, a)
                circle = _lift_block_cycle(p, t, cycle)
                return _fail(
                    "compatible",
                    "theta-circle",
                    circle,
                    "consecutive elements are equivalent or strictly increasing, "
                    "the sequence closes up, and it visits two classes",
                )
    return OK


def is_compatible_literal(p: Poset, t: Partition) -> Verdict:
    """Element-level search for a circle of ``theta``-steps and ``<``-steps."""
    _check_sizes(p, t)
    n = p.n
    step = [p.up[x] | t.block_mask_of(x) for x in range(n)]
    reach = _bit_closure(tuple(step))
    for x in range(n):
        for y in bits(reach[x] & ~t.block_mask_of(x)):
            if (reach[y] >> x) & 1:
                path = _block_path(tuple(step), x, y)[:-1] + _block_path(tuple(step), y, x)
                return _fail(
                    "compatible",
                    "theta-circle",
                    tuple(path),
                    "a closed sequence of equivalence and order steps leaving a class",
                )
    return OK


def is_compatible_by_linear_extension(p: Poset, t: Partition) -> Verdict:
    """Search for a linear extension in which every class is contiguous."""
    _check_sizes(p, t)
    n = p.n
    full = p.full
    sd = p.strict_down
    masks = t.masks
    cls = t.class_of

    @lru_cache(maxsize=None)
    def search(placed: int, open_block: int) -> bool:
        if placed == full:
            return True
        avail = 0
        for x in bits(full & ~placed):
            if sd[x] & ~placed == 0:
                avail |= 1 << x
        if open_block >= 0:
            avail &= masks[open_block]
        for x in bits(avail):
            new = placed | (1 << x)
            b = cls[x]
            nxt = -1 if masks[b] & ~new == 0 else b
            if search(new, nxt):
                return True
        return False

    if search(0, -1):
        return OK
    return _fail(
        "compatible",
        "linear-extension",
        (),
        "no linear extension places every class in a contiguous run",
    )


# weak order and III


def is_weak_order(p: Poset, t: Partition) -> Verdict:
    """The quotient relation on blocks is antisymmetric and transitive as it stands."""
    _check_sizes(p, t)
    rel = block_up(p, t)
    for a in range(len(rel)):
        for b in bits(rel[a] & ~(1 << a)):
            if (rel[b] >> a) & 1:
                x, y = _related_pair(p, t, a, b)
                y2, x2 = _related_pair(p, t, b, a)
                return _fail(
                    "weak_order",
                    "antisymmetry",
                    (x, y, y2, x2),
                    "p <= q, q ~ q', q' <= p', p' ~ p, yet p and q are not equivalent",
                )
    for a in range(len(rel)):
        for b in bits(rel[a]):
            missing = rel[b] & ~rel[a]
            if missing:
                c = next(bits(missing))
                x, y = _related_pair(p, t, a, b)
                y2, z = _related_pair(p, t, b, c)
                return _fail(
                    "weak_order",
                    "transitivity",
                    (x, y, y2, z),
                    "p <= q, q ~ q', q' <= r, but nothing equivalent to p lies below "
                    "anything equivalent to r",
                )
    return OK


def is_iii(p: Poset, t: Partition) -> Verdict:
    base = is_weak_order(p, t)
    if not base:
        return _retag(base, "iii", "weak_order")
    meet = p.meet_table
    cls = t.class_of
    for a in range(p.n):
        row = meet[a]
        for q in bits(p.up[a]):
            for r in bits(t.block_mask_of(q)):
                m = row[r]
                if m >= 0 and cls[m] != cls[a]:
                    return _fail(
                        "iii",
                        "meet",
                        (a, q, r, m),
                        "p <= q and q ~ r, the meet of p and r exists but is not equivalent to p",
                    )
    return OK


# w-stable


def is_w_stable(p: Poset, t: Partition) -> Verdict:
    """Compare ``t`` with the restriction of the least congruence of the
    principal-ideal sublattice that identifies the images of related pairs.

    Any congruence of that lattice restricting to ``t`` contains the least one,
    and restriction is monotone, so ``t`` is a restriction of some congruence
    exactly when it is the restriction of the least one.
    """
    _check_sizes(p, t)
    m0 = m0_sublattice(p)
    emb = m0.embed
    pairs = [(emb[a], emb[b]) for a, b in t.pairs()]
    theta = smallest_lattice_congruence(m0.lattice, pairs)
    restricted = theta.restrict(list(emb))
    if restricted == t:
        return OK
    for x in range(p.n):
        for y in range(x + 1, p.n):
            if restricted.same(x, y) and not t.same(x, y):
                return _fail(
                    "w_stable",
                    "restriction",
                    (x, y),
                    "every lattice congruence on the principal-ideal sublattice that "
                    "contains the partition also identifies these two elements",
                )
    raise AssertionError("restriction failed to contain the partition")


# order congruences


def is_order(p: Poset, t: Partition) -> Verdict:
    """Classes are intervals and the projections to class minimum/maximum are monotone."""
    _check_sizes(p, t)
    lo = [0] * p.n
    hi = [0] * p.n
    for mask in t.masks:
        ends = p.interval_ends(mask)
        if ends is None:
            return _fail("order", "interval", tuple(bits(mask)), "this class is not an interval")
        for x in bits(mask):
            lo[x], hi[x] = ends
    for x, y in p.covers():
        if not p.leq(lo[x], lo[y]):
            return _fail(
                "order", "down-projection", (x, y), "x <= y but min[x] is not below min[y]"
            )
        if not p.leq(hi[x], hi[y]):
            return _fail("order", "up-projection", (x, y), "x <= y but max[x] is not below max[y]")
    return OK


def _convex_check(p: Poset, t: Partition, kind: str) -> Verdict:
    for mask in t.masks:
        w = p.convexity_witness(mask)
        if w is not None:
            return _fail(kind, "convex", w, "a <= b <= c with a ~ c but b in another class")
    return OK


def is_order_literal(p: Poset, t: Partition) -> Verdict:
    """The four defining clauses checked one by one."""
    _check_sizes(p, t)
    v = _convex_check(p, t, "order")
    if not v:
        return v
    up, down = p.up, p.down
    for mask in t.masks:
        members = list(bits(mask))
        for i, q in enumerate(members):
            for r in members[i:]:
                if not (down[q] & down[r] & mask):
                    return _fail("order", "common-bounds", (q, r), "no common lower bound in the class")
                if not (up[q] & up[r] & mask):
                    return _fail("order", "common-bounds", (q, r), "no common upper bound in the class")
    for u in range(p.n):
        for a in bits(up[u] & t.block_mask_of(u)):
            for q in bits(up[u]):
                if not (up[a] & up[q] & t.block_mask_of(q)):
                    return _fail(
                        "order",
                        "upper",
                        (u, a, q),
                        "u <= p, u <= q, u ~ p, but no t >= p, q with t ~ q",
                    )
    for v_ in range(p.n):
        for q in bits(down[v_] & t.block_mask_of(v_)):
            for a in bits(down[v_]):
                if not (down[a] & down[q] & t.block_mask_of(a)):
                    return _fail(
                        "order",
                        "lower",
                        (v_, q, a),
                        "p <= v, q <= v, v ~ q, but no s <= p, q with s ~ p",
                    )
    return OK


# regularity and friends


def is_upper_regular(p: Poset, t: Partition) -> Verdict:
    _check_sizes(p, t)
    for a in range(p.n):
        same = t.block_mask_of(a)
        for q in bits(p.up[a]):
            target = t.block_mask_of(q)
            for a2 in bits(same):
                if not (p.up[a2] & target):
                    return _fail(
                        "upper_regular",
                        "upper-regular",
                        (a, q, a2),
                        "p <= q and p ~ p', but nothing equivalent to q lies above p'",
                    )
    return OK


def is_lower_regular(p: Poset, t: Partition) -> Verdict:
    v = is_upper_regular(p.dual(), t)
    if v or v.witness is None:
        return v
    a, q, a2 = v.witness.elements
    return _fail(
        "lower_regular",
        "lower-regular",
        (q, a, a2),
        "p <= q and q ~ q', but nothing equivalent to p lies below q'",
    )


def is_convex_partition(p: Poset, t: Partition) -> Verdict:
    _check_sizes(p, t)
    return _convex_check(p, t, "convex")


def is_gk(p: Poset, t: Partition) -> Verdict:
    for check in (is_upper_regular, is_lower_regular, is_convex_partition):
        v = check(p, t)
        if not v:
            return _retag(v, "gk")
    return OK


def is_haviar_lihova(p: Poset, t: Partition) -> Verdict:
    _check_sizes(p, t)
    v = _convex_check(p, t, "haviar_lihova")
    if not v:
        return v
    v = _hl_sup_clause(p, t)
    if not v:
        return v
    v = _hl_sup_clause(p.dual(), t)
    if not v and v.witness is not None:
        a, a2, q = v.witness.elements
        # in the dual, "q <= p, q ~ q'" with lower bounds of {p, q'} examined
        return _fail(
            "haviar_lihova",
            "inf-set",
            (q, a, a2),
            "p <= q, q ~ q', and the maximal common lower bounds of p and q' "
            "are missing or leave the class of p",
        )
    return OK


def _hl_sup_clause(p: Poset, t: Partition) -> Verdict:
    for a in range(p.n):
        for a2 in bits(t.block_mask_of(a)):
            for q in bits(p.up[a]):
                ub = p.up[a2] & p.up[q]
                if not ub or p.minimal_of(ub) & ~t.block_mask_of(q):
                    return _fail(
                        "haviar_lihova",
                        "sup-set",
                        (a, a2, q),
                        "p ~ p', p <= q, and the minimal common upper bounds of p' and q "
                        "are missing or leave the class of q",
                    )
    return OK


def is_closure(p: Poset, t: Partition) -> Verdict:
    _check_sizes(p, t)
    for mask in t.masks:
        tops = p.maximal_of(mask)
        if tops.bit_count() > 1:
            two = tuple(bits(tops))[:2]
            return _fail("closure", "unique-maximum", two, "the class has two maximal elements")
    return _retag(is_upper_regular(p, t), "closure")


def closure_operator(p: Poset, t: Partition) -> tuple[int, ...] | None:
    """The map sending each element to its class maximum, if every class has one."""
    f = [0] * p.n
    for mask in t.masks:
        top = p.greatest_of(mask)
        if top is None:
            return None
        for x in bits(mask):
            f[x] = top
    return tuple(f)


def closed_elements(p: Poset, t: Partition) -> tuple[int, ...] | None:
    f = closure_operator(p, t)
    if f is None:
        return None
    return tuple(sorted(set(f)))


def is_closure_operator(p: Poset, f: tuple[int, ...]) -> bool:
    for x in range(p.n):
        if f[f[x]] != f[x] or not p.leq(x, f[x]):
            return False
    return all(p.leq(f[x], f[y]) for x, y in p.covers())


def is_order_autonomous(p: Poset, t: Partition) -> Verdict:
    _check_sizes(p, t)
    for mask in t.masks:
        for x in bits(p.full & ~mask):
            for rel, word in ((p.up[x], "below"), (p.down[x], "above")):
                hit = rel & mask
                if hit and hit != mask:
                    inside = next(bits(hit))
                    outside = next(bits(mask & ~hit))
                    return _fail(
                        "order_autonomous",
                        word,
                        (x, inside, outside),
                        f"an outside element is {word} one member of the class but not another",
                    )
    return OK


# Kolibiar


def _kolibiar_two_three(p: Poset, t: Partition) -> Verdict:
    up, down = p.up, p.down
    for a in range(p.n):
        cls_a = t.block_mask_of(a)
        for q in bits(cls_a):
            common = up[a] & up[q]
            cover = 0
            for s in bits(common & cls_a):
                cover |= up[s]
            bad = common & ~cover
            if bad:
                r = next(bits(bad))
                return _fail(
                    "kolibiar",
                    "join-like",
                    (a, q, r),
                    "p <= r, q <= r, p ~ q, but no s with p <= s <= r, q <= s, s ~ p",
                )
    for r in range(p.n):
        for a in bits(up[r] & t.block_mask_of(r)):
            for q in bits(up[r]):
                common = up[a] & up[q]
                mids = common & t.block_mask_of(q)
                cover = 0
                for s in bits(mids):
                    cover |= up[s]
                bad = common & ~cover
                if bad:
                    s = next(bits(bad))
                    return _fail(
                        "kolibiar",
                        "substitution-like",
                        (r, a, q, s),
                        "r <= p <= s, r <= q <= s, r ~ p, but no t with q <= t <= s, p <= t, t ~ q",
                    )
    return OK


def is_kolibiar(p: Poset, t: Partition) -> Verdict:
    _check_sizes(p, t)
    # The clauses come with their duals, so we ask for directedness both ways;
    # with upper bounds alone the implication to GK fails (a V with one arm
    # merged into the top).
    if not p.is_directed or p.minimum is None:
        return _na("poset is not directed both upwards and downwards")
    v = _convex_check(p, t, "kolibiar")
    if not v:
        return v
    v = _kolibiar_two_three(p, t)
    if not v:
        return v
    v = _kolibiar_two_three(p.dual(), t)
    if not v:
        return _retag(v, "kolibiar", "dual")
    return OK


def is_homogeneous(p: Poset, t: Partition) -> Verdict:
    _check_sizes(p, t)
    zero = p.minimum
    if zero is None:
        return _na("no unique minimal element")
    if t.block_mask_of(zero) != 1 << zero:
        other = next(bits(t.block_mask_of(zero) & ~(1 << zero)))
        return _fail("homogeneous", "singleton-bottom", (zero, other), "the bottom shares its class")
    return _retag(is_upper_regular(p, t), "homogeneous")


def is_contraction(p: Poset, t: Partition) -> Verdict:
    v = is_compatible(p, t)
    if not v:
        return _retag(v, "contraction")
    for mask in t.masks:
        if not p.hasse_connected(mask):
            return _fail(
                "contraction",
                "connected",
                tuple(bits(mask)),
                "the class is disconnected in the Hasse diagram",
            )
    return OK


# lattices


def is_lattice_congruence(p: Poset, t: Partition) -> Verdict:
    """Substitution property for meets and joins."""
    _check_sizes(p, t)
    if not p.is_lattice:
        return _na("poset is not a lattice")
    cls = t.class_of
    join, meet = p.join_table, p.meet_table
    for a, b in t.pairs():
        for z in range(p.n):
            if cls[join[a][z]] != cls[join[b][z]]:
                return _fail("lattice", "join", (a, b, z), "x ~ y but x v z and y v z differ")
            if cls[meet[a][z]] != cls[meet[b][z]]:
                return _fail("lattice", "meet", (a, b, z), "x ~ y but x ^ z and y ^ z differ")
    return OK


def is_lattice_congruence_lemma(p: Poset, t: Partition) -> Verdict:
    """Two-condition criterion: collapse of meet/join, and substitution along comparable pairs."""
    _check_sizes(p, t)
    if not p.is_lattice:
        return _na("poset is not a lattice")
    cls = t.class_of
    join, meet = p.join_table, p.meet_table
    n = p.n
    for x in range(n):
        for y in range(n):
            if (cls[x] == cls[y]) != (cls[meet[x][y]] == cls[join[x][y]]):
                return _fail("lattice", "collapse", (x, y), "x ~ y differs from x^y ~ xvy")
    for x in range(n):
        for y in bits(p.up[x] & t.block_mask_of(x)):
            for w in range(n):
                if cls[meet[x][w]] != cls[meet[y][w]] or cls[join[x][w]] != cls[join[y][w]]:
                    return _fail(
                        "lattice", "comparable-substitution", (x, y, w), "x <= y, x ~ y, w breaks it"
                    )
    return OK


def is_graded_preserving(p: Poset, t: Partition) -> Verdict:
    g = p.grading_info
    if not g.is_graded:
        return _na("poset is not graded")
    assert g.rank is not None
    for mask in t.masks:
        members = list(bits(mask))
        for x in members[1:]:
            if g.rank[x] != g.rank[members[0]]:
                return _fail(
                    "graded_preserving",
                    "rank-constant",
                    (members[0], x),
                    "equivalent elements of different rank",
                )
    return OK


# orbits


def block_preserving_orbits(p: Poset, t: Partition) -> Partition:
    """Orbits of the group of automorphisms that fix every class setwise."""
    _check_sizes(p, t)
    allowed = [t.block_mask_of(i) for i in range(p.n)]
    ds = DisjointSet(range(p.n))
    for g in automorphisms(p, allowed):
        for x, y in enumerate(g):
            ds.merge(x, y)
    return Partition.from_labels([ds[x] for x in range(p.n)])


def is_orbit(p: Poset, t: Partition) -> Verdict:
    """Whether ``t`` is the orbit partition of some group of automorphisms."""
    orbits = block_preserving_orbits(p, t)
    if orbits == t:
        return OK
    for mask in t.masks:
        members = list(bits(mask))
        for x in members[1:]:
            if not orbits.same(members[0], x):
                return _fail(
                    "orbit",
                    "orbit",
                    (members[0], x),
                    "no automorphism preserving every class maps one element to the other",
                )
    raise AssertionError("orbits not contained in the partition")


# classification

KINDS: tuple[str, ...] = (
    "compatible",
    "weak_order",
    "iii",
    "w_stable",
    "order",
    "haviar_lihova",
    "gk",
    "closure",
    "order_autonomous",
    "kolibiar",
    "homogeneous",
    "contraction",
    "lattice",
    "graded_preserving",
    "orbit",
)

CHECKERS: dict[str, Callable[[Poset, Partition], Verdict]] = {
    "compatible": is_compatible,
    "weak_order": is_weak_order,
    "iii": is_iii,
    "w_stable": is_w_stable,
    "order": is_order,
    "haviar_lihova": is_haviar_lihova,
    "gk": is_gk,
    "closure": is_closure,
    "order_autonomous": is_order_autonomous,
    "kolibiar": is_kolibiar,
    "homogeneous": is_homogeneous,
    "contraction": is_contraction,
    "lattice": is_lattice_congruence,
    "graded_preserving": is_graded_preserving,
    "orbit": is_orbit,
}


@dataclass(frozen=True)
class Arrow:
    source: str
    target: str
    condition: str | None = None

    def __str__(self) -> str:
        cond = f" [{self.condition}]" if self.condition else ""
        return f"{self.source} => {self.target}{cond}"


# Known implications. Conditions: "finite" and "directed" are automatic here
# (finite inputs; Kolibiar is only applicable on directed posets), "strong"
# means the quotient map is strong, "zero" means a unique minimum forms its
# own class.
ARROWS: tuple[Arrow, ...] = (
    Arrow("haviar_lihova", "order"),
    Arrow("order", "w_stable", "finite"),
    Arrow("w_stable", "iii", "strong"),
    Arrow("iii", "weak_order"),
    Arrow("weak_order", "compatible"),
    Arrow("order", "gk"),
    Arrow("order", "closure", "finite"),
    Arrow("order", "contraction", "finite"),
    Arrow("closure", "weak_order"),
    Arrow("order_autonomous", "gk"),
    Arrow("kolibiar", "gk", "directed"),
    Arrow("orbit", "gk"),
    Arrow("gk", "homogeneous", "zero"),
    Arrow("homogeneous", "weak_order", "finite"),
    Arrow("contraction", "compatible"),
)

DIAGRAM_KINDS: tuple[str, ...] = tuple(k for k in KINDS if k not in ("lattice", "graded_preserving"))


@dataclass(frozen=True)
class CongruenceReport:
    verdicts: dict[str, Verdict] = field(default_factory=dict)
    violations: tuple[Arrow, ...] = ()

    def __getitem__(self, kind: str) -> Verdict:
        return self.verdicts[kind]

    def holds(self, kind: str) -> bool:
        return self.verdicts[kind].holds

    def to_json(self) -> dict:
        return {
            "verdicts": {k: v.to_json() for k, v in self.verdicts.items()},
            "implication_violations": [str(a) for a in self.violations],
        }


def singleton_zero(p: Poset, t: Partition) -> bool:
    z = p.minimum
    return z is not None and t.block_mask_of(z) == 1 << z


def arrow_premise(p: Poset, t: Partition, verdicts: dict[str, Verdict], arrow: Arrow) -> bool:
    if not verdicts[arrow.source].holds:
        return False
    if arrow.condition == "strong":
        return verdicts["weak_order"].holds
    if arrow.condition == "zero":
        return singleton_zero(p, t)
    return True


def check_arrows(p: Poset, t: Partition, verdicts: dict[str, Verdict]) -> list[Arrow]:
    return [
        a for a in ARROWS if arrow_premise(p, t, verdicts, a) and not verdicts[a.target].holds
    ]


def classify(
    p: Poset,
    t: Partition,
    strict: bool = True,
    kinds: tuple[str, ...] = KINDS,
) -> CongruenceReport:
    """Run every checker; with ``strict`` a broken implication raises."""
    _check_sizes(p, t)
    verdicts = {k: CHECKERS[k](p, t) for k in kinds}
    violations: tuple[Arrow, ...] = ()
    if all(k in verdicts for k in DIAGRAM_KINDS):
        violations = tuple(check_arrows(p, t, verdicts))
        if violations and strict:
            raise ImplicationViolation(list(violations))
    return CongruenceReport(verdicts, violations)
