from __future__ import annotations

import pytest
from hypothesis import given

from conftest import poset_and_partition, posets
from oracles import brute_compatible, brute_orbits, brute_strong_map, matrix_of
from quotposet import families
from quotposet.congruences import is_compatible, is_order_autonomous, is_weak_order
from quotposet.errors import NotAutomorphism, NotCompatible, NotWeakOrder
from quotposet.iso import is_isomorphic
from quotposet.partition import Partition, enumerate_partitions
from quotposet.poset import Poset, antichain, chain, enumerate_posets
from quotposet.quotients import (
    PermutationGroup,
    factor_through,
    is_order_preserving,
    is_strong_map,
    lex_sum,
    orbit_partition,
    order_preserving_maps,
    quotient_poset,
    quotient_relation,
    smallest_compatible,
    universal_quotient,
)

SMALL_TARGETS = [chain(1), chain(2), antichain(2), chain(3), families.boolean_lattice(2), antichain(3)]


# ----------------------------------------------------------- relation


def test_quotient_relation_not_antisymmetric(chain3, ends_merged):
    rel = quotient_relation(chain3, ends_merged)
    # blocks: [0] = {p, r}, [1] = {q}
    assert rel == ((True, True), (True, True))


def test_quotient_relation_not_transitive(two_chains, middle_merged):
    rel = quotient_relation(two_chains, middle_merged)
    c = middle_merged.class_of
    p, q, r = c[0], c[1], c[3]
    assert rel[p][q] and rel[q][r] and not rel[p][r]


@given(posets(max_n=6))
def test_identity_relation_is_the_order(p):
    assert quotient_relation(p, Partition.identity(p.n)) == p.matrix


# ------------------------------------------------------------- quotients


def test_closure_quotient_of_two_chains(two_chains, middle_merged):
    with pytest.raises(NotWeakOrder):
        quotient_poset(two_chains, middle_merged, "strict")
    res = quotient_poset(two_chains, middle_merged, "closure")
    assert res.needed_transitive_closure and not res.needed_collapse
    assert is_isomorphic(res.quotient, chain(3))
    assert res.kernel() == middle_merged


def test_closure_mode_rejects_circle(chain3, ends_merged):
    with pytest.raises(NotCompatible) as exc:
        quotient_poset(chain3, ends_merged, "closure")
    assert exc.value.witness.clause == "theta-circle"
    with pytest.raises(ValueError):
        quotient_poset(chain3, ends_merged, "sideways")


def test_two_diamond_quotient_embeds_but_not_as_sublattice():
    lat, t = families.two_diamond_lattice()
    q = quotient_poset(lat, t, "strict").quotient
    assert q.n == 7 and q.is_lattice
    ix = lat.index
    x11, y00 = ix("x11"), ix("y00")
    meet = lat.meet(ix("y10"), ix("y01"))
    join = lat.join(ix("x10"), ix("x01"))
    assert meet == y00 != x11 and join == x11 != y00
    for rep, missing in ((x11, meet), (y00, join)):
        embed = [b[0] if len(b) == 1 else rep for b in t.blocks]
        assert all(
            q.leq(a, b) == lat.leq(embed[a], embed[b]) for a in range(q.n) for b in range(q.n)
        )
        # the image contains both operands but not their meet or join
        assert missing not in set(embed)


@given(poset_and_partition(max_n=6))
def test_quotient_class_map_is_surjective_and_monotone(pt):
    p, t = pt
    if not is_compatible(p, t):
        return
    res = quotient_poset(p, t, "closure")
    assert set(res.class_map) == set(range(res.quotient.n))
    assert is_order_preserving(p, res.quotient, res.class_map)
    assert res.kernel() == t
    if is_weak_order(p, t):
        strict = quotient_poset(p, t, "strict")
        assert not strict.needed_transitive_closure and strict.quotient == res.quotient


# -------------------------------------------------------------- universal


def test_universal_quotient_of_circle_is_a_point(chain3, ends_merged):
    res = universal_quotient(chain3, ends_merged)
    assert res.quotient.n == 1 and res.needed_collapse
    assert smallest_compatible(chain3, ends_merged) == Partition.total(3)


@given(posets(max_n=6))
def test_universal_quotient_of_identity(p):
    res = universal_quotient(p, Partition.identity(p.n))
    assert is_isomorphic(res.quotient, p)
    assert not res.needed_collapse and not res.needed_transitive_closure


@given(poset_and_partition(max_n=6))
def test_universal_quotient_matches_closure_when_compatible(pt):
    p, t = pt
    res = universal_quotient(p, t)
    assert t.refines(res.kernel())
    if res.needed_collapse:
        assert res.kernel() != t
    if is_compatible(p, t):
        closed = quotient_poset(p, t, "closure")
        assert res.kernel() == t and res.quotient == closed.quotient


@given(poset_and_partition(max_n=4))
def test_universal_property_on_small_targets(pt):
    p, t = pt
    res = universal_quotient(p, t)
    for target in SMALL_TARGETS:
        for g in order_preserving_maps(p, target):
            if any(g[x] != g[y] for x, y in t.pairs()):
                continue
            h = factor_through(res, p, target, g)
            assert h is not None
            assert all(h[res.class_map[x]] == g[x] for x in range(p.n))
            # uniqueness: h is forced on every class because class_map is onto
            assert set(res.class_map) == set(range(res.quotient.n))


def test_factor_through_rejects_non_constant_maps(chain3):
    res = universal_quotient(chain3, Partition.from_blocks(3, [[0, 1], [2]]))
    assert factor_through(res, chain3, chain(3), (0, 1, 2)) is None
    assert factor_through(res, chain3, chain(2), (0, 0, 1)) == (0, 1)


# ----------------------------------------------------- smallest compatible


def intersect_compatible_above(p: Poset, t: Partition) -> Partition:
    """Meet of all compatible partitions coarser than ``t``."""
    result = Partition.total(p.n)
    for c in enumerate_partitions(p.n):
        if t.refines(c) and brute_compatible(matrix_of(p), c):
            result = result.meet(c)
    return result


def test_smallest_compatible_on_crown():
    crown = families.crown4()
    t = Partition.from_blocks(4, [[0, 2], [1], [3]])
    got = smallest_compatible(crown, t)
    assert got == intersect_compatible_above(crown, t)
    assert is_compatible(crown, got) and t.refines(got)


@given(poset_and_partition(max_n=6))
def test_smallest_compatible_matches_intersection(pt):
    p, t = pt
    got = smallest_compatible(p, t)
    assert got == intersect_compatible_above(p, t)
    if is_compatible(p, t):
        assert got == t


# ------------------------------------------------------------------ lex sums


def test_lex_sum_examples():
    p, fibers = lex_sum(chain(2), [chain(1), chain(1)])
    assert p == chain(2).relabel(p.labels) and fibers.is_identity
    p, fibers = lex_sum(antichain(2), [chain(2), chain(2)])
    assert p.n == 4 and is_order_autonomous(p, fibers)
    assert is_isomorphic(quotient_poset(p, fibers).quotient, antichain(2))
    with pytest.raises(ValueError):
        lex_sum(chain(2), [chain(1)])


@pytest.mark.parametrize("n", range(5))
def test_lex_sum_round_trip(n):
    parts = list(enumerate_partitions(n))
    seen = 0
    for p in enumerate_posets(n):
        for t in parts:
            if not is_order_autonomous(p, t):
                continue
            seen += 1
            index = quotient_poset(p, t).quotient
            fibers = [p.subposet(list(b)) for b in t.blocks]
            rebuilt, part = lex_sum(index, fibers)
            assert is_isomorphic(rebuilt, p)
            assert len(part.blocks) == len(t.blocks)
    assert seen >= 1


@pytest.mark.slow
def test_lex_sum_round_trip_five():
    test_lex_sum_round_trip(5)


# ------------------------------------------------------------------- orbits


def test_orbit_partition_swap_in_b2():
    b2 = families.boolean_lattice(2)
    t = orbit_partition(b2, families.boolean_action(2, [(1, 0)]))
    assert t == Partition.from_blocks(4, [[0], [1, 2], [3]])


def test_orbit_partition_graphs_on_four_vertices():
    b6 = families.boolean_lattice(6)
    _, gens = families.edge_generators(4)
    t = orbit_partition(b6, families.boolean_action(6, gens))
    assert len(t.blocks) == 11
    q = quotient_poset(b6, t).quotient
    assert is_isomorphic(q, families.graph_poset(4)[0])


def test_orbit_partition_wreath_gives_young_lattice():
    b6 = families.boolean_lattice(6)
    group = families.boolean_action(6, families.wreath_generators(2, 3))
    t = orbit_partition(b6, group)
    assert len(t.blocks) == 10
    assert is_isomorphic(quotient_poset(b6, t).quotient, families.young_lattice(2, 3))


def test_orbit_partition_rejects_non_automorphism(chain3):
    with pytest.raises(NotAutomorphism) as exc:
        orbit_partition(chain3, PermutationGroup(3, ((2, 1, 0),)))
    assert exc.value.generator == 0
    with pytest.raises(ValueError):
        PermutationGroup(3, ((0, 0, 1),))
    with pytest.raises(ValueError):
        orbit_partition(chain3, PermutationGroup(2, ((1, 0),)))


def test_orbits_match_brute_force_group_closure():
    for n in range(2, 5):
        b = families.boolean_lattice(n)
        for name, gens in families.harness_groups(n):
            lifted = [families.induced_subset_action(n, g) for g in gens]
            t = orbit_partition(b, PermutationGroup(b.n, tuple(lifted)))
            assert {frozenset(x) for x in t.blocks} == brute_orbits(b.n, lifted), name


def test_orbit_quotients_are_graded_with_rank_preserved():
    for n in range(1, 6):
        b = families.boolean_lattice(n)
        for name, gens in families.harness_groups(n):
            q, t = families.orbit_quotient_of_boolean(n, gens)
            assert q.grading_info.is_graded, name
            rank = q.grading_info.rank
            for k, block in enumerate(t.blocks):
                assert {bin(x).count("1") for x in block} == {rank[k]}


# ------------------------------------------------------------ rank-constant


@given(posets(max_n=6))
def test_rank_constant_partitions_are_compatible(p):
    g = p.grading_info
    if not g.is_graded or len(p.components) != 1:
        return
    # split each rank level in two according to parity of the element index
    t = Partition.from_labels([(g.rank[x], x % 2) for x in range(p.n)])
    assert is_compatible(p, t)
    q = quotient_poset(p, t, "closure").quotient
    assert q.grading_info.is_graded


# --------------------------------------------------------------- map kinds


@given(posets(max_n=5), posets(max_n=3, min_n=1))
def test_strong_map_matches_brute_force(p, q):
    for f in list(order_preserving_maps(p, q))[:40]:
        assert is_strong_map(p, q, f) == brute_strong_map(matrix_of(p), matrix_of(q), f)


def test_quotient_map_of_example_is_not_strong(two_chains, middle_merged):
    res = quotient_poset(two_chains, middle_merged, "closure")
    assert not is_strong_map(two_chains, res.quotient, res.class_map)
