from __future__ import annotations

import pytest
from hypothesis import given

from conftest import posets
from oracles import brute_is_lattice, brute_join, brute_lattice_congruences, brute_meet, matrix_of
from quotposet import families
from quotposet.congruences import is_lattice_congruence, is_order
from quotposet.errors import NotLattice, NotOrderCongruence, TooLarge
from quotposet.iso import is_isomorphic
from quotposet.lattices import (
    dm_completion,
    enumerate_lattice_congruences,
    m0_sublattice,
    quotient_lattice,
    reading_dm_check,
    smallest_lattice_congruence,
)
from quotposet.partition import Partition, enumerate_partitions
from quotposet.poset import antichain, chain, enumerate_lattices, enumerate_posets

LATTICE_FIXTURES = [
    chain(1),
    chain(3),
    families.boolean_lattice(2),
    families.boolean_lattice(3),
    families.pentagon(),
    families.two_diamond_lattice()[0],
    families.weak_bruhat_A(3),
    families.tamari(3),
    families.young_lattice(2, 2),
]


def is_sublattice(lattice, elements) -> bool:
    m = matrix_of(lattice)
    s = set(elements)
    return all(
        brute_join(m, a, b) in s and brute_meet(m, a, b) in s for a in s for b in s
    )


# ------------------------------------------------------------- completion


def test_dm_completion_examples():
    diamond = dm_completion(antichain(2)).lattice
    assert is_isomorphic(diamond, families.boolean_lattice(2))
    assert is_isomorphic(dm_completion(chain(3)).lattice, chain(3))
    b3 = families.boolean_lattice(3)
    assert is_isomorphic(dm_completion(b3).lattice, b3)


@pytest.mark.parametrize("lat", LATTICE_FIXTURES, ids=lambda p: f"n{p.n}")
def test_dm_completion_of_lattice_is_itself(lat):
    comp = dm_completion(lat)
    assert is_isomorphic(comp.lattice, lat)
    assert sorted(comp.embed) == list(range(lat.n))


@given(posets(max_n=6, min_n=1))
def test_dm_completion_is_a_lattice_containing_p(p):
    comp = dm_completion(p)
    lat = comp.lattice
    assert brute_is_lattice(matrix_of(lat))
    # the embedding is an order embedding
    e = comp.embed
    assert all(p.leq(a, b) == lat.leq(e[a], e[b]) for a in range(p.n) for b in range(p.n))
    # every closed set is the set of lower bounds of its upper bounds
    for s in comp.closed_sets:
        assert p.lower_bounds(p.upper_bounds(s)) == s


# ------------------------------------------------------------ M0 sublattice


def test_m0_examples():
    b2 = families.boolean_lattice(2)
    assert m0_sublattice(b2).lattice.n == 4
    assert m0_sublattice(antichain(2)).lattice.n == 4
    crown = families.crown4()
    m0, comp = m0_sublattice(crown), dm_completion(crown)
    inside = [comp.closed_sets.index(s) for s in m0.closed_sets]
    assert is_sublattice(comp.lattice, inside)


@given(posets(max_n=6, min_n=1))
def test_m0_is_sublattice_of_completion(p):
    m0, comp = m0_sublattice(p), dm_completion(p)
    assert set(m0.closed_sets) <= set(comp.closed_sets)
    inside = [comp.closed_sets.index(s) for s in m0.closed_sets]
    assert is_sublattice(comp.lattice, inside)
    for x in range(p.n):
        assert m0.closed_sets[m0.embed[x]] == p.down[x]
    if p.is_lattice:
        assert m0.lattice.n == p.n


# ------------------------------------------------ generated congruences


def test_smallest_congruence_cambrian_pair():
    w = families.weak_bruhat_A(3)
    perms = families.permutations_of(3)
    ix = {p: k for k, p in enumerate(perms)}

    def el(*word):
        return ix[families.apply_word(3, word)]

    t = smallest_lattice_congruence(w, [(el(2), el(2, 1))])
    want = Partition.from_blocks(
        6, [[el()], [el(1)], [el(1, 2)], [el(2), el(2, 1)], [el(1, 2, 1)]]
    )
    assert t == want


def test_smallest_congruence_examples():
    b2 = families.boolean_lattice(2)
    assert smallest_lattice_congruence(b2, []).is_identity
    assert smallest_lattice_congruence(b2, [(0, 1)]) == Partition.from_blocks(4, [[0, 1], [2, 3]])
    with pytest.raises(NotLattice):
        smallest_lattice_congruence(antichain(2), [])


@pytest.mark.parametrize("lat", LATTICE_FIXTURES[:7], ids=lambda p: f"n{p.n}")
def test_smallest_congruence_is_least(lat):
    congs = enumerate_lattice_congruences(lat).congruences
    for a, b in lat.covers():
        t = smallest_lattice_congruence(lat, [(a, b)])
        assert is_lattice_congruence(lat, t) and t.same(a, b)
        for c in congs:
            if c.same(a, b):
                assert t.refines(c)


# ----------------------------------------------------------- enumeration


def test_enumerate_congruence_examples():
    assert len(enumerate_lattice_congruences(chain(2))) == 2
    assert len(enumerate_lattice_congruences(families.boolean_lattice(2))) == 4
    pent = families.pentagon()
    brute = brute_lattice_congruences(matrix_of(pent), enumerate_partitions(5))
    assert set(enumerate_lattice_congruences(pent).congruences) == set(brute)
    with pytest.raises(TooLarge):
        enumerate_lattice_congruences(families.boolean_lattice(4), cap=12)


@pytest.mark.parametrize("lat", [p for p in LATTICE_FIXTURES if p.n <= 8], ids=lambda p: f"n{p.n}")
def test_enumerate_matches_brute_filter(lat):
    brute = brute_lattice_congruences(matrix_of(lat), enumerate_partitions(lat.n))
    got = enumerate_lattice_congruences(lat)
    assert set(got.congruences) == set(brute)
    for i, a in enumerate(got.congruences):
        for j, b in enumerate(got.congruences):
            assert got.leq[i][j] == a.refines(b)


def test_enumerate_matches_brute_filter_on_small_lattices():
    for n in range(1, 7):
        parts = list(enumerate_partitions(n))
        for lat in enumerate_lattices(n):
            brute = brute_lattice_congruences(matrix_of(lat), parts)
            assert set(enumerate_lattice_congruences(lat).congruences) == set(brute)


def test_quotient_lattice():
    lat, t = families.two_diamond_lattice()
    q = quotient_lattice(lat, t)
    assert q.n == 7 and q.is_lattice


# -------------------------------------------------------- exact extension


def test_reading_check_two_diamonds():
    lat, t = families.two_diamond_lattice()
    r = reading_dm_check(lat, t)
    assert r.holds and len(r.extensions) == 1 and r.quotient_isomorphic


def test_reading_check_identity():
    p = families.crown4()
    r = reading_dm_check(p, Partition.identity(4))
    assert r.holds and r.extensions[0].is_identity


def test_reading_check_rejects_non_order(chain3, ends_merged):
    with pytest.raises(NotOrderCongruence):
        reading_dm_check(chain3, ends_merged)


@pytest.mark.parametrize("n", range(5))
def test_reading_check_on_all_order_congruences(n):
    parts = list(enumerate_partitions(n))
    for p in enumerate_posets(n):
        for t in parts:
            if is_order(p, t):
                r = reading_dm_check(p, t)
                assert r.holds, (p, t, r.detail)


@pytest.mark.slow
def test_reading_check_on_all_order_congruences_five():
    test_reading_check_on_all_order_congruences(5)

