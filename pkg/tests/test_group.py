from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sedf.errors import EmptyFactorList, FactorBelowTwo, MismatchedGroup, PrimeDoesNotDivideOrder
from sedf.group import (
    GroupSpec,
    abelian_groups,
    automorphisms,
    combine,
    enumerate_elements,
    identity,
    invert,
    make_group,
    parse_group,
    parse_presentation,
    prime_index_quotient,
    quotient_by,
    smith_normal_form,
    subgroup_closure,
    subgroups,
)


@pytest.mark.parametrize(
    "factors, canon, order",
    [([6], (6,), 6), ([2, 3], (6,), 6), ([4, 2], (2, 4), 8), ([2, 2, 3], (2, 6), 12), ([6, 10], (2, 30), 60)],
)
def test_make_group_canonical(factors, canon, order):
    G = make_group(factors)
    assert G.factors == canon
    assert G.order == order
    assert G.exponent == canon[-1]


def test_make_group_errors():
    with pytest.raises(EmptyFactorList):
        make_group([])
    with pytest.raises(FactorBelowTwo):
        make_group([3, 1])


def test_combine_invert_examples():
    Z5 = GroupSpec((5,))
    assert combine(Z5.element(3), Z5.element(4)).coords == (2,)
    G = GroupSpec((2, 4))
    assert invert(G.element((1, 3))).coords == (1, 1)
    with pytest.raises(MismatchedGroup):
        combine(Z5.element(1), G.element((0, 1)))


def test_enumerate_examples():
    assert [g.coords for g in enumerate_elements(GroupSpec((3,)))] == [(0,), (1,), (2,)]
    assert [g.coords for g in enumerate_elements(GroupSpec((2, 2)))] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    els = enumerate_elements(GroupSpec((2, 4)))
    assert len(set(els)) == 8
    assert els[0] == identity(GroupSpec((2, 4)))


@pytest.mark.parametrize("n", range(1, 65))
def test_group_axioms_full(n):
    for G in abelian_groups(n) if n > 1 else []:
        els = enumerate_elements(G)
        e = identity(G)
        sample = els if n <= 16 else els[:: max(1, n // 12)]
        for g in els:
            assert g + e == g
            assert g + invert(g) == e
        for a, b, c in itertools.product(sample, repeat=3):
            assert (a + b) + c == a + (b + c)
            assert a + b == b + a


def test_rank_roundtrip_and_order():
    G = GroupSpec((2, 6))
    for r in range(G.order):
        assert G.rank(G.coords(r)) == r
    # last factor varies fastest
    assert G.coords(1) == (0, 1)
    assert G.coords(6) == (1, 0)


def test_abelian_groups_counts():
    assert [len(abelian_groups(n)) for n in (8, 16, 32, 36, 72)] == [3, 5, 7, 4, 6]
    assert all(G.order == 24 for G in abelian_groups(24))


def test_parse_literals():
    assert parse_group("Z2xZ4").factors == (2, 4)
    assert parse_group("z4*z2").factors == (2, 4)
    assert parse_group("Z2xZ3").factors == (6,)
    pres = parse_presentation("Z3xZ2")
    # (x mod 3, y mod 2) maps into Z6 preserving addition
    a, b = pres.to_canonical((1, 0)), pres.to_canonical((0, 1))
    assert pres.to_canonical((1, 1)) == a + b
    assert pres.group.element_order(a.rank) == 3 and pres.group.element_order(b.rank) == 2


def test_smith_normal_form():
    diag, U = smith_normal_form([[4, 0], [0, 2]])
    assert sorted(d for d in diag if d != 1) == [2, 4]
    diag, _ = smith_normal_form([[2, 4], [6, 8]])
    assert [abs(d) for d in diag] == [2, 4]


def test_prime_index_quotient_examples():
    s = prime_index_quotient(GroupSpec((9,)), 3)
    assert s.target.factors == (3,)
    assert sorted(g.coords[0] for g in s.kernel()) == [0, 3, 6]
    assert all(s(GroupSpec((9,)).element(x)).coords == (x % 3,) for x in range(9))

    G = GroupSpec((3, 3))
    s = prime_index_quotient(G, 3)
    assert sorted(g.coords for g in s.kernel()) == [(0, 0), (0, 1), (0, 2)]
    assert all(s(g).coords == (g.coords[0],) for g in enumerate_elements(G))

    s = prime_index_quotient(GroupSpec((15,)), 5)
    assert sorted(g.coords[0] for g in s.kernel()) == [0, 5, 10]

    with pytest.raises(PrimeDoesNotDivideOrder):
        prime_index_quotient(GroupSpec((9,)), 2)


def test_quotient_by_examples():
    Z4 = GroupSpec((4,))
    s = quotient_by(Z4, [Z4.element(2)])
    assert s.target.order == 2
    assert [s(Z4.element(x)).coords[0] for x in range(4)] == [0, 1, 0, 1]

    G = GroupSpec((2, 4))
    s = quotient_by(G, [G.element((0, 2))])
    assert s.target.order == 4
    assert s(G.element((0, 2))) == identity(s.target)

    s = quotient_by(G, [identity(G)])
    assert s.target == G

    with pytest.raises(MismatchedGroup):
        quotient_by(G, [Z4.element(1)])


@pytest.mark.parametrize("n", [4, 8, 9, 12, 16, 18, 27])
def test_quotients_are_homomorphisms(n):
    for G in abelian_groups(n):
        for members, gens in subgroups(G):
            s = quotient_by(G, [G.from_rank(r) for r in gens])
            assert s.target.order * len(members) == G.order
            rm = s.rank_map()
            assert {r for r in range(G.order) if rm[r] == 0} == set(members)
            for a in range(G.order):
                for b in range(0, G.order, max(1, G.order // 6)):
                    assert rm[G.add_ranks(a, b)] == s.target.add_ranks(rm[a], rm[b])
            assert set(rm) == set(range(s.target.order))


@given(st.sampled_from([(2, 4), (3, 3), (12,), (2, 2, 2), (2, 6)]), st.lists(st.integers(0, 100), max_size=3))
@settings(max_examples=60, deadline=None)
def test_subgroup_closure_is_subgroup(factors, raw):
    G = GroupSpec(factors)
    H = subgroup_closure(G, [x % G.order for x in raw])
    assert 0 in H
    assert G.order % len(H) == 0
    assert all(G.sub_ranks(a, b) in H for a in H for b in H)


def test_automorphism_counts():
    assert len(automorphisms(GroupSpec((5,)))) == 4
    assert len(automorphisms(GroupSpec((3, 3)))) == 48
    assert len(automorphisms(GroupSpec((2, 4)))) == 8
    assert len(automorphisms(GroupSpec((2, 2, 2)))) == 168
    assert automorphisms(GroupSpec((2,) * 6), limit=1000) is None
    G = GroupSpec((2, 4))
    for a in automorphisms(G):
        assert sorted(a) == list(range(G.order))
        assert all(a[G.add_ranks(x, y)] == G.add_ranks(a[x], a[y]) for x in range(8) for y in range(8))
