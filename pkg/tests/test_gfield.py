from __future__ import annotations

import pytest

from sedf.errors import DegreeZero, IndexDoesNotDivide, IndexOutOfRange, NotPrime, NotPrimePower, WrongResidueClass
from sedf.gfield import (
    additive_embedding,
    cyclotomic_classes,
    cyclotomic_number,
    field_of_order,
    make_field,
    primitive_element,
    quadratic_representation,
    two_in_C0_cubed,
)
from sedf.ntheory import is_prime, prime_power


def test_make_field_examples():
    F = make_field(5, 1)
    assert F.q == 5 and F.mul(3, 4) == 2
    F9 = make_field(3, 2)
    assert F9.modulus == (1, 0, 1)  # x^2 + 1
    F16 = make_field(2, 4)
    assert F16.modulus == (1, 1, 0, 0, 1)
    assert all(F16.power(x, 15) == 1 for x in range(1, 16))
    with pytest.raises(NotPrime):
        make_field(6, 1)
    with pytest.raises(DegreeZero):
        make_field(5, 0)
    with pytest.raises(NotPrimePower):
        field_of_order(12)


@pytest.mark.parametrize("q", [4, 8, 9, 25, 27, 49, 64, 81, 121, 125])
def test_field_axioms(q):
    F = field_of_order(q)
    xs = range(q)
    for a in xs:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    step = max(1, q // 9)
    for a in xs[::step]:
        for b in xs[::step]:
            assert F.mul(a, b) == F.poly_mul(a, b)
            for c in xs[::step]:
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_primitive_elements():
    assert primitive_element(make_field(5)) == 2
    assert primitive_element(make_field(7)) == 3
    F9 = make_field(3, 2)
    x = 3  # the encoding of x itself
    assert F9.multiplicative_order(x) == 4
    assert primitive_element(F9) == 4  # 1 + x


def test_cyclotomic_classes_examples():
    S = cyclotomic_classes(make_field(5), 2)
    assert set(S.classes[0]) == {1, 4} and set(S.classes[1]) == {2, 3}
    S = cyclotomic_classes(make_field(17), 4)
    assert S.generator == 3
    assert S.classes[0] == (1, 13, 16, 4)
    assert S.classes[2] == (9, 15, 8, 2)
    S = cyclotomic_classes(make_field(3, 2), 1)
    assert sorted(S.classes[0]) == list(range(1, 9))
    with pytest.raises(IndexDoesNotDivide):
        cyclotomic_classes(make_field(7), 4)


@pytest.mark.parametrize("q, e", [(13, 2), (13, 3), (16, 5), (25, 4), (27, 13), (31, 6), (49, 8)])
def test_classes_partition_and_counts(q, e):
    S = cyclotomic_classes(field_of_order(q), e)
    allx = [x for c in S.classes for x in c]
    assert sorted(allx) == list(range(1, q))
    assert all(len(c) == S.f for c in S.classes)
    F = S.field
    minus_one = F.neg(1)
    for i in range(e):
        row = sum(cyclotomic_number(S, i, j) for j in range(e))
        assert row == S.f - (1 if minus_one in S.classes[i] else 0)


def test_cyclotomic_number_examples():
    S = cyclotomic_classes(make_field(17), 4)
    assert cyclotomic_number(S, 0, 2) == 1 and cyclotomic_number(S, 1, 2) == 1
    assert cyclotomic_number(cyclotomic_classes(make_field(13), 2), 0, 1) == 3
    with pytest.raises(IndexOutOfRange):
        cyclotomic_number(S, 0, 4)


def test_log_table_is_bijection():
    F = field_of_order(81)
    assert sorted(F.log(x) for x in range(1, 81)) == list(range(80))
    assert all(F.exp(F.log(x)) == x for x in range(1, 81))


def test_quadratic_representation_examples():
    assert quadratic_representation(17, "s2+4t2").values == (1, 2)
    assert quadratic_representation(13, "s2+4t2").values == (-3, 1)
    assert quadratic_representation(31, "x2+27y2").values == (2, 1)
    assert quadratic_representation(7, "x2+27y2").values is None
    # 7 = 2^2 + 3 has no representation with s = 1 (mod 6)
    assert quadratic_representation(7, "s2+3t2").values is None
    r = quadratic_representation(13, "s2+3t2")
    assert r.values is not None and r.values[0] % 6 == 1
    s, t = r.values
    assert s * s + 3 * t * t == 13


def test_quadratic_representation_normalization():
    for q in range(5, 500):
        pp = prime_power(q)
        if pp is None or q % 4 != 1:
            continue
        r = quadratic_representation(q, "s2+4t2")
        s, t = r.values
        assert s * s + 4 * t * t == q and s % 4 == 1 and t >= 0


def test_two_in_C0_cubed_examples():
    assert two_in_C0_cubed(31)
    assert not two_in_C0_cubed(7)
    assert two_in_C0_cubed(109)
    with pytest.raises(WrongResidueClass):
        two_in_C0_cubed(11)
    with pytest.raises(NotPrime):
        two_in_C0_cubed(25)


def test_additive_embedding():
    G, ranks = additive_embedding(make_field(5))
    assert G.factors == (5,) and ranks == list(range(5))
    F9 = make_field(3, 2)
    G, ranks = additive_embedding(F9)
    assert G.factors == (3, 3)
    assert G.coords(ranks[3 * 2 + 1]) == (1, 2)  # 1 + 2x -> (1, 2)
    for q in (4, 8, 9, 16, 25, 27, 32, 49, 64, 81):
        F = field_of_order(q)
        G, ranks = additive_embedding(F)
        assert sorted(ranks) == list(range(q))
        for u in range(q):
            for v in range(q):
                assert ranks[F.add(u, v)] == G.add_ranks(ranks[u], ranks[v])


def test_prime_helpers():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
