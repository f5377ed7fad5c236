from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from deriva.errors import CompositeCharacteristic, DivisionByZero
from deriva.fields import FieldSpec, is_prime, make_field, scalar_inverse

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)


@pytest.mark.parametrize("c, name", [(0, "Q"), (3, "GF(3)"), (2, "GF(2)"), (101, "GF(101)")])
def test_make_field_accepts_zero_and_primes(c, name):
    F = make_field(c)
    assert F.characteristic == c and F.name == name


@pytest.mark.parametrize("c", [1, 4, 6, 9, 15, -3])
def test_make_field_rejects_composites(c):
    with pytest.raises(CompositeCharacteristic):
        make_field(c)


def test_is_prime_small_table():
    assert [k for k in range(30) if is_prime(k)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("c, x, want", [
    (0, 1, Fraction(1)),
    (7, 3, 5),
    (0, Fraction(2, 3), Fraction(3, 2)),
    (5, 4, 4),
])
def test_scalar_inverse_values(c, x, want):
    F = make_field(c)
    assert scalar_inverse(F, F(x)) == want


@pytest.mark.parametrize("c", [0, 2, 7])
def test_inverse_of_zero(c):
    F = make_field(c)
    with pytest.raises(DivisionByZero):
        scalar_inverse(F, F.zero)


def test_rational_canonical_form():
    Q = make_field(0)
    x = Q("-6/4")
    assert (x.numerator, x.denominator) == (-3, 2)
    assert Q(Fraction(4, 2)) == Q(2) == Q("2")


def test_prime_field_reduction_of_fractions():
    F = make_field(7)
    assert F(Fraction(1, 3)) == 5
    assert F(-1) == 6
    with pytest.raises(DivisionByZero):
        F(Fraction(1, 7))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_field_axioms_exhaustive(p):
    F = make_field(p)
    els = list(F.elements())
    for x, y, z in product(els, repeat=3):
        assert F.add(F.add(x, y), z) == F.add(x, F.add(y, z))
        assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
        assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    for x, y in product(els, repeat=2):
        assert F.add(x, y) == F.add(y, x) and F.mul(x, y) == F.mul(y, x)
    for x in els:
        assert F.add(x, F.neg(x)) == 0
        if x:
            assert F.mul(x, F.inv(x)) == 1


@given(rationals, rationals, rationals)
def test_rational_axioms(x, y, z):
    Q = make_field(0)
    assert Q.add(Q.add(x, y), z) == Q.add(x, Q.add(y, z))
    assert Q.mul(x, Q.add(y, z)) == Q.add(Q.mul(x, y), Q.mul(x, z))
    assert Q.mul(x, y) == Q.mul(y, x)
    if x:
        assert Q.mul(x, Q.inv(x)) == 1


@given(st.sampled_from([0, 3, 5, 7, 13]), st.integers(-500, 500), st.integers(-500, 500))
def test_add_then_subtract_restores_value(c, a, b):
    F = make_field(c)
    x, y = F(a), F(b)
    assert F.sub(F.add(x, y), y) == x
    assert type(F.sub(F.add(x, y), y)) is type(x)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_fermat(p):
    F = make_field(p)
    assert all(F.power(x, p) == x for x in F.elements())


@given(st.sampled_from([0, 5]), st.integers(-30, 30), st.integers(1, 30))
def test_json_round_trip(c, num, den):
    F = make_field(c)
    if c and den % c == 0:
        den += 1
    x = F(Fraction(num, den))
    raw = F.to_json(x)
    assert isinstance(raw, str if c == 0 else int)
    assert F.from_json(raw) == x


@pytest.mark.parametrize("c", [0, 3])
def test_json_rejects_floats(c):
    with pytest.raises(TypeError):
        make_field(c).from_json(0.5)


def test_field_is_hashable_value():
    assert FieldSpec(5) == make_field(5)
    assert len({FieldSpec(0), make_field(0), FieldSpec(3)}) == 2
