from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mocktd.errors import FieldError, FieldMismatchError, FieldZeroDivisionError, ScalarParseError
from mocktd.exactfield import GF, QQ, FieldScalar, FieldSpec, is_prime, parse_scalar

from ._support import FIELDS, scalars


def test_parse_reduces_fraction():
    x = parse_scalar("-4/6", QQ)
    assert x.value == Fraction(-2, 3)
    assert str(x) == "-2/3"


def test_parse_reduces_mod_p():
    assert parse_scalar("7", GF(5)).value == 2


def test_half_in_gf7():
    # extended Euclid: 2 * 4 = 8 = 1 mod 7
    assert parse_scalar("1/2", GF(7)).value == 4


def test_canonical_examples():
    assert parse_scalar("3/6", QQ) == FieldScalar(QQ, Fraction(1, 2))
    assert str(parse_scalar("-0", QQ)) == "0"
    assert str(parse_scalar("-1", GF(7))) == "6"


@pytest.mark.parametrize("text", ["1//2", "", " 1", "1/", "/2", "1.5", "--1", "+1", "a", "1/-2"])
def test_parse_rejects_malformed(text):
    with pytest.raises(ScalarParseError):
        parse_scalar(text, QQ)


def test_parse_rejects_zero_denominator():
    with pytest.raises(ScalarParseError):
        parse_scalar("1/0", QQ)
    with pytest.raises(ScalarParseError):
        parse_scalar("1/7", GF(7))


@pytest.mark.parametrize("p", [1, 0, 4, 9, 15, 2**31 - 1 + 2, 2**31])
def test_bad_moduli(p):
    with pytest.raises(FieldError):
        FieldSpec.prime(p)


def test_largest_allowed_prime():
    assert GF(2**31 - 1).modulus == 2**31 - 1


def test_primality_against_sieve():
    limit = 500
    sieve = [True] * limit
    sieve[0] = sieve[1] = False
    for i in range(2, limit):
        if sieve[i]:
            for j in range(i * i, limit, i):
                sieve[j] = False
    assert [n for n in range(limit) if is_prime(n)] == [n for n in range(limit) if sieve[n]]


def test_add_over_q():
    assert parse_scalar("1/2", QQ) + parse_scalar("1/3", QQ) == parse_scalar("5/6", QQ)


def test_inverse_of_3_mod_7():
    expected = next(r for r in range(1, 7) if 3 * r % 7 == 1)
    assert expected == 5
    assert GF(7).scalar(3).inverse().value == expected


def test_division_by_zero():
    with pytest.raises(FieldZeroDivisionError):
        QQ.scalar(1) / QQ.scalar(0)
    with pytest.raises(ZeroDivisionError):
        GF(5).scalar(0).inverse()


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        QQ.scalar(1) + GF(7).scalar(1)
    with pytest.raises(FieldMismatchError):
        GF(5).scalar(1) * GF(7).scalar(1)


def test_descriptor_round_trip():
    for f in FIELDS:
        assert FieldSpec.from_descriptor(f.descriptor()) == f
    with pytest.raises(FieldError):
        FieldSpec.from_descriptor({"kind": "GFp", "p": 8})
    with pytest.raises(FieldError):
        FieldSpec.from_descriptor({"kind": "R"})


def test_scalars_are_immutable_and_hashable():
    x = QQ.scalar(2)
    with pytest.raises(AttributeError):
        x.value = 3
    assert len({QQ.scalar(2), QQ.scalar("4/2"), GF(7).scalar(2)}) == 2


@pytest.mark.parametrize("f", FIELDS, ids=str)
@given(data=st.data())
def test_field_axioms(f, data):
    a, b, c = (FieldScalar(f, data.draw(scalars(f))) for _ in range(3))
    zero, one = f.scalar(0), f.scalar(1)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + zero == a and a * one == a
    assert a + (-a) == zero
    assert a - b == a + (-b)
    if a:
        assert a * a.inverse() == one
        assert (b / a) * a == b


@pytest.mark.parametrize("f", FIELDS, ids=str)
@given(data=st.data())
def test_render_parse_round_trip(f, data):
    x = FieldScalar(f, data.draw(scalars(f)))
    assert parse_scalar(str(x), f) == x
    # canonicalization is idempotent
    assert f.value(f.value(x.value)) == x.value


@given(st.integers(), st.integers(min_value=1, max_value=10**6))
def test_rational_canonical_form(n, d):
    x = QQ.scalar(Fraction(n, d))
    assert x.value.denominator > 0
    from math import gcd
    assert gcd(abs(x.value.numerator), x.value.denominator) == 1


@given(st.integers(min_value=-(10**9), max_value=10**9))
def test_prime_residues_in_range(n):
    f = GF(101)
    assert 0 <= f.scalar(n).value < 101
