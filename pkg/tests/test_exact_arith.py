from fractions import Fraction

import pytest

from bollobas.exceptions import DocumentError, PreconditionError, ShapeError
from bollobas.models.scalars import (
    RATIONALS,
    Field,
    PrimeFieldScalar,
    ProbabilityVector,
    format_rational,
    format_scalar,
    parse_rational,
)
from bollobas.utils.combinatorics import binomial, multinomial, power_bound, rational_power


def test_prime_field_arithmetic():
    a, b = PrimeFieldScalar(3, 5), PrimeFieldScalar(4, 5)
    assert a + b == 2
    assert a - b == 4
    assert a * b == 2
    assert a / b == PrimeFieldScalar(2, 5)
    assert PrimeFieldScalar(2, 5).inverse() == 3
    assert -a == 2
    assert not PrimeFieldScalar(5, 5)


def test_prime_field_rejects_mixed_moduli():
    with pytest.raises(ShapeError):
        PrimeFieldScalar(1, 5) + PrimeFieldScalar(1, 7)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        PrimeFieldScalar(0, 3).inverse()


def test_prime_field_hash_agrees_with_equality():
    x = PrimeFieldScalar(8, 5)
    assert x == 3
    assert hash(x) == hash(3)
    assert x != 8
    assert {x: "three"}[3] == "three"
    assert PrimeFieldScalar(3, 5) != PrimeFieldScalar(3, 7)


def test_prime_field_checks_the_modulus():
    with pytest.raises(ShapeError):
        PrimeFieldScalar(1, 4)


@pytest.mark.parametrize(
    "label, modulus",
    [("rationals", None), ("Q", None), ("GF(7)", 7), ("gf2", 2), ("3", 3)],
)
def test_field_labels(label, modulus):
    assert Field.from_label(label).modulus == modulus


def test_non_prime_field_is_refused():
    with pytest.raises(ShapeError):
        Field.from_label("GF(4)")
    with pytest.raises(DocumentError):
        Field.from_label("reals")


def test_field_coercion():
    gf5 = Field(5)
    assert gf5.coerce(Fraction(1, 2)) == 3
    assert gf5.parse("7") == 2
    assert gf5.parse("4 mod 5") == 4
    with pytest.raises(DocumentError):
        gf5.parse("3 mod 7")
    with pytest.raises(ShapeError):
        RATIONALS.coerce(PrimeFieldScalar(1, 5))
    assert [e.residue for e in Field(3).elements()] == [0, 1, 2]


def test_rational_text():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(" -4 ") == -4
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    assert format_scalar(PrimeFieldScalar(8, 5)) == "3 mod 5"
    with pytest.raises(DocumentError):
        parse_rational("1/0")
    with pytest.raises(DocumentError):
        parse_rational("0.5")


def test_probability_vector():
    p = ProbabilityVector.parse("1/2,1/4,1/4")
    assert len(p) == 3
    assert str(p) == "1/2,1/4,1/4"
    assert ProbabilityVector.uniform(4).entries == (Fraction(1, 4),) * 4


@pytest.mark.parametrize("text", ["1/2,1/3", "1,0", "3/2,-1/2"])
def test_probability_vector_must_be_exact(text):
    with pytest.raises(PreconditionError):
        ProbabilityVector.parse(text)


def test_combinatorics():
    assert binomial(5, 2) == 10
    assert binomial(3, 5) == 0
    assert binomial(3, -1) == 0
    assert multinomial((1, 1, 1)) == 6
    assert multinomial((2, 1)) == 3
    assert multinomial((0, 0)) == 1
    assert power_bound(1, 1) == 4
    assert power_bound(0, 2) == 1
    assert rational_power(0, 0) == 1
    assert rational_power(Fraction(1, 2), 3) == Fraction(1, 8)
