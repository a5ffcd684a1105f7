from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cmreg.arith import QQ, FieldError, PrimeField, binomial, field_from_descriptor

F5, F7, F = PrimeField(5), PrimeField(7), PrimeField(32003)
residues = st.integers(min_value=0, max_value=32002)


def test_small_field_products():
    assert F5(3) * F5(4) == F5(2)
    assert F7(3).inv() == F7(5)
    assert QQ(Fraction(1, 2)) + QQ(Fraction(1, 3)) == QQ(Fraction(5, 6))


def test_canonical_forms():
    assert F7(-1).value == 6
    assert F7(Fraction(1, 2)).value == 4
    q = QQ(Fraction(4, -6))
    assert q.value == Fraction(-2, 3) and q.value.denominator > 0


def test_division_by_zero_is_an_error():
    with pytest.raises(ZeroDivisionError):
        F7(0).inv()
    with pytest.raises(ZeroDivisionError):
        F7(3) / F7(0)
    with pytest.raises(ZeroDivisionError):
        QQ(0).inv()


def test_non_prime_modulus_rejected():
    with pytest.raises(FieldError, match="4 is not prime"):
        PrimeField(4)
    with pytest.raises(FieldError):
        field_from_descriptor("F1")
    assert field_from_descriptor("F32003") == F
    assert field_from_descriptor("Q") is QQ


def test_mixed_fields_refuse_to_combine():
    with pytest.raises(FieldError):
        F5(1) + F7(1)


@given(residues, residues, residues)
def test_field_axioms(a, b, c):
    a, b, c = F(a), F(b), F(c)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F(0)
    if a:
        assert a * a.inv() == F(1)
        assert (b / a) * a == b


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_rational_field_ops(x, y):
    a, b = QQ(x), QQ(y)
    assert (a + b).value == x + y
    assert (a * b).value == x * y
    if y:
        assert (a / b).value == x / y


def test_binomial_values():
    assert binomial(5, 2) == 10
    assert binomial(-1, 2) == 1
    assert binomial(-3, 0) == 1
    assert binomial(3, -1) == 0
    assert binomial(2, 5) == 0
    assert binomial(-2, 3) == -4  # (-2)(-3)(-4)/6


@given(st.integers(-30, 30), st.integers(1, 12))
def test_pascal(n, k):
    assert binomial(n, k) == binomial(n - 1, k) + binomial(n - 1, k - 1)


def test_binomials_are_exact_big_integers():
    import math

    assert binomial(400, 200) == math.factorial(400) // math.factorial(200) ** 2
    assert binomial(-400, 200) == binomial(599, 200)
