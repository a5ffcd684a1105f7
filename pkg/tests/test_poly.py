import pytest
from hypothesis import given, strategies as st

from cmreg.arith import QQ, PrimeField
from cmreg.poly import (
    GLEX,
    GREVLEX,
    LEX,
    LOCAL,
    ParseError,
    Polynomial,
    PolynomialRing,
    RingMismatch,
    TermOrder,
    format_polynomial,
)

R = PolynomialRing(names=("x", "y", "z"))
x, y, z = R.gens()
ORDERS = [GREVLEX, LEX, GLEX, LOCAL]

exps = st.tuples(*[st.integers(0, 4)] * 3)
coeffs = st.integers(1, 32002)


def mk(d):
    return Polynomial(R, dict(d))


polys = st.dictionaries(exps, coeffs, min_size=1, max_size=5).map(mk)


def test_parse_and_print():
    f = R.parse("x^2*y - 3*z + 1")
    assert f == x**2 * y - 3 * z + 1
    assert format_polynomial(f) == "x^2*y - 3*z + 1"
    g = R.parse("-(x + y)^2 + 2*x*y")
    assert g == -(x**2) - y**2


def test_rational_coefficients():
    S = PolynomialRing(QQ, ("x", "y"))
    f = S.parse("3/2*x - 1/3")
    assert format_polynomial(f) == "3/2*x - 1/3"
    g = R.parse("1/2*x")
    assert g * 2 == x


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as info:
        R.parse("x^2 + w")
    assert "unknown variable" in str(info.value) and info.value.col == 7
    with pytest.raises(ParseError):
        R.parse("x^")
    with pytest.raises(ParseError):
        R.parse("(x + y")
    with pytest.raises(ParseError):
        R.parse("x/y")


def test_ring_mismatch():
    S = PolynomialRing(PrimeField(7), ("x", "y", "z"))
    with pytest.raises(RingMismatch):
        x + S.gens()[0]


def test_leading_terms_per_order():
    f = x * y**2 + x**3 + z
    assert f.leading_monomial(GREVLEX) == (3, 0, 0)
    assert f.leading_monomial(LEX) == (3, 0, 0)
    g = x * z**2 + y**3
    # grevlex prefers the monomial with less of the last variable
    assert g.leading_monomial(GREVLEX) == (0, 3, 0)
    assert g.leading_monomial(GLEX) == (1, 0, 2)
    assert (x - y**2).leading_monomial(LOCAL) == (1, 0, 0)
    assert (x**2 - y**5).initial_form() == x**2


def test_order_aliases():
    assert TermOrder("dp") == GREVLEX
    assert TermOrder("ds") == LOCAL
    with pytest.raises(ValueError):
        TermOrder("bogus")


@given(polys, polys)
def test_orders_are_multiplicative(f, g):
    for order in ORDERS:
        lf, cf = f.leading_term(order)
        lg, cg = g.leading_term(order)
        lh, ch = (f * g).leading_term(order)
        assert lh == tuple(a + b for a, b in zip(lf, lg))
        assert ch == cf * cg % R.p


@given(polys, polys)
def test_initial_form_multiplicative(f, g):
    assert (f * g).initial_form() == f.initial_form() * g.initial_form()


@given(polys)
def test_homogeneous_initial_form_is_identity(f):
    h = f.homogeneous_component(f.degree())
    assert h.initial_form() == h


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert (f - f).is_zero()


@given(polys)
def test_print_parse_round_trip(f):
    assert R.parse(format_polynomial(f)) == f
