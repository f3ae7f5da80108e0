from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import polys
from starmult.errors import FieldMismatch, NotClosedError, VariableMismatch
from starmult.poly import OneForm, Poly, gradient, integrate_exact, is_closed, substitute
from starmult.scalar import I, cq, format_rational, parse_rational, scalar_from_json, scalar_to_json

V = ("x", "y", "z")


def var(name, field="real"):
    return Poly.var(V, name, field)


x, y, z = var("x"), var("y"), var("z")


# -- scalars ------------------------------------------------------------------


def test_cq_collapses_real_values():
    assert cq(3, 0) == Fraction(3)
    assert isinstance(cq(3, 0), Fraction)
    assert I * I == -1
    assert isinstance(I * I, Fraction)


def test_cq_division_and_powers():
    a = cq(1, 2)
    assert a / a == 1
    assert a ** -1 * a == 1
    assert a ** 3 == cq(-11, -2)


@pytest.mark.parametrize("text,value", [("3/4", Fraction(3, 4)), ("-7", Fraction(-7)), ("0", Fraction(0))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value
    assert format_rational(value) == text


@pytest.mark.parametrize("bad", ["2/4", "1/-3", "abc", 1.5, None, True])
def test_parse_rational_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_rational(bad)


def test_scalar_json_roundtrip():
    for s in (Fraction(-2, 3), cq(1, Fraction(-5, 7))):
        assert scalar_from_json(scalar_to_json(s)) == s
    assert scalar_to_json(Fraction(3, 4)) == {"re": "3/4", "im": "0"}


def test_float_rejected():
    with pytest.raises(TypeError):
        Poly(V, {(1, 0, 0): 0.5})


# -- construction and printing -----------------------------------------------


def test_zero_coefficients_dropped():
    p = Poly(V, {(1, 0, 0): 1, (0, 1, 0): 0})
    assert p.terms == {(1, 0, 0): 1}
    assert (x - x).is_zero()


def test_str():
    p = Poly(V, {(2, 1, 0): Fraction(3, 4), (0, 1, 0): -1})
    assert str(p) == "3/4*x^2*y - y"


def test_field_and_variable_checks():
    with pytest.raises(FieldMismatch):
        Poly(V, {(0, 0, 0): I})
    with pytest.raises(VariableMismatch):
        x + Poly.var(("x", "w"), "x")
    with pytest.raises(FieldMismatch):
        x + var("x", "complex")
    with pytest.raises(VariableMismatch):
        Poly(V, {(1, 0): 1})


def test_real_imag_parts():
    p = var("x", "complex").scale(cq(2, 3)) + var("y", "complex").scale(I)
    assert p.real_part() == x.scale(2)
    assert p.imag_part() == x.scale(3) + y
    assert p.conjugate().imag_part() == -(x.scale(3) + y)


def test_with_vars_and_substitute():
    p = x * x * y + 3
    q = p.with_vars(("y", "x", "w"))
    assert q.coefficient((1, 2, 0)) == 1
    with pytest.raises(VariableMismatch):
        p.with_vars(("x",))
    s = substitute(p, {"x": y + z, "y": z})
    assert s == (y + z) ** 2 * z + 3


# -- calculus -----------------------------------------------------------------


def test_gradient_and_integration_example():
    p = x ** 2 * y + z ** 3 - 5
    g = gradient(p)
    assert g.components == (x.scale(2) * y, x ** 2, z ** 2 * 3)
    assert integrate_exact(g) == p + 5


def test_not_closed():
    form = OneForm((y, Poly.zero(V), Poly.zero(V)))
    assert not is_closed(form)
    with pytest.raises(NotClosedError):
        integrate_exact(form)


def test_zero_form_integrates_to_zero():
    assert integrate_exact(OneForm((Poly.zero(V),) * 3)).is_zero()


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    if not (p.field == q.field == r.field):
        p, q, r = (t.as_field("complex") for t in (p, q, r))
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p - p == Poly.zero(V, p.field)


@given(polys(), polys())
def test_product_rule(p, q):
    if p.field != q.field:
        p, q = p.as_field("complex"), q.as_field("complex")
    for v in V:
        assert (p * q).diff(v) == p.diff(v) * q + p * q.diff(v)


@given(polys(max_degree=4))
def test_integration_inverts_gradient(p):
    assert integrate_exact(gradient(p)) == p - p.constant_term()
    assert is_closed(gradient(p))


@given(polys(), st.integers(0, 4))
def test_power_matches_repeated_product(p, k):
    out = Poly.const(V, 1, p.field)
    for _ in range(k):
        out = out * p
    assert p ** k == out
