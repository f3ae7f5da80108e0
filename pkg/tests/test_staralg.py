from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import polys
from starmult import linalg
from starmult.errors import DimensionMismatch, VariableMismatch
from starmult.poly import Poly
from starmult.scalar import I
from starmult.staralg import (Modulus, MuPoly, StarSystem, check_solution, companion_matrix, reduce_mod,
                              star_power, star_product, star_product_companion, star_series,
                              trivial_modulus_solution)

XY = ("x", "y")
x, y = Poly.var(XY, "x"), Poly.var(XY, "y")
CR_SYS = StarSystem(((0, -1), (1, 0)), Modulus.one_plus_mu2_power(1), XY)  # M^-1 for M = [[0,1],[-1,0]]


def mu(*coeffs):
    return MuPoly(tuple(coeffs))


def test_modulus_constructors():
    assert Modulus.mu_power(3).full_coefficients() == (0, 0, 0, 1)
    assert Modulus.one_plus_mu2_power(2).full_coefficients() == (1, 0, 2, 0, 1)
    assert Modulus.from_coefficients([1, 0, 1]) == Modulus.one_plus_mu2_power(1)
    with pytest.raises(ValueError):
        Modulus.from_coefficients([1, 2])


def test_companion_matrix_annihilated_by_modulus():
    Z = Modulus.one_plus_mu2_power(2)
    C = companion_matrix(Z)
    acc = linalg.zeros(4, 4)
    for k, c in enumerate(Z.full_coefficients()):
        acc = linalg.add(acc, linalg.scale(linalg.mat_pow(C, k), c))
    assert linalg.is_zero(acc)


def test_cr_square():
    v = mu(x, y)
    assert star_product(v, v, CR_SYS.modulus) == mu(x * x - y * y, x * y * 2)
    assert check_solution(CR_SYS, v).is_solution
    assert check_solution(CR_SYS, star_power(v, 3, CR_SYS.modulus)).is_solution


def test_cr_violation_detected():
    res = check_solution(CR_SYS, mu(y, Poly.zero(XY)))
    assert not res.is_solution
    assert any(not form.is_zero() for form in res.remainder)


def test_nilpotent_example():
    # (x0 + mu x1)^2 modulo mu^2 solves grad h = U grad g for a 2x2 Jordan block
    V = ("x0", "x1")
    x0, x1 = Poly.var(V, "x0"), Poly.var(V, "x1")
    Z = Modulus.mu_power(2)
    sys = StarSystem(((0, -1), (0, 0)), Z, V)
    sq = star_power(mu(x0, x1), 2, Z)
    assert sq == mu(x0 * x0, x0 * x1 * 2)
    assert check_solution(sys, sq).is_solution


def test_trivial_solution():
    assert check_solution(CR_SYS, trivial_modulus_solution(CR_SYS)).is_solution


def test_reduce_mod():
    # mu^2 == -1 modulo 1 + mu^2
    V = [Poly.zero(XY), Poly.zero(XY), x]
    assert reduce_mod(V, Modulus.one_plus_mu2_power(1)) == mu(-x, Poly.zero(XY))


def test_length_and_variable_checks():
    Z = Modulus.mu_power(2)
    with pytest.raises(DimensionMismatch):
        star_product(mu(x), mu(x, y), Z)
    other = Poly.var(("x", "w"), "x")
    with pytest.raises(VariableMismatch):
        star_product(mu(x, y), mu(other, other), Z)


def test_star_series():
    Z = Modulus.mu_power(2)
    base = mu(x, y)
    a = [MuPoly.constant(XY, [1, 0]), MuPoly.constant(XY, [0, 2]), MuPoly.constant(XY, [3, 0])]
    expect = MuPoly.unit(XY, 2) + star_product(a[1], base, Z) + star_power(base, 2, Z).scale(3)
    assert star_series(a, base, Z) == expect


def test_complex_field_star_product():
    xc, yc = x.as_field("complex"), y.as_field("complex")
    v = mu(xc.scale(I), yc)
    Z = Modulus.from_coefficients([I, 0, 1])
    assert star_product(v, v, Z) == star_product_companion(v, v, Z)


moduli = st.sampled_from([Modulus.mu_power(2), Modulus.mu_power(3), Modulus.one_plus_mu2_power(1),
                          Modulus.one_plus_mu2_power(2), Modulus((Fraction(2), Fraction(-1), Fraction(1, 2)))])


@st.composite
def mu_vectors(draw, m, field="real"):
    return MuPoly(tuple(draw(polys(XY, 2, 3, field)) for _ in range(m)))


@given(moduli, st.data())
def test_remainder_equals_companion_route(Z, data):
    V = data.draw(mu_vectors(Z.m))
    W = data.draw(mu_vectors(Z.m))
    assert star_product(V, W, Z) == star_product_companion(V, W, Z)


@given(moduli, st.data())
def test_commutative_associative_unital(Z, data):
    U, V, W = (data.draw(mu_vectors(Z.m)) for _ in range(3))
    assert star_product(V, W, Z) == star_product(W, V, Z)
    assert star_product(star_product(U, V, Z), W, Z) == star_product(U, star_product(V, W, Z), Z)
    assert star_product(MuPoly.unit(XY, Z.m), V, Z) == V
