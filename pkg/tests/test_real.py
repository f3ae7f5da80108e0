import random
from fractions import Fraction

import pytest

from starmult import linalg, randgen
from starmult.complex_case import verify_gradient
from starmult.errors import NotASolutionError, StarmultError
from starmult.poly import Poly
from starmult.real_case import (F_k_eval, JordanSpecR, basis_matrix, closed_form_first_power,
                                direct_real_solution, extend_real, gbinom, general_solution_real,
                                n_power_formula, normalize_real, real_constant, real_jordan_matrix,
                                real_system, reconstruct_real, s_mu, s_system, to_s_coordinates,
                                from_s_coordinates)
from starmult.staralg import MuPoly, check_solution, star_product


def phi(*terms, nvars=1, field="complex"):
    return Poly(tuple(f"s{i + 1}" for i in range(nvars)), dict(terms), field)


def test_gbinom():
    assert gbinom(-1, 0) == 1
    assert gbinom(0, 1) == 0
    assert gbinom(-2, 3) == -4
    assert gbinom(5, 2) == 10
    assert gbinom(3, -1) == 0


def test_spec_validation():
    with pytest.raises(StarmultError):
        JordanSpecR(0, 0, (1,))
    with pytest.raises(StarmultError):
        JordanSpecR(0, 1, (1, 2))
    spec = JordanSpecR(0, 1, (2, 1))
    assert spec.n == 2
    assert spec.vars == ("x1_0", "y1_0", "x1_1", "y1_1", "x2_0", "y2_0")


def test_real_jordan_matrix():
    M = real_jordan_matrix(JordanSpecR(3, 2, (2,)))
    assert M == ((3, 2, 1, 0), (-2, 3, 0, 1), (0, 0, 3, 2), (0, 0, -2, 3))


def test_basis_n0_is_identity():
    assert basis_matrix(0).B == linalg.identity(2)


def test_basis_n1():
    assert basis_matrix(1).B == ((1, 0, -1, 0), (0, 1, 0, -1), (0, -1, 0, 3), (0, 0, -2, 0))


@pytest.mark.parametrize("n", range(5))
def test_basis_conjugation(n):
    b = basis_matrix(n)
    assert linalg.matmul(b.N, b.B) == linalg.matmul(b.B, b.C)
    for a in range(7):
        assert linalg.mat_pow(b.N, a) == n_power_formula(n, a)


@pytest.mark.parametrize("n", range(4))
def test_s_mu_is_solution(n):
    assert check_solution(s_system(n), s_mu(n)).is_solution


def test_coordinate_change_roundtrip():
    spec = JordanSpecR(0, 1, (2, 1))
    rng = random.Random(3)
    p = randgen.random_poly(rng, spec.vars, 3, 5)
    assert from_s_coordinates(to_s_coordinates(p, spec), spec) == p


def test_F0_is_holomorphic_square():
    spec = JordanSpecR.normalized_single(0)
    r = F_k_eval(phi(((2,), 1)), 0, spec)
    x, y = (Poly.var(spec.vars, v) for v in spec.vars)
    assert (r.f, r.g) == (x * x - y * y, x * y * 2)


def test_F1_linear():
    spec = JordanSpecR.normalized_single(1)
    r = F_k_eval(phi(((1,), 1)), 1, spec)
    x0, y0, x1, y1 = (Poly.var(spec.vars, v) for v in spec.vars)
    # z1 - (-i/2) conj(z0) = z1 + (i/2)(x0 - i y0)
    assert r.f == x1 + y0.scale(Fraction(1, 2))
    assert r.g == y1 + x0.scale(Fraction(1, 2))
    assert verify_gradient(real_jordan_matrix(spec), r.f, r.g)


def test_F_zero():
    spec = JordanSpecR.normalized_single(1)
    assert F_k_eval(phi(), 1, spec).f.is_zero()


@pytest.mark.parametrize("blocks", [(1,), (2,), (3,), (2, 1), (3, 2), (2, 2, 1)])
def test_general_solution_any_alpha_beta(blocks):
    rng = random.Random(str(blocks))
    spec = JordanSpecR(Fraction(-1, 2), Fraction(3), blocks)
    for _ in range(3):
        sol = randgen.real_solution(rng, spec, 3)
        assert verify_gradient(real_jordan_matrix(spec), sol.f, sol.g)


def test_normalization_identity():
    spec = JordanSpecR.normalized_single(1)
    sol = general_solution_real(spec, [phi(((2,), 1)), phi(((3,), 1))])
    out = normalize_real(spec, sol.f, sol.g)
    assert (out.f, out.g) == (sol.f, sol.g)


def test_normalization_cr_type():
    spec = JordanSpecR(1, 2, (1,))
    sol = general_solution_real(spec, [phi(((3,), 1), ((1,), 2))])
    out = normalize_real(spec, sol.f, sol.g)
    assert out.spec.is_normalized
    assert verify_gradient(real_jordan_matrix(out.spec), out.f, out.g)


def test_normalization_constants():
    spec = JordanSpecR(1, 2, (1,))
    v = spec.vars
    out = normalize_real(spec, Poly.const(v, 5), Poly.zero(v))
    assert (out.f, out.g) == (Poly.const(v, 5), Poly.zero(v))


def test_extend_cr():
    spec = JordanSpecR.normalized_single(0)
    x, y = (Poly.var(spec.vars, v) for v in spec.vars)
    V = extend_real(spec, x * x - y * y, x * y * 2)
    assert V.coeffs == (x * x - y * y, x * y * 2)


def test_extend_constants():
    spec = JordanSpecR.normalized_single(1)
    v = spec.vars
    V = extend_real(spec, Poly.const(v, 2), Poly.const(v, 3))
    assert all(c.is_constant() for c in V.coeffs)


def test_extend_n1_square():
    spec = JordanSpecR.normalized_single(1)
    sol = general_solution_real(spec, [phi(), phi(((2,), 1))])
    V = extend_real(spec, sol.f, sol.g)
    assert V.m == 4 and V[0] == sol.f and V[3] == sol.g
    assert check_solution(real_system(spec), V).is_solution


def test_extend_rejects_non_solution():
    spec = JordanSpecR.normalized_single(0)
    x, y = (Poly.var(spec.vars, v) for v in spec.vars)
    with pytest.raises(NotASolutionError):
        extend_real(spec, y, Poly.zero(spec.vars))


def test_real_constants():
    assert real_constant(0, 0) == [1, 0]
    assert real_constant(1, 1) == [0, Fraction(-3, 2), 0, Fraction(1, 2)]
    # m = 0 only keeps j = 0: (1 + mu^2)^n
    assert real_constant(0, 2) == [1, 0, 2, 0, 1, 0]


@pytest.mark.parametrize("n", range(4))
def test_closed_form(n):
    spec = JordanSpecR.normalized_single(n)
    r = direct_real_solution({(n, 1): 1}, n)
    assert (to_s_coordinates(r.f, spec), to_s_coordinates(r.g, spec)) == closed_form_first_power(n)
    V = reconstruct_real({(n, 1): 1}, n)
    assert (V[0], V[V.m - 1]) == closed_form_first_power(n)


def test_reconstruct_cr_square():
    V = reconstruct_real({(0, 2): 1}, 0)
    s0, s1 = (Poly.var(V.vars, v) for v in V.vars)
    assert V.coeffs == (s0 * s0 - s1 * s1, s0 * s1 * 2)


def test_reconstruct_zero_and_truncation():
    assert reconstruct_real({}, 1).is_zero()
    V = reconstruct_real({(0, 1): 1, (1, 3): 2}, 1, truncation=2)
    assert V == reconstruct_real({(0, 1): 1}, 1)


def test_reconstruct_rejects_complex_coefficients():
    from starmult.scalar import I
    with pytest.raises(StarmultError):
        reconstruct_real({(0, 1): I}, 0)


@pytest.mark.parametrize("n", range(3))
def test_reconstruction_matches_direct(n):
    spec = JordanSpecR.normalized_single(n)
    rng = random.Random(n)
    for _ in range(4):
        table = randgen.real_table(rng, n, 4)
        V = reconstruct_real(table, n)
        r = direct_real_solution(table, n)
        assert V[0] == to_s_coordinates(r.f, spec)
        assert V[V.m - 1] == to_s_coordinates(r.g, spec)
        assert check_solution(s_system(n), V).is_solution


def test_star_closure_real():
    rng = random.Random(11)
    spec = JordanSpecR(0, 1, (2, 1))
    sys = real_system(spec)
    a = randgen.real_solution(rng, spec, 2)
    b = randgen.real_solution(rng, spec, 2)
    V = star_product(extend_real(spec, a.f, a.g), extend_real(spec, b.f, b.g), sys.modulus)
    assert check_solution(sys, V).is_solution


def test_cr_degeneration():
    spec = JordanSpecR.normalized_single(0)
    rng = random.Random(5)
    sys = real_system(spec)
    for _ in range(5):
        p = randgen.random_poly(rng, ("s1",), 3, 3, "complex")
        q = randgen.random_poly(rng, ("s1",), 3, 3, "complex")
        a, b, ab = (general_solution_real(spec, [t]) for t in (p, q, p * q))
        prod = star_product(MuPoly((a.f, a.g)), MuPoly((b.f, b.g)), sys.modulus)
        assert prod.coeffs == (a.f * b.f - a.g * b.g, a.f * b.g + a.g * b.f)
        assert prod.coeffs == (ab.f, ab.g)
