"""Acceptance criteria. Each test prints one PASS/FAIL line and enforces its runtime bound."""

import json
import random
import time
from contextlib import contextmanager

import pytest

from starmult import linalg, randgen
from starmult.complex_case import (JordanSpecC, build_matrices, decompose_by_eigenvalue,
                                   extend_nilpotent, extend_solution, general_solution, nilpotent_system,
                                   reconstruct_star_series, verify_gradient)
from starmult.poly import Poly, gradient, integrate_exact
from starmult.real_case import (F_k_eval, JordanSpecR, basis_matrix, extend_real, n_power_formula,
                                real_constant, real_jordan_matrix, real_system, reconstruct_real, s_mu,
                                s_system, to_s_coordinates)
from starmult.real_hypothesis import (ansatz_basis, certificate_value, hypothesis_check, phis_from_table,
                                      report_to_json)
from starmult.scalar import I
from starmult.staralg import Modulus, MuPoly, check_solution, star_power, star_product
from starmult.worked_examples import exn5, exn5_reassembled

pytestmark = pytest.mark.slow


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number, title, bound=None):
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            dt = time.perf_counter() - t0
            within = bound is None or dt < bound
            limit = f" (< {bound:g} s)" if bound is not None else ""
            with capsys.disabled():
                print(f"\ncriterion {number:2d} {'PASS' if ok and within else 'FAIL'}: {title} "
                      f"[{dt:.2f} s{limit}]")
        assert within, f"criterion {number} took {dt:.2f} s, bound {bound} s"
    return run


def origin_free(p: Poly) -> Poly:
    return p - Poly.const(p.vars, p.constant_term(), p.field)


def test_01_cr_algebra(criterion):
    with criterion(1, "CR products and powers up to k = 8", 1.0):
        v = ("x", "y")
        x, y = Poly.var(v, "x"), Poly.var(v, "y")
        Z = Modulus.one_plus_mu2_power(1)
        V = MuPoly((x, y))
        assert star_product(V, V, Z).coeffs == (x * x - y * y, x * y * 2)
        z = (x.as_field("complex") + y.as_field("complex").scale(I))
        for k in range(9):
            zk = z ** k
            assert star_power(V, k, Z).coeffs == (zk.real_part(), zk.imag_part())


def test_02_worked_example(criterion):
    with criterion(2, "5x5 worked example end to end", 1.0):
        ex = exn5()
        assert verify_gradient(build_matrices(ex.spec).M, ex.f, ex.g)
        parts = decompose_by_eigenvalue(ex.spec, ex.f, ex.g)
        assert [(p.f, p.g) for p in parts] == [(c.f, c.g) for c in ex.components]
        assert exn5_reassembled() == (ex.f, ex.g)


def test_03_complex_one_block(criterion):
    with criterion(3, "one block: star series vs general solution, 50 sets on [3] and [4]", 30.0):
        rng = random.Random(3)
        for blocks in [(3,), (4,)]:
            spec = JordanSpecC.single(0, blocks)
            U = build_matrices(spec).U
            for _ in range(50):
                phis = randgen.complex_phis(rng, spec, 5)
                sol = general_solution(spec, phis)
                V = reconstruct_star_series(spec, phis)
                assert V[V.m - 1] == sol.g and V[V.m - 2] == sol.h
                assert V.normalized() == extend_nilpotent(U, sol.h, sol.g).normalized()


def _random_table(rng, ev, max_degree=3, entries=4):
    table = {}
    for _ in range(entries):
        k = rng.randrange(ev.blocks[0])
        e = randgen.random_exponent(rng, ev.nu(k), max_degree)
        table[(k,) + e] = randgen.scalar(rng, "complex")
    return table


def test_04_complex_multi_block(criterion):
    with criterion(4, "several blocks: n = (1,0) and (2,1,0), 50 tables each", 60.0):
        rng = random.Random(4)
        for blocks in [(2, 1), (3, 2, 1)]:
            spec = JordanSpecC.single(0, blocks)
            for _ in range(50):
                phis = phis_from_table(_random_table(rng, spec.only()), spec.only())
                sol = general_solution(spec, phis)
                V = reconstruct_star_series(spec, phis)
                assert V[V.m - 1] == sol.g and V[V.m - 2] == sol.h
                assert V.normalized() == extend_solution(spec, sol.f, sol.g).normalized()


def test_05_star_closure(criterion):
    with criterion(5, "star closure, 100 pairs in each system"):
        rng = random.Random(5)
        cspec = JordanSpecC.single(I, (3, 2))
        csys = nilpotent_system(cspec)
        rspec = JordanSpecR(0, 1, (2, 1))
        rsys = real_system(rspec)
        for _ in range(100):
            a, b = (randgen.complex_solution(rng, cspec, 2) for _ in range(2))
            V = star_product(extend_solution(cspec, a.f, a.g), extend_solution(cspec, b.f, b.g), csys.modulus)
            assert check_solution(csys, V).is_solution
            a, b = (randgen.real_solution(rng, rspec, 2) for _ in range(2))
            V = star_product(extend_real(rspec, a.f, a.g), extend_real(rspec, b.f, b.g), rsys.modulus)
            assert check_solution(rsys, V).is_solution


def test_06_real_basis(criterion):
    with criterion(6, "real basis conjugation and power formula", 5.0):
        assert basis_matrix(0).B == ((1, 0), (0, 1))
        for n in range(5):
            basis = basis_matrix(n)
            M = real_jordan_matrix(JordanSpecR.normalized_single(n))
            N = linalg.scale(linalg.transpose(linalg.inverse(M)), -1)
            assert linalg.matmul(N, basis.B) == linalg.matmul(basis.B, basis.C)
            for a in range(7):
                assert linalg.mat_pow(N, a) == n_power_formula(n, a)
            if n <= 3:
                assert check_solution(s_system(n), s_mu(n)).is_solution


def test_07_real_reconstruction(criterion):
    with criterion(7, "real reconstruction, n <= 2 and N <= 4", 60.0):
        assert real_constant(0, 0) == [1, 0]
        for n in range(3):
            spec = JordanSpecR.normalized_single(n)
            for m in range(n + 1):
                for N in range(5):
                    V = reconstruct_real({(m, N): 1}, n)
                    F = F_k_eval(Poly(("s1",), {(N,): 1}, "complex"), m, spec)
                    assert V[0] == to_s_coordinates(F.f, spec)
                    assert V[V.m - 1] == to_s_coordinates(F.g, spec)
        spec = JordanSpecR.normalized_single(0)
        x, y = (Poly.var(spec.svars, v, "complex") for v in spec.svars)
        for N in range(5):
            zN = (x + y.scale(I)) ** N
            V = reconstruct_real({(0, N): 1}, 0)
            assert V.coeffs == (zN.real_part().as_field("real"), zN.imag_part().as_field("real"))


def test_08_extension_roundtrips(criterion):
    with criterion(8, "extension roundtrips, 100 solutions each"):
        rng = random.Random(8)
        for t in range(100):
            blocks = [(2,), (3,), (2, 1), (3, 1), (2, 2)][t % 5]
            spec = JordanSpecC.single(0, blocks)
            sol = general_solution(spec, randgen.complex_phis(rng, spec, 3))
            V = extend_nilpotent(build_matrices(spec).U, sol.h, sol.g)
            assert check_solution(nilpotent_system(spec), V).is_solution
            assert (V[V.m - 2], V[V.m - 1]) == (sol.h, sol.g)
        for t in range(100):
            blocks = [(1,), (2,), (3,), (2, 1)][t % 4]
            spec = JordanSpecR(0, 1, blocks)
            r = randgen.real_solution(rng, spec, 3)
            V = extend_real(spec, r.f, r.g)
            assert check_solution(real_system(spec), V).is_solution
            assert (V[0], V[V.m - 1]) == (r.f, r.g)


def test_09_integration_oracle(criterion):
    with criterion(9, "integration oracle, 200 polynomials"):
        rng = random.Random(9)
        for _ in range(200):
            nv = rng.randint(1, 6)
            p = randgen.random_poly(rng, tuple(f"v{i}" for i in range(nv)), 6, 6, rng.choice(["real", "complex"]))
            assert integrate_exact(gradient(p)) == origin_free(p)


def _harness_run(seed):
    rng = random.Random(seed)
    spec = JordanSpecR(0, 1, (2, 1))
    out = []
    for N in range(4):
        for mode in ("minimal", "determinant"):
            rep = hypothesis_check(spec, randgen.real_phis(rng, spec, 3), N, mode)
            out.append(rep)
    # a cross-block product, outside the span of the determinant reading
    cross = [Poly(("s1", "s2"), {(1, 1): 1}, "complex"), Poly(("s1",), {}, "complex")]
    out += [hypothesis_check(spec, cross, 2, mode) for mode in ("minimal", "determinant")]
    return out


def test_10_hypothesis_harness(criterion):
    with criterion(10, "harness on blocks (1,0), truncation <= 3"):
        reports = _harness_run(10)
        for rep in reports:
            if rep.agree:
                assert all(p.is_zero() for p in rep.residual)
                continue
            f, g = rep.target
            for d in rep.degrees:
                if d.consistent:
                    continue
                hf, hg = (Poly(p.vars, {e: c for e, c in p.terms.items() if sum(e) == d.degree}) for p in (f, g))
                assert certificate_value(d.certificate, hf, hg) == 1
                for V in ansatz_basis(rep.spec, d.degree, rep.mode):
                    assert certificate_value(d.certificate, V[0], V[V.m - 1]) == 0
        assert all(r.agree for r in reports if r.mode == "minimal")
        assert not reports[-1].agree
        again = _harness_run(10)
        dump = [json.dumps(report_to_json(r), sort_keys=True) for r in reports]
        assert dump == [json.dumps(report_to_json(r), sort_keys=True) for r in again]
