"""The 5x5 example: Jordan blocks J_2(lambda_1) and J_2(lambda_2) + J_1(lambda_2).

Concrete eigenvalues ``lambda_1 = 2`` and ``lambda_2 = i`` are used. The
solution is

    f = lambda_1 (2 x0 x1 + x0^3) + x0^2 + lambda_2 (y0 w0^2 + y1) + y0
    g = 2 x0 x1 + x0^3 + y0 w0^2 + y1

with ``x0, x1`` the first block, ``y0, y1`` the second and ``w0`` the third
(variable names ``x1_1_0, x1_1_1, x2_1_0, x2_1_1, x2_2_0``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .complex_case import Eigenvalue, JordanSpecC, SolutionPair, embed, nilpotent_system
from .poly import Poly
from .scalar import I
from .staralg import Modulus, MuPoly, StarSystem, check_solution, star_power, star_product

LAMBDA_1 = 2
LAMBDA_2 = I


@dataclass(frozen=True)
class Exn5:
    spec: JordanSpecC
    f: Poly
    g: Poly
    components: Tuple[SolutionPair, SolutionPair]


def exn5_spec() -> JordanSpecC:
    return JordanSpecC((Eigenvalue(LAMBDA_1, (2,)), Eigenvalue(LAMBDA_2, (2, 1))))


def exn5() -> Exn5:
    spec = exn5_spec()
    vars = spec.vars

    def v(name):
        return Poly.var(vars, name, "complex")

    x0, x1, y0, y1, w0 = (v(n) for n in vars)
    g1 = x0 * x1 * 2 + x0 ** 3
    h1 = x0 ** 2
    g2 = y0 * w0 ** 2 + y1
    h2 = y0
    comp1 = SolutionPair(g1.scale(LAMBDA_1) + h1, g1, h1)
    comp2 = SolutionPair(g2.scale(LAMBDA_2) + h2, g2, h2)
    return Exn5(spec, comp1.f + comp2.f, g1 + g2, (comp1, comp2))


def exn5_star_expression() -> Tuple[MuPoly, MuPoly]:
    """``h_k + mu g_k`` for both eigenvalues, assembled from star products of linear solutions.

    First eigenvalue: ``mu * (x0 + mu x1)^3 + (x0 + mu x1)^2`` modulo ``mu^2``.
    Second: ``(mu w0^2) * (y0 + mu y1) + (y0 + mu y1)``, where ``mu w0^2`` is the
    embedding of the one-variable solution ``w0^2`` of the 1x1 block.
    """
    spec = exn5_spec()
    c1, c2 = spec.component(0), spec.component(1)
    Z = Modulus.mu_power(2)

    v1 = c1.vars
    xm = MuPoly((Poly.var(v1, v1[0], "complex"), Poly.var(v1, v1[1], "complex")))
    mu1 = MuPoly.constant(v1, [0, 1], "complex")
    first = star_product(mu1, star_power(xm, 3, Z), Z) + star_power(xm, 2, Z)

    v2 = c2.vars
    ym = MuPoly((Poly.var(v2, v2[0], "complex"), Poly.var(v2, v2[1], "complex")))
    # w0^2 solves the 1x1 block's own system (h' = 0); mu w0^2 is its embedding
    w = (v2[2],)
    w_sq = MuPoly((Poly.var(w, w[0], "complex") ** 2,))
    if not check_solution(StarSystem(((0,),), Modulus.mu_power(1), w), w_sq).is_solution:
        raise AssertionError("w0^2 does not solve the 1x1 block")
    embedded = embed(w_sq, 1, nilpotent_system(c2))
    second = star_product(embedded, ym, Z) + ym
    return first, second


def exn5_reassembled() -> Tuple[Poly, Poly]:
    """``(f, g)`` from the star expression, over the full variable list."""
    spec = exn5_spec()
    first, second = exn5_star_expression()
    h1, g1 = (p.with_vars(spec.vars) for p in first.coeffs)
    h2, g2 = (p.with_vars(spec.vars) for p in second.coeffs)
    f = g1.scale(LAMBDA_1) + h1 + g2.scale(LAMBDA_2) + h2
    return f, g1 + g2
