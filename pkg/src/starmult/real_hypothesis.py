"""Experimental check of star power series for several real Jordan blocks.

For a single block every solution is ``sum_m a_{m,mu} * (s_mu)^j``. With
blocks ``n_1 >= ... >= n_m`` the analogous ansatz is

    V_mu = sum_I (a_I)_mu * (s_mu)^I

where ``(s_mu)^I`` is the nested star power: the innermost block's power is
formed in its own system, multiplied by ``(1 + mu^2)^(n_{k-1} - n_k)`` to move
it to the next block's system, star-multiplied there, and so on.

Nothing here is proven. :func:`hypothesis_check` treats the constants
``(a_I)_mu`` as unknowns, solves exactly for them degree by degree, and
reports whether some choice reproduces a given solution. An inconsistent
system comes with a certificate ``y`` (``y^T A = 0`` and ``y^T b = 1``).

Two readings of the modulus are supported:

``minimal``
    ``(1 + mu^2)^(n_1 + 1)``, the minimal polynomial of ``M^-1``, with the
    nested embedding above (mirrors the complex case).
``determinant``
    ``(1 + mu^2)^(n + 1)`` with ``2(n + 1)`` the dimension; each block power
    is embedded with ``(1 + mu^2)^(n - n_k)`` and the results star-multiplied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .errors import DimensionMismatch, StarmultError
from .poly import Exp, Poly
from .real_case import JordanSpecR, basis_matrix, general_solution_real, normalize_real, to_s_coordinates
from .scalar import as_scalar, scalar_to_json
from .serialize import poly_to_json, spec_r_to_json
from .solspace import monomials, pair_from_vector, pair_vector
from .staralg import Modulus, MuPoly, StarSystem, check_solution, star_power, star_product

MODES = ("minimal", "determinant")


def s_system_multi(spec: JordanSpecR, mode: str = "minimal") -> StarSystem:
    """Extended system in ``s`` coordinates: ``X = diag(-C_k^T)`` with ``C_k`` the
    companion matrix of ``(1 + mu^2)^(n_k + 1)``."""
    blocks = [linalg.scale(linalg.transpose(basis_matrix(n).C), -1) for n in spec.ns]
    return StarSystem(linalg.block_diag(*blocks), _modulus(spec, mode), spec.svars)


def s_matrix_multi(spec: JordanSpecR) -> linalg.Matrix:
    """``M`` in ``s`` coordinates (normalized spec): ``diag(-C_k^-T)``."""
    return linalg.block_diag(*(linalg.scale(linalg.transpose(linalg.inverse(basis_matrix(n).C)), -1)
                               for n in spec.ns))


def _modulus(spec: JordanSpecR, mode: str) -> Modulus:
    if mode == "minimal":
        return Modulus.one_plus_mu2_power(spec.ns[0] + 1)
    if mode == "determinant":
        return Modulus.one_plus_mu2_power(spec.n + 1)
    raise StarmultError(f"unknown mode {mode!r}; expected one of {MODES}")


def _times_one_plus_mu2(V: MuPoly, s: int) -> MuPoly:
    """Multiply by ``(1 + mu^2)^s`` as polynomials in mu, growing the length by ``2s``."""
    c = list(V.coeffs)
    z = Poly.zero(V.vars, V.field)
    for _ in range(s):
        c = [a + b for a, b in zip(c + [z, z], [z, z] + c)]
    return MuPoly(tuple(c))


def block_s_mu(spec: JordanSpecR, b: int) -> MuPoly:
    vars = spec.svars
    return MuPoly(tuple(Poly.var(vars, v) for v in spec.block_svars(b)))


def nested_power(I: Sequence[int], spec: JordanSpecR, mode: str = "minimal") -> MuPoly:
    """Nested star power ``(s_mu)^I``.

    A zero exponent contributes the unit of the target algebra, so the
    embedding chain starts at the innermost block with a positive exponent.
    """
    ns = spec.ns
    if len(I) != len(ns):
        raise DimensionMismatch(f"multi-index {tuple(I)} does not match {len(ns)} blocks")
    if any(i < 0 for i in I):
        raise DimensionMismatch(f"negative exponent in {tuple(I)}")
    Z = _modulus(spec, mode)
    active = [b for b in range(len(ns)) if I[b] > 0]
    if not active:
        return MuPoly.unit(spec.svars, Z.m)

    def own(b):
        return star_power(block_s_mu(spec, b), I[b], Modulus.one_plus_mu2_power(ns[b] + 1))

    if mode == "minimal":
        level = active[-1]
        P = own(level)
        for b in reversed(active[:-1]):
            P = _times_one_plus_mu2(P, ns[b] - ns[level])
            P = star_product(own(b), P, Modulus.one_plus_mu2_power(ns[b] + 1))
            level = b
        return _times_one_plus_mu2(P, ns[0] - ns[level])
    P = MuPoly.unit(spec.svars, Z.m)
    for b in active:
        P = star_product(P, _times_one_plus_mu2(own(b), spec.n - ns[b]), Z)
    return P


def _homogeneous_part(p: Poly, d: int) -> Poly:
    return Poly(p.vars, {e: c for e, c in p.terms.items() if sum(e) == d}, p.field)


def _multi_indices(m: int, d: int):
    for I in product(range(d + 1), repeat=m):
        if sum(I) == d:
            yield I


@dataclass
class DegreeReport:
    degree: int
    unknowns: int
    equations: int
    rank: int
    consistent: bool
    coefficients: Dict[Tuple[int, ...], Tuple[Fraction, ...]] = field(default_factory=dict)
    certificate: Optional[List[Tuple[str, Exp, Fraction]]] = None
    residual: Optional[Tuple[Poly, Poly]] = None


@dataclass
class HypothesisReport:
    spec: JordanSpecR
    mode: str
    truncation: int
    agree: bool
    target: Tuple[Poly, Poly]
    degrees: List[DegreeReport]
    residual: Tuple[Poly, Poly]
    ansatz_is_solution: bool
    target_degree: int

    @property
    def verdict(self) -> str:
        return "agree" if self.agree else "disagree"


def _ansatz_columns(spec: JordanSpecR, mode: str, d: int, monos):
    Z = _modulus(spec, mode)
    L = Z.m
    cols, labels, values = [], [], []
    for I in _multi_indices(len(spec.ns), d):
        P = nested_power(I, spec, mode)
        for t in range(L):
            e = MuPoly.constant(spec.svars, [int(q == t) for q in range(L)])
            V = star_product(e, P, Z)
            cols.append(pair_vector(V[0], V[L - 1], monos))
            labels.append((I, t))
            values.append(V)
    return cols, labels, values


def _least_squares_residual(A, b):
    """``b - A x`` for an exact least-squares ``x`` (normal equations are always consistent)."""
    At = linalg.transpose(linalg.matrix(A)) if A and A[0] else ()
    if not At:
        return list(b)
    AtA = linalg.matmul(At, linalg.matrix(A))
    x, _ = linalg.solve(AtA, linalg.matvec(At, b))
    Ax = linalg.matvec(linalg.matrix(A), x)
    return [bi - ai for bi, ai in zip(b, Ax)]


@lru_cache(maxsize=64)
def _degree_system(spec: JordanSpecR, mode: str, d: int):
    monos = monomials(len(spec.svars), d)
    cols, labels, values = _ansatz_columns(spec, mode, d, monos)
    A = [list(r) for r in zip(*cols)]
    rank = len(linalg.rref(A)[1]) if A and A[0] else 0
    return monos, A, labels, values, rank


def fit_degree(spec: JordanSpecR, f: Poly, g: Poly, d: int, mode: str = "minimal") -> Tuple[DegreeReport, MuPoly]:
    """Solve for the constants at homogeneous degree ``d`` against the degree-``d`` part of ``(f, g)``."""
    vars = spec.svars
    monos, A, labels, values, rank = _degree_system(spec, mode, d)
    b = pair_vector(f, g, monos)
    x, y = linalg.solve(A, b)
    L = _modulus(spec, mode).m
    V = MuPoly.zero(vars, L)
    rep = DegreeReport(d, len(labels), len(b), rank, x is not None)
    if x is not None:
        table: Dict[Tuple[int, ...], List[Fraction]] = {}
        for (I, t), xi, Vi in zip(labels, x, values):
            table.setdefault(I, [Fraction(0)] * L)[t] = xi
            if xi != 0:
                V = V + Vi.scale(xi)
        rep.coefficients = {I: tuple(v) for I, v in table.items() if any(v)}
        z = Poly.zero(vars)
        rep.residual = (z, z)
    else:
        K = len(monos)
        rep.certificate = [("f" if i < K else "g", monos[i % K], yi) for i, yi in enumerate(y) if yi != 0]
        rep.residual = pair_from_vector(vars, monos, _least_squares_residual(A, b))
    return rep, V


def ansatz_basis(spec: JordanSpecR, d: int, mode: str = "minimal") -> List[MuPoly]:
    """The spanning set ``e_t * (s_mu)^I`` with ``|I| = d`` used by :func:`fit_degree`."""
    return list(_degree_system(spec, mode, d)[3])


def certificate_value(certificate: Sequence[Tuple[str, Exp, Fraction]], f: Poly, g: Poly) -> Fraction:
    """Evaluate a certificate functional on ``(f, g)``: 0 on every ansatz output, 1 on the target."""
    return sum((w * (f if part == "f" else g).coefficient(e) for part, e, w in certificate), Fraction(0))


def direct_solution_s(spec: JordanSpecR, phis: Sequence[Poly]) -> Tuple[Poly, Poly]:
    """``(f, g)`` from the generating functions, normalized and rewritten in ``s`` coordinates."""
    r = general_solution_real(spec, phis)
    f, g = r.f, r.g
    if not spec.is_normalized:
        np_ = normalize_real(spec, f, g)
        spec, f, g = np_.spec, np_.f, np_.g
    return to_s_coordinates(f, spec), to_s_coordinates(g, spec)


def hypothesis_check_pair(spec: JordanSpecR, f: Poly, g: Poly, truncation: int,
                          mode: str = "minimal") -> HypothesisReport:
    """Fit ``(f, g)``, given in ``s`` coordinates of a normalized spec, degree by degree up to ``truncation``.

    Homogeneous parts above the truncation are not compared; ``target_degree``
    in the report shows whether any were dropped.
    """
    if not spec.is_normalized:
        raise StarmultError("hypothesis_check_pair expects a normalized spec")
    if truncation < 0:
        raise StarmultError("truncation must be nonnegative")
    _modulus(spec, mode)
    vars = spec.svars
    degrees, total = [], MuPoly.zero(vars, _modulus(spec, mode).m)
    res_f, res_g = Poly.zero(vars), Poly.zero(vars)
    for d in range(truncation + 1):
        rep, V = fit_degree(spec, _homogeneous_part(f, d), _homogeneous_part(g, d), d, mode)
        degrees.append(rep)
        total = total + V
        res_f, res_g = res_f + rep.residual[0], res_g + rep.residual[1]
    sys = s_system_multi(spec, mode)
    agree = res_f.is_zero() and res_g.is_zero() and all(r.consistent for r in degrees)
    return HypothesisReport(spec, mode, truncation, agree, (f, g), degrees, (res_f, res_g),
                            check_solution(sys, total).is_solution, max(f.degree(), g.degree(), 0))


def hypothesis_check(spec: JordanSpecR, phis: Sequence[Poly] | Mapping, truncation: int,
                     mode: str = "minimal") -> HypothesisReport:
    """Report whether the nested star power series reproduces the solution generated by ``phis``.

    ``phis`` is a list of generating functions or a coefficient table (see
    :func:`phis_from_table`).
    """
    if isinstance(phis, Mapping):
        phis = phis_from_table(phis, spec)
    f, g = direct_solution_s(spec, phis)
    return hypothesis_check_pair(spec.normalized(), f, g, truncation, mode)


def phis_from_table(c: Mapping, spec) -> List[Poly]:
    """Coefficient table to generating functions.

    ``spec`` is anything with ``ns`` and ``nu(k)``: a real spec or a complex eigenvalue.

    Keys are ``(k, j)``, meaning the monomial ``s1^j`` in ``phi_k``, or
    ``(k, e_1, ..., e_nu)`` with a full exponent over the ``nu_k`` variables.
    """
    n1 = spec.ns[0]
    terms: List[Dict[Exp, object]] = [dict() for _ in range(n1 + 1)]
    for key, val in c.items():
        k, rest = key[0], tuple(key[1:])
        if not 0 <= k <= n1:
            raise DimensionMismatch(f"index k={k} outside 0..{n1}")
        nu = spec.nu(k)
        if len(rest) == 1:
            rest = rest + (0,) * (nu - 1)
        if len(rest) != nu or any(e < 0 for e in rest):
            raise DimensionMismatch(f"exponent {rest} does not fit phi_{k} with {nu} variables")
        val = as_scalar(val)
        terms[k][rest] = terms[k].get(rest, 0) + val
    return [Poly(tuple(f"s{i + 1}" for i in range(spec.nu(k))), terms[k], "complex") for k in range(n1 + 1)]


def report_to_json(rep: HypothesisReport) -> dict:
    def pair(p):
        return {"f": poly_to_json(p[0]), "g": poly_to_json(p[1])}

    return {
        "verdict": rep.verdict,
        "mode": rep.mode,
        "truncation": rep.truncation,
        "target_degree": rep.target_degree,
        "spec": spec_r_to_json(rep.spec),
        "ansatz_is_solution": rep.ansatz_is_solution,
        "residual": pair(rep.residual),
        "degrees": [
            {
                "degree": d.degree,
                "unknowns": d.unknowns,
                "equations": d.equations,
                "rank": d.rank,
                "consistent": d.consistent,
                "coefficients": {",".join(map(str, I)): [scalar_to_json(x) for x in v]
                                 for I, v in sorted(d.coefficients.items())},
                "certificate": None if d.certificate is None else [
                    {"component": w, "monomial": list(e), "weight": scalar_to_json(y)}
                    for w, e, y in d.certificate],
            }
            for d in rep.degrees
        ],
    }
