"""Real gradient equations whose matrix has one complex-conjugate pair alpha +- i beta.

``M`` is in real Jordan form: diagonal 2x2 blocks ``[[alpha, beta], [-beta,
alpha]]`` with 2x2 identities on the block superdiagonal. Block ``b`` has
``2(n_b + 1)`` coordinates ``x{b}_{j}, y{b}_{j}`` ordered
``x{b}_0, y{b}_0, x{b}_1, y{b}_1, ...``.

After normalizing to ``alpha = 0, beta = 1`` the equation extends to
``(M^-1 + mu I) grad V_mu == 0 (mod (1 + mu^2)^(n+1))`` where ``2(n + 1)`` is
the dimension. The coordinates ``x = B s`` of :func:`basis_matrix` make the
linear mu-vector ``s_mu = s_0 + s_1 mu + ...`` a solution, and star power
series of ``s_mu`` reproduce every polynomial solution of a single block.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Mapping, Sequence, Tuple

from . import linalg
from .complex_case import mu_coefficient, verify_gradient
from .errors import DimensionMismatch, NotASolutionError, StarmultError
from .poly import Poly, gradient, integrate_exact, is_closed, substitute
from .scalar import CQ, as_scalar
from .staralg import (Modulus, MuPoly, StarSystem, check_solution, companion_matrix,
                      star_power, star_product)

MU = "mu"
LAMBDA = linalg.matrix([[0, 1], [-1, 0]])
E1 = (Fraction(1), Fraction(0))


def gbinom(a: int, b: int) -> Fraction:
    """Binomial coefficient for any integer ``a``: falling factorial over ``b!``, 0 for ``b < 0``."""
    if b < 0:
        return Fraction(0)
    num = 1
    for t in range(b):
        num *= a - t
    return Fraction(num, factorial(b))


@dataclass(frozen=True)
class JordanSpecR:
    alpha: Fraction
    beta: Fraction
    blocks: Tuple[int, ...]  # n_b + 1 for each block; block b has size 2(n_b + 1)

    def __post_init__(self):
        alpha, beta = as_scalar(self.alpha), as_scalar(self.beta)
        if isinstance(alpha, CQ) or isinstance(beta, CQ):
            raise StarmultError("alpha and beta must be rational")
        if beta == 0:
            raise StarmultError("beta must be nonzero")
        blocks = tuple(int(b) for b in self.blocks)
        if not blocks or any(b < 1 for b in blocks):
            raise StarmultError(f"block sizes must be positive, got {blocks}")
        if any(a < b for a, b in zip(blocks, blocks[1:])):
            raise StarmultError(f"block sizes must be weakly decreasing, got {blocks}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def normalized_single(cls, n: int) -> "JordanSpecR":
        return cls(Fraction(0), Fraction(1), (n + 1,))

    @property
    def ns(self) -> Tuple[int, ...]:
        return tuple(b - 1 for b in self.blocks)

    @property
    def n(self) -> int:
        """``n`` with ``2(n + 1)`` the total dimension."""
        return sum(self.blocks) - 1

    @property
    def is_normalized(self) -> bool:
        return self.alpha == 0 and self.beta == 1

    def nu(self, k: int) -> int:
        return sum(1 for n in self.ns if n >= k)

    def block_vars(self, b: int) -> Tuple[str, ...]:
        return tuple(v for j in range(self.blocks[b]) for v in (f"x{b + 1}_{j}", f"y{b + 1}_{j}"))

    def block_svars(self, b: int) -> Tuple[str, ...]:
        return tuple(f"s{b + 1}_{j}" for j in range(2 * self.blocks[b]))

    @property
    def vars(self) -> Tuple[str, ...]:
        return tuple(v for b in range(len(self.blocks)) for v in self.block_vars(b))

    @property
    def svars(self) -> Tuple[str, ...]:
        return tuple(v for b in range(len(self.blocks)) for v in self.block_svars(b))

    def normalized(self) -> "JordanSpecR":
        return JordanSpecR(Fraction(0), Fraction(1), self.blocks)


def real_jordan_matrix(spec: JordanSpecR) -> linalg.Matrix:
    mats = []
    for size in spec.blocks:
        N = 2 * size
        rows = [[Fraction(0)] * N for _ in range(N)]
        for t in range(size):
            a = 2 * t
            rows[a][a] = rows[a + 1][a + 1] = spec.alpha
            rows[a][a + 1] = spec.beta
            rows[a + 1][a] = -spec.beta
            if t + 1 < size:
                rows[a][a + 2] = rows[a + 1][a + 3] = Fraction(1)
        mats.append(linalg.matrix(rows))
    return linalg.block_diag(*mats)


def real_system(spec: JordanSpecR) -> StarSystem:
    """``(M^-1 + mu I)`` modulo ``(1 + mu^2)^(n+1)`` in Jordan coordinates."""
    if not spec.is_normalized:
        raise StarmultError("the extended real system needs a normalized spec (alpha=0, beta=1)")
    M = real_jordan_matrix(spec)
    return StarSystem(linalg.inverse(M), Modulus.one_plus_mu2_power(spec.n + 1), spec.vars)


@dataclass(frozen=True)
class NormalizedPair:
    spec: JordanSpecR
    f: Poly
    g: Poly


def normalize_real(spec: JordanSpecR, f: Poly, g: Poly) -> NormalizedPair:
    """Map a solution to the ``alpha = 0, beta = 1`` system.

    ``f~ = f - alpha g``, ``g~ = beta g`` and ``x~^k_j = beta^(j - n_k) x^k_j``
    (same for ``y``); the new pair is expressed in the scaled coordinates.
    """
    M = real_jordan_matrix(spec)
    if not verify_gradient(M, f, g):
        raise NotASolutionError("(f, g) does not solve grad f = M grad g")
    vars = spec.vars
    image = {}
    for b, n_b in enumerate(spec.ns):
        for j in range(n_b + 1):
            for v in (f"x{b + 1}_{j}", f"y{b + 1}_{j}"):
                # old coordinate in terms of the new one
                image[v] = Poly.var(vars, v, f.field).scale(spec.beta ** (n_b - j))
    ft = substitute(f - g.scale(spec.alpha), image)
    gt = substitute(g.scale(spec.beta), image)
    target = spec.normalized()
    if not verify_gradient(real_jordan_matrix(target), ft, gt):
        raise AssertionError("normalization did not produce a solution of the normalized system")
    return NormalizedPair(target, ft, gt)


def extend_real(spec: JordanSpecR, f: Poly, g: Poly) -> MuPoly:
    """``(f, V_1, ..., V_2n, g)`` solving the extended system, auxiliaries vanishing at 0.

    Runs ``grad V_{j-1} = Z_j grad g - M^-1 grad V_j`` downward from ``V_{2n+1} = g``.
    """
    sys = real_system(spec)
    M = real_jordan_matrix(spec)
    if not verify_gradient(M, f, g):
        raise NotASolutionError("(f, g) does not solve grad f = M grad g")
    return _extend_down(sys, f, g)


def _extend_down(sys: StarSystem, f: Poly, g: Poly) -> MuPoly:
    L = sys.m
    Z = sys.modulus.z
    V: List[Poly] = [None] * L  # type: ignore[list-item]
    V[L - 1] = g
    dg = gradient(g)
    for j in range(L - 1, 0, -1):
        form = dg.scale(Z[j]) - gradient(V[j]).apply(sys.X)
        if not is_closed(form):
            raise NotASolutionError(f"step {j}: one-form is not closed")
        V[j - 1] = integrate_exact(form)
    drift = V[0] - f
    if not drift.is_constant():
        raise NotASolutionError("recursion does not return to f")
    V[0] = f
    W = MuPoly(tuple(V))
    if not check_solution(sys, W).is_solution:
        raise NotASolutionError("extension fails the mu = 0 equation")
    return W


# -- the basis x = B s --------------------------------------------------------


@dataclass(frozen=True)
class RealBasis:
    n: int
    B: linalg.Matrix
    B_inv: linalg.Matrix
    C: linalg.Matrix  # companion of (1 + mu^2)^(n+1)
    N: linalg.Matrix  # -M^-T


def basis_matrix(n: int, verify: bool = True) -> RealBasis:
    """Assemble ``B`` from its 2x1 blocks ``C(i+j-3, i-1) (-Lambda)^(i+j-2) e_1``."""
    if n < 0:
        raise DimensionMismatch("n must be nonnegative")
    size = 2 * (n + 1)
    mL = linalg.scale(LAMBDA, -1)
    powers = [linalg.identity(2)]
    for _ in range(2 * size):
        powers.append(linalg.matmul(powers[-1], mL))
    rows = [[Fraction(0)] * size for _ in range(size)]
    for i in range(1, n + 2):
        for j in range(1, size + 1):
            c = gbinom(i + j - 3, i - 1)
            if c == 0:
                continue
            col = linalg.matvec(powers[i + j - 2], E1)
            rows[2 * (i - 1)][j - 1] = c * col[0]
            rows[2 * (i - 1) + 1][j - 1] = c * col[1]
    B = linalg.matrix(rows)
    M = real_jordan_matrix(JordanSpecR.normalized_single(n))
    N = linalg.scale(linalg.transpose(linalg.inverse(M)), -1)
    C = companion_matrix(Modulus.one_plus_mu2_power(n + 1))
    B_inv = linalg.inverse(B)
    if verify and linalg.matmul(N, B) != linalg.matmul(B, C):
        raise AssertionError("-M^-T B != B C")
    return RealBasis(n, B, B_inv, C, N)


def n_power_formula(n: int, a: int) -> linalg.Matrix:
    """``N^a`` from its block form ``C(a-1+i-j, i-j) (-Lambda)^(a+i-j)`` for ``i >= j``."""
    size = 2 * (n + 1)
    rows = [[Fraction(0)] * size for _ in range(size)]
    mL = linalg.scale(LAMBDA, -1)
    for i in range(n + 1):
        for j in range(i + 1):
            c = gbinom(a - 1 + i - j, i - j)
            if c == 0:
                continue
            blk = linalg.mat_pow(mL, a + i - j)
            for p in range(2):
                for q in range(2):
                    rows[2 * i + p][2 * j + q] = c * blk[p][q]
    return linalg.matrix(rows)


def s_system(n: int) -> StarSystem:
    """The extended system in ``s`` coordinates: ``X = B^T M^-1 B^-T`` (equals ``-C^T``)."""
    basis = basis_matrix(n)
    spec = JordanSpecR.normalized_single(n)
    Minv = linalg.inverse(real_jordan_matrix(spec))
    X = linalg.matmul(linalg.matmul(linalg.transpose(basis.B), Minv), linalg.transpose(basis.B_inv))
    return StarSystem(X, Modulus.one_plus_mu2_power(n + 1), spec.svars)


def s_mu(n: int, vars: Sequence[str] | None = None, field: str = "real") -> MuPoly:
    svars = JordanSpecR.normalized_single(n).svars
    vars = tuple(vars) if vars is not None else svars
    return MuPoly(tuple(Poly.var(vars, v, field) for v in svars))


def _linear_images(src_vars, dst_vars, A, field) -> Dict[str, Poly]:
    images = {}
    for a, v in enumerate(src_vars):
        acc = Poly.zero(dst_vars, field)
        for b, w in enumerate(dst_vars):
            if A[a][b] != 0:
                acc = acc + Poly.var(dst_vars, w, field).scale(A[a][b])
        images[v] = acc
    return images


def to_s_coordinates(p: Poly, spec: JordanSpecR) -> Poly:
    """Rewrite ``p(x)`` as a polynomial in ``s`` via ``x = B s`` (blockwise)."""
    B = linalg.block_diag(*(basis_matrix(n).B for n in spec.ns))
    return substitute(p, _linear_images(spec.vars, spec.svars, B, p.field))


def from_s_coordinates(p: Poly, spec: JordanSpecR) -> Poly:
    """Rewrite ``p(s)`` in Jordan coordinates via ``s = B^-1 x``."""
    Bi = linalg.block_diag(*(basis_matrix(n).B_inv for n in spec.ns))
    return substitute(p, _linear_images(spec.svars, spec.vars, Bi, p.field))


# -- general solution --------------------------------------------------------


@dataclass(frozen=True)
class FkResult:
    F: Poly
    f: Poly
    g: Poly


def _z_images(spec: JordanSpecR, count: int) -> List[Poly]:
    vars = spec.vars + (MU,)
    mu = Poly.var(vars, MU, "complex")
    i = CQ(0, 1)
    out = []
    for b in range(count):
        acc = Poly.zero(vars, "complex")
        for j in range(spec.blocks[b]):
            z = Poly.var(vars, f"x{b + 1}_{j}", "complex") + Poly.var(vars, f"y{b + 1}_{j}", "complex").scale(i)
            acc = acc + z * mu ** j
        out.append(acc)
    return out


def F_k_eval(phi: Poly, k: int, spec: JordanSpecR) -> FkResult:
    """``F_k`` for generating function ``phi`` and the split ``F = f - conj(lambda) g``.

    ``F_k = D^k phi - sum_{l=1}^k (-i/(2 beta))^l k!/(k-l)! conj(D^(k-l) phi)``
    with ``D^t phi = d^t/dmu^t phi(z^(k)_mu)|_{mu=0}``; conjugation acts on
    coefficients since the coordinates are real.
    """
    if k < 0 or k > spec.ns[0]:
        raise DimensionMismatch(f"k={k} outside 0..{spec.ns[0]}")
    nu = spec.nu(k)
    if phi.nvars != nu:
        raise DimensionMismatch(f"phi_{k} must have {nu} variables, has {phi.nvars}")
    vars = spec.vars
    if phi.is_zero():
        z = Poly.zero(vars, "real")
        return FkResult(Poly.zero(vars, "complex"), z, z)
    sub = substitute(phi.as_field("complex"), dict(zip(phi.vars, _z_images(spec, nu))))

    def D(t):
        return mu_coefficient(sub, t).scale(factorial(t))

    F = D(k)
    w = CQ(0, Fraction(-1) / (2 * spec.beta))
    for l in range(1, k + 1):
        F = F - D(k - l).conjugate().scale(w ** l * Fraction(factorial(k), factorial(k - l)))
    g = F.imag_part().scale(1 / spec.beta)
    f = F.real_part() + g.scale(spec.alpha)
    return FkResult(F, f, g)


def general_solution_real(spec: JordanSpecR, phis: Sequence[Poly], check: bool = True):
    """``(f, g)`` with ``F = sum_k F_k``; returns an :class:`FkResult` for the sum."""
    if len(phis) > spec.ns[0] + 1:
        raise DimensionMismatch(f"expected at most {spec.ns[0] + 1} generating functions")
    vars = spec.vars
    F = Poly.zero(vars, "complex")
    f = Poly.zero(vars, "real")
    g = Poly.zero(vars, "real")
    for k, phi in enumerate(phis):
        r = F_k_eval(phi, k, spec)
        F, f, g = F + r.F, f + r.f, g + r.g
    if check and not verify_gradient(real_jordan_matrix(spec), f, g):
        raise AssertionError("generated pair fails grad f = M grad g")
    return FkResult(F, f, g)


# -- reconstruction ---------------------------------------------------------


def _b_ikm(i: int, k: int, m: int):
    """``b_{ikm}`` as ``(constant part, mu part)``."""
    if m % 2 == 0:
        return (Fraction((-1) ** (m // 2)) * gbinom(i + 2 * k, i), Fraction(0))
    return (Fraction(0), Fraction((-1) ** ((m - 1) // 2)) * gbinom(i + 2 * k - 1, i))


def real_constant(m: int, n: int) -> List[Fraction]:
    """Coefficients (constant term first, length ``2n+2``) of

    ``a_{m,mu} = sum_{j<=m} m! (1+mu^2)^(n-j) sum_{k<=j} sum_{i<=m} (-1)^k 2^(i-m) C(j,k) b_{ikm}``.
    """
    if not 0 <= m <= n:
        raise DimensionMismatch(f"m={m} outside 0..{n}")
    L = 2 * n + 2
    out = [Fraction(0)] * L
    for j in range(m + 1):
        c0 = c1 = Fraction(0)
        for k in range(j + 1):
            for i in range(m + 1):
                w = (-1) ** k * Fraction(2) ** (i - m) * comb(j, k)
                b0, b1 = _b_ikm(i, k, m)
                c0 += w * b0
                c1 += w * b1
        for t in range(n - j + 1):
            c = factorial(m) * comb(n - j, t)
            out[2 * t] += c * c0
            out[2 * t + 1] += c * c1
    return out


@dataclass(frozen=True)
class RealConstants:
    n: int
    a: Tuple[MuPoly, ...]


def real_constants(n: int, vars: Sequence[str] | None = None) -> RealConstants:
    vars = tuple(vars) if vars is not None else JordanSpecR.normalized_single(n).svars
    return RealConstants(n, tuple(MuPoly.constant(vars, real_constant(m, n)) for m in range(n + 1)))


def closed_form_first_power(n: int) -> Tuple[Poly, Poly]:
    """Closed form of ``(f_n, g_n)`` for ``phi_n(s) = s`` in ``s`` coordinates.

    ``d_j = n!/2^n sum_i 2^i C(i+j-1, i)`` and ``b_j = 2 n! C(n+j-1, n) - d_j``.
    """
    sv = JordanSpecR.normalized_single(n).svars

    def d(j):
        return Fraction(factorial(n), 2 ** n) * sum(2 ** i * gbinom(i + j - 1, i) for i in range(n + 1))

    def b(j):
        return 2 * factorial(n) * gbinom(n + j - 1, n) - d(j)

    def s(j):
        return Poly.var(sv, sv[j])

    f = Poly.zero(sv)
    g = Poly.zero(sv)
    for r in range(n + 1):
        if n % 2 == 0:
            sign = (-1) ** (n // 2 + r)
            f = f + s(2 * r).scale(sign * b(2 * r))
            g = g + s(2 * r + 1).scale(sign * d(2 * r + 1))
        else:
            sign = (-1) ** ((n - 1) // 2 + r)
            f = f + s(2 * r + 1).scale(-sign * b(2 * r + 1))
            g = g + s(2 * r).scale(sign * d(2 * r))
    return f, g


CoeffTable = Mapping[Tuple[int, int], Fraction]


def reconstruct_real(c: CoeffTable, n: int, truncation: int | None = None) -> MuPoly:
    """``sum_m sum_j c_{mj} a_{m,mu} * (s_mu)^j`` modulo ``(1+mu^2)^(n+1)``, in ``s`` coordinates.

    Entries with ``j > truncation`` are ignored when a truncation is given.
    Coefficients must be rational.
    """
    spec = JordanSpecR.normalized_single(n)
    vars = spec.svars
    Z = Modulus.one_plus_mu2_power(n + 1)
    consts = real_constants(n, vars).a
    base = s_mu(n, vars)
    out = MuPoly.zero(vars, Z.m)
    powers: Dict[int, MuPoly] = {}
    for (m, j), cmj in sorted(c.items()):
        cmj = as_scalar(cmj)
        if isinstance(cmj, CQ):
            raise StarmultError("real reconstruction takes rational coefficients")
        if not 0 <= m <= n or j < 0:
            raise DimensionMismatch(f"coefficient index ({m},{j}) out of range for n={n}")
        if cmj == 0 or (truncation is not None and j > truncation):
            continue
        if j not in powers:
            powers[j] = star_power(base, j, Z)
        out = out + star_product(consts[m], powers[j], Z).scale(cmj)
    return out


def phis_from_table(c: CoeffTable, n: int) -> List[Poly]:
    """``phi_m(s) = sum_j c_{mj} s^j`` for a single block."""
    phis = [dict() for _ in range(n + 1)]
    for (m, j), cmj in c.items():
        if not 0 <= m <= n:
            raise DimensionMismatch(f"coefficient index ({m},{j}) out of range for n={n}")
        phis[m][(j,)] = phis[m].get((j,), 0) + as_scalar(cmj)
    return [Poly(("s1",), t, "complex") for t in phis]


def direct_real_solution(c: CoeffTable, n: int) -> FkResult:
    spec = JordanSpecR.normalized_single(n)
    return general_solution_real(spec, phis_from_table(c, n))
