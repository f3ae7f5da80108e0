"""Gradient equations grad f = M grad g with M in (complex) Jordan form.

Variables follow the naming ``x{k}_{b}_{j}``: eigenvalue ``k`` and block
``b`` (both 1-based), position ``j`` inside the block (``j = 0`` is the
major variable). They are flattened block-major, eigenvalue by eigenvalue.

For a single eigenvalue with blocks of sizes ``n_1 + 1 >= ... >= n_m + 1``
the shifted pair ``h = f - lambda g`` solves ``grad h = U grad g`` with ``U``
nilpotent, and extends to a mu-vector of length ``n_1 + 1`` modulo
``mu^(n_1 + 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .errors import DimensionMismatch, NotASolutionError, StarmultError, VariableMismatch
from .poly import Poly, gradient, integrate_exact, substitute
from .scalar import Scalar, as_scalar
from .staralg import Modulus, MuPoly, StarSystem, check_solution, star_power, star_product

FIELD = "complex"
MU = "mu"


@dataclass(frozen=True)
class Eigenvalue:
    lam: Scalar
    blocks: Tuple[int, ...]  # block sizes n_i + 1, weakly decreasing

    def __post_init__(self):
        object.__setattr__(self, "lam", as_scalar(self.lam))
        blocks = tuple(int(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks or any(b < 1 for b in blocks):
            raise StarmultError(f"block sizes must be positive, got {blocks}")
        if any(a < b for a, b in zip(blocks, blocks[1:])):
            raise StarmultError(f"block sizes must be weakly decreasing, got {blocks}")

    @property
    def ns(self) -> Tuple[int, ...]:
        return tuple(b - 1 for b in self.blocks)

    @property
    def size(self) -> int:
        return sum(self.blocks)

    def nu(self, k: int) -> int:
        """Number of blocks of size at least ``k + 1``."""
        return sum(1 for n in self.ns if n >= k)


@dataclass(frozen=True)
class JordanSpecC:
    eigenvalues: Tuple[Eigenvalue, ...]
    first_index: int = 1  # label of eigenvalues[0] in variable names

    def __post_init__(self):
        evs = tuple(self.eigenvalues)
        object.__setattr__(self, "eigenvalues", evs)
        if not evs:
            raise StarmultError("a Jordan spec needs at least one eigenvalue")
        lams = [e.lam for e in evs]
        if len(set(lams)) != len(lams):
            raise StarmultError("eigenvalues must be pairwise distinct")

    @classmethod
    def single(cls, lam, blocks) -> "JordanSpecC":
        return cls((Eigenvalue(lam, tuple(blocks)),))

    def component(self, k: int) -> "JordanSpecC":
        return JordanSpecC((self.eigenvalues[k],), self.first_index + k)

    @property
    def is_single(self) -> bool:
        return len(self.eigenvalues) == 1

    def block_vars(self, k: int, b: int) -> Tuple[str, ...]:
        """Variables of block ``b`` (0-based) of eigenvalue ``k`` (0-based)."""
        size = self.eigenvalues[k].blocks[b]
        label = self.first_index + k
        return tuple(f"x{label}_{b + 1}_{j}" for j in range(size))

    def eigen_vars(self, k: int) -> Tuple[str, ...]:
        ev = self.eigenvalues[k]
        return tuple(v for b in range(len(ev.blocks)) for v in self.block_vars(k, b))

    @property
    def vars(self) -> Tuple[str, ...]:
        return tuple(v for k in range(len(self.eigenvalues)) for v in self.eigen_vars(k))

    def only(self) -> Eigenvalue:
        if not self.is_single:
            raise StarmultError("operation needs a single-eigenvalue Jordan spec")
        return self.eigenvalues[0]


@dataclass(frozen=True)
class JordanMatrices:
    M: linalg.Matrix
    U: linalg.Matrix
    var_names: Tuple[str, ...]


@dataclass(frozen=True)
class SolutionPair:
    f: Poly
    g: Poly
    h: Optional[Poly] = None


def _jordan_block(lam, size) -> List[List]:
    return [[lam if i == j else (Fraction(1) if j == i + 1 else Fraction(0))
             for j in range(size)] for i in range(size)]


def build_matrices(spec: JordanSpecC) -> JordanMatrices:
    Ms, Us = [], []
    for ev in spec.eigenvalues:
        for size in ev.blocks:
            Ms.append(linalg.matrix(_jordan_block(ev.lam, size)))
            Us.append(linalg.matrix(_jordan_block(Fraction(0), size)))
    return JordanMatrices(linalg.block_diag(*Ms), linalg.block_diag(*Us), spec.vars)


def verify_gradient(M, f: Poly, g: Poly) -> bool:
    """Exact check of ``grad f == M grad g``."""
    if f.vars != g.vars:
        raise VariableMismatch("f and g use different variable lists")
    if f.field != g.field:
        f, g = f.as_field("complex"), g.as_field("complex")
    n = len(f.vars)
    if len(M) != n or any(len(r) != n for r in M):
        raise DimensionMismatch(f"matrix must be {n}x{n}")
    gf = gradient(f)
    gg = gradient(g).apply(M)
    return all(a == b for a, b in zip(gf, gg))


def eigen_shift(f: Poly, g: Poly, lam, direction: str = "forward") -> SolutionPair:
    """forward: ``h = f - lam g``; inverse: ``f = h + lam g`` (first argument is ``h``)."""
    lam = as_scalar(lam)
    if direction == "forward":
        return SolutionPair(f=f, g=g, h=f - g.scale(lam))
    if direction == "inverse":
        h = f
        return SolutionPair(f=h + g.scale(lam), g=g, h=h)
    raise ValueError(f"unknown direction {direction!r}")


def nilpotency_index(U) -> int:
    n = len(U)
    P = linalg.identity(n)
    for r in range(0, n + 1):
        if linalg.is_zero(P):
            return r
        P = linalg.matmul(P, U)
    raise StarmultError("matrix is not nilpotent")


def extend_nilpotent(U, f: Poly, g: Poly) -> MuPoly:
    """Lift a solution of ``grad f = U grad g`` to ``(V_0, ..., V_{r-3}, f, g)``.

    ``grad V_i = U^(r-1-i) grad g``; auxiliary entries are normalized to
    vanish at the origin.
    """
    U = linalg.matrix(U)
    r = max(nilpotency_index(U), 1)
    if f.field != g.field:
        f, g = f.as_field("complex"), g.as_field("complex")
    if not verify_gradient(U, f, g):
        raise NotASolutionError("(f, g) does not solve grad f = U grad g")
    if r == 1:
        return MuPoly((g,))
    coeffs: List[Poly] = []
    dg = gradient(g)
    for i in range(r - 2):
        form = dg.apply(linalg.mat_pow(U, r - 1 - i))
        coeffs.append(integrate_exact(form))
    coeffs += [f, g]
    return MuPoly(tuple(coeffs))


def nilpotent_system(spec: JordanSpecC) -> StarSystem:
    """``(-U + mu I)`` modulo ``mu^(n_1 + 1)`` for a single eigenvalue."""
    ev = spec.only()
    mats = build_matrices(spec)
    return StarSystem(linalg.scale(mats.U, -1), Modulus.mu_power(ev.blocks[0]), mats.var_names)


def extend_solution(spec: JordanSpecC, f: Poly, g: Poly) -> MuPoly:
    """Shift by the eigenvalue, then extend; for a single-eigenvalue spec."""
    ev = spec.only()
    pair = eigen_shift(f.as_field(FIELD), g.as_field(FIELD), ev.lam)
    return extend_nilpotent(build_matrices(spec).U, pair.h, pair.g)


def embed(V: MuPoly, s: int, target: StarSystem, factor: str = "mu",
          check: bool = True) -> MuPoly:
    """Embed a subsystem solution: ``mu^s V`` (or ``(1 + mu^2)^s V`` for ``factor='one_plus_mu2'``)."""
    if s < 0:
        raise DimensionMismatch("embedding exponent must be nonnegative")
    V = V.with_vars(target.vars)
    if factor == "mu":
        W = V.shifted(s)
    elif factor == "one_plus_mu2":
        coeffs = list(V.coeffs)
        for _ in range(s):
            zero = Poly.zero(V.vars, V.field)
            coeffs = [a + b for a, b in zip(coeffs + [zero, zero], [zero, zero] + coeffs)]
        W = MuPoly(tuple(coeffs))
    else:
        raise ValueError(f"unknown embedding factor {factor!r}")
    if W.m != target.m:
        raise DimensionMismatch(f"embedded length {W.m} != target modulus degree {target.m}")
    if check and not check_solution(target, W).is_solution:
        raise NotASolutionError("embedded mu-vector does not solve the target system")
    return W


# -- Psi polynomials ------------------------------------------------------


def _compositions(total: int, weight: int, n: int):
    """Tuples ``(a_0..a_n)`` with ``sum a = total`` and ``sum k a_k = weight``."""
    def rec(k, left, wleft):
        if k == 0:
            if wleft == 0:
                yield (left,)
            return
        for ak in range(min(left, wleft // k) + 1):
            for rest in rec(k - 1, left - ak, wleft - k * ak):
                yield rest + (ak,)
    yield from rec(n, total, weight)


def psi_multinomial(i: int, j: int, xs: Sequence[Poly]) -> Poly:
    """Coefficient of ``mu^j`` in ``(xs[0] + xs[1] mu + ...)^i`` via the multinomial theorem."""
    n = len(xs) - 1
    out = Poly.zero(xs[0].vars, xs[0].field)
    for a in _compositions(i, j, n):
        coeff = factorial(i)
        term = Poly.const(xs[0].vars, 1, xs[0].field)
        for x, ak in zip(xs, a):
            coeff //= factorial(ak)
            if ak:
                term = term * x ** ak
        out = out + term.scale(coeff)
    return out


def partial_bell(n: int, k: int, ys: Sequence[Poly], one: Poly) -> Poly:
    """Standard partial Bell polynomial ``B_{n,k}(y_1, y_2, ...)`` by the recurrence
    ``B_{n,k} = sum_i C(n-1, i-1) y_i B_{n-i,k-1}``; ``ys[0]`` is ``y_1``."""
    memo: Dict[Tuple[int, int], Poly] = {}
    zero = one - one

    def B(n, k):
        if (n, k) in memo:
            return memo[n, k]
        if n == 0 and k == 0:
            val = one
        elif n == 0 or k == 0:
            val = zero
        else:
            val = zero
            for i in range(1, n - k + 2):
                if i <= len(ys) and not ys[i - 1].is_zero():
                    val = val + ys[i - 1] * B(n - i, k - 1) * comb(n - 1, i - 1)
        memo[n, k] = val
        return val

    return B(n, k)


def psi_bell(i: int, j: int, xs: Sequence[Poly]) -> Poly:
    """``sum_s C(i,s) x_0^(i-s) (s!/j!) B_{j,s}(1! x_1, 2! x_2, ...)``.

    The Bell polynomial normalization used for Psi carries ``s!`` where the
    standard one carries ``j!``, hence the ratio.
    """
    vars, fld = xs[0].vars, xs[0].field
    one = Poly.const(vars, 1, fld)
    zero = Poly.zero(vars, fld)
    ys = [(xs[k] if k < len(xs) else zero).scale(factorial(k)) for k in range(1, j + 1)]
    out = zero
    for s in range(0, min(i, j) + 1):
        bell = partial_bell(j, s, ys, one)
        if bell.is_zero():
            continue
        out = out + (xs[0] ** (i - s)) * bell.scale(Fraction(comb(i, s) * factorial(s), factorial(j)))
    return out


def _block_polys(spec: JordanSpecC, b: int) -> List[Poly]:
    vars = spec.vars
    return [Poly.var(vars, v, FIELD) for v in spec.block_vars(0, b)]


def psi(I: Sequence[int], j: int, spec: JordanSpecC, method: str = "both") -> Poly:
    """``Psi_{I,j}`` over the variables of a single-eigenvalue spec."""
    ev = spec.only()
    I = tuple(int(i) for i in I)
    r = len(I)
    if r < 1 or r > len(ev.blocks):
        raise DimensionMismatch(f"multi-index length {r} outside 1..{len(ev.blocks)}")
    if any(i < 0 for i in I) or j < 0 or j > ev.ns[r - 1]:
        raise DimensionMismatch(f"index j={j} outside 0..{ev.ns[r - 1]}")

    def single(i, jj, xs):
        if method == "multinomial":
            return psi_multinomial(i, jj, xs)
        if method == "bell":
            return psi_bell(i, jj, xs)
        a, b = psi_multinomial(i, jj, xs), psi_bell(i, jj, xs)
        if a != b:
            raise AssertionError(f"Psi_({i},{jj}) differs between multinomial and Bell routes")
        return a

    blocks = [_block_polys(spec, b) for b in range(r)]
    out = Poly.zero(spec.vars, FIELD)
    for js in cartesian(range(j + 1), repeat=r):
        if sum(js) != j:
            continue
        term = Poly.const(spec.vars, 1, FIELD)
        for i, jk, xs in zip(I, js, blocks):
            term = term * single(i, jk, xs)
        out = out + term
    return out


# -- general solution and reconstruction -----------------------------------


def _check_phis(ev: Eigenvalue, phis: Sequence[Poly]) -> List[Poly]:
    n1 = ev.ns[0]
    if len(phis) > n1 + 1:
        raise DimensionMismatch(f"expected at most {n1 + 1} generating functions, got {len(phis)}")
    out = []
    for k in range(n1 + 1):
        if k < len(phis):
            phi = phis[k]
            if phi.nvars != ev.nu(k):
                raise DimensionMismatch(
                    f"phi_{k} must have {ev.nu(k)} variables, has {phi.nvars}")
            out.append(phi.as_field(FIELD))
        else:
            out.append(Poly.zero(tuple(f"s{i + 1}" for i in range(ev.nu(k))), FIELD))
    return out


def _mu_images(spec: JordanSpecC, count: int) -> List[Poly]:
    """``x^b_mu = sum_j x_{b,j} mu^j`` over ``vars + (mu,)`` for the first ``count`` blocks."""
    vars = spec.vars + (MU,)
    mu = Poly.var(vars, MU, FIELD)
    out = []
    for b in range(count):
        acc = Poly.zero(vars, FIELD)
        for j, v in enumerate(spec.block_vars(0, b)):
            acc = acc + Poly.var(vars, v, FIELD) * mu ** j
        out.append(acc)
    return out


def mu_coefficient(p: Poly, j: int, mu: str = MU) -> Poly:
    """Coefficient of ``mu^j`` as a polynomial over the remaining variables."""
    idx = p.vars.index(mu)
    keep = p.vars[:idx] + p.vars[idx + 1:]
    terms = {e[:idx] + e[idx + 1:]: c for e, c in p.terms.items() if e[idx] == j}
    return Poly._raw(keep, terms, p.field)


def general_solution(spec: JordanSpecC, phis: Sequence[Poly], check: bool = True) -> SolutionPair:
    """Polynomial solution generated by ``phi_0, ..., phi_{n_1}``; the free constant is 0.

    ``g_k = d^k/dmu^k phi_k(x^(k)_mu)|_0`` and
    ``f_k = lambda g_k + k d^(k-1)/dmu^(k-1) phi_k(x^(k)_mu)|_0``.
    """
    ev = spec.only()
    phis = _check_phis(ev, phis)
    images = _mu_images(spec, len(ev.blocks))
    vars = spec.vars
    g = Poly.zero(vars, FIELD)
    h = Poly.zero(vars, FIELD)
    for k, phi in enumerate(phis):
        if phi.is_zero():
            continue
        nu = ev.nu(k)
        sub = substitute(phi, dict(zip(phi.vars, images[:nu])))
        g = g + mu_coefficient(sub, k).scale(factorial(k))
        if k >= 1:
            h = h + mu_coefficient(sub, k - 1).scale(factorial(k))
    f = h + g.scale(ev.lam)
    if check and not verify_gradient(build_matrices(spec).M, f, g):
        raise AssertionError("generated pair fails grad f = M grad g")
    return SolutionPair(f=f, g=g, h=h)


def block_mu_vector(spec: JordanSpecC, b: int) -> MuPoly:
    """``x^b_mu`` as a mu-vector of length ``n_b + 1`` over the Jordan spec variables."""
    return MuPoly(tuple(_block_polys(spec, b)))


def nested_power(I: Sequence[int], spec: JordanSpecC) -> MuPoly:
    """Star power ``(x_mu)^I`` built by successive embedding, innermost block first.

    ``(x^r_mu)^{i_r}`` is formed modulo ``mu^(n_r+1)``, shifted by
    ``mu^(n_{r-1}-n_r)``, star-multiplied with ``(x^{r-1}_mu)^{i_{r-1}}``
    modulo ``mu^(n_{r-1}+1)``, and so on out to block 1.
    """
    ev = spec.only()
    ns = ev.ns
    r = len(I)
    P = star_power(block_mu_vector(spec, r - 1), I[r - 1], Modulus.mu_power(ns[r - 1] + 1))
    for k in range(r - 2, -1, -1):
        Z = Modulus.mu_power(ns[k] + 1)
        P = P.shifted(ns[k] - ns[k + 1])
        P = star_product(star_power(block_mu_vector(spec, k), I[k], Z), P, Z)
    return P


def star_series_coefficients(spec: JordanSpecC, phis: Sequence[Poly]) -> Dict[Tuple[int, ...], MuPoly]:
    """Constant solutions ``(b_I)_mu = sum_{j=n_{r+1}+1}^{n_r} j! c_{I,j} mu^(n_r - j)``."""
    ev = spec.only()
    phis = _check_phis(ev, phis)
    ns = ev.ns + (-1,)
    length = ns[0] + 1
    table: Dict[Tuple[int, ...], List] = {}
    for r in range(1, len(ev.blocks) + 1):
        for j in range(ns[r] + 1, ns[r - 1] + 1):
            for exp, c in phis[j].terms.items():
                vals = table.setdefault(exp, [Fraction(0)] * length)
                vals[ns[r - 1] - j] = vals[ns[r - 1] - j] + c * factorial(j)
    return {I: MuPoly.constant(spec.vars, vals, FIELD) for I, vals in sorted(table.items())}


def reconstruct_star_series(spec: JordanSpecC, phis: Sequence[Poly]) -> MuPoly:
    """``sum_I (b_I)_mu * (x_mu)^I`` in the system modulo ``mu^(n_1 + 1)``."""
    ev = spec.only()
    Z = Modulus.mu_power(ev.blocks[0])
    out = MuPoly.zero(spec.vars, Z.m, FIELD)
    for I, b in star_series_coefficients(spec, phis).items():
        out = out + star_product(b, nested_power(I, spec), Z)
    return out


def decompose_by_eigenvalue(spec: JordanSpecC, f: Poly, g: Poly, check: bool = True) -> List[SolutionPair]:
    """Split a solution into per-eigenvalue components by monomial support.

    A solution cannot contain a monomial mixing variables of two distinct
    eigenvalues. For ``M = diag(a, b)``, ``a != b``, the equations
    ``f_x = a g_x`` and ``f_y = b g_y`` give ``(a - b) g_xy = 0`` after cross
    differentiation, so ``g`` (and then ``f``) separates. Such a monomial
    therefore signals corrupted input and is rejected.
    """
    vars = spec.vars
    if f.vars != vars or g.vars != vars:
        raise VariableMismatch("f and g must use the Jordan spec variables")
    f, g = f.as_field(FIELD), g.as_field(FIELD)
    owner = {}
    for k in range(len(spec.eigenvalues)):
        for v in spec.eigen_vars(k):
            owner[v] = k
    p = len(spec.eigenvalues)
    parts_f = [dict() for _ in range(p)]
    parts_g = [dict() for _ in range(p)]
    for src, parts in ((f, parts_f), (g, parts_g)):
        for exp, c in src.terms.items():
            ks = {owner[v] for v, e in zip(vars, exp) if e}
            if len(ks) > 1:
                raise StarmultError(f"monomial {exp} mixes variables of distinct eigenvalues")
            parts[ks.pop() if ks else 0][exp] = c
    out = []
    for k in range(p):
        pf = Poly._raw(vars, parts_f[k], FIELD)
        pg = Poly._raw(vars, parts_g[k], FIELD)
        if check:
            sub = spec.component(k)
            Mk = build_matrices(sub).M
            sv = sub.vars
            if not verify_gradient(Mk, pf.with_vars(sv), pg.with_vars(sv)):
                raise NotASolutionError(f"component {k + 1} does not solve its subsystem")
        out.append(SolutionPair(pf, pg, pf - pg.scale(spec.eigenvalues[k].lam)))
    return out
