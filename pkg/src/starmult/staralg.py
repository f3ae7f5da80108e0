"""Star multiplication on mu-vectors modulo a monic constant-coefficient Z_mu.

A mu-vector ``V = (V_0, ..., V_{m-1})`` stands for ``V_0 + V_1 mu + ... +
V_{m-1} mu^{m-1}``. The star product is the remainder of the ordinary
product modulo ``Z_mu``; equivalently ``V_C W_C e_1`` with ``C`` the
companion matrix of ``Z_mu``.

The solution test uses gradients as columns: the coefficient of ``mu^j`` in
``(X + mu I) grad V_mu`` is ``X grad V_j + grad V_{j-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Sequence, Tuple

from . import linalg
from .errors import DimensionMismatch, VariableMismatch
from .poly import OneForm, Poly, gradient
from .scalar import Scalar, as_scalar


@dataclass(frozen=True)
class Modulus:
    """Monic ``Z_mu = z[0] + z[1] mu + ... + z[m-1] mu^{m-1} + mu^m``."""

    z: Tuple[Scalar, ...]

    def __post_init__(self):
        z = tuple(self.z)
        if not z:
            raise DimensionMismatch("modulus must have degree m >= 1")
        for c in z:
            if isinstance(c, Poly):
                raise ValueError("modulus coefficients must be constants")
        object.__setattr__(self, "z", tuple(as_scalar(c) for c in z))

    @property
    def m(self) -> int:
        return len(self.z)

    @classmethod
    def mu_power(cls, m: int) -> "Modulus":
        """``mu^m``."""
        return cls((Fraction(0),) * m)

    @classmethod
    def one_plus_mu2_power(cls, k: int) -> "Modulus":
        """``(1 + mu^2)^k``."""
        coeffs = [Fraction(0)] * (2 * k + 1)
        for i in range(k + 1):
            coeffs[2 * i] = Fraction(comb(k, i))
        return cls(tuple(coeffs[:-1]))

    @classmethod
    def from_coefficients(cls, coeffs: Sequence) -> "Modulus":
        """From the full coefficient list, constant term first; must be monic."""
        coeffs = [as_scalar(c) for c in coeffs]
        if len(coeffs) < 2 or coeffs[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 1")
        return cls(tuple(coeffs[:-1]))

    def full_coefficients(self) -> Tuple[Scalar, ...]:
        return self.z + (Fraction(1),)


@dataclass(frozen=True)
class MuPoly:
    """``V_0 + V_1 mu + ... + V_{m-1} mu^{m-1}`` with polynomial coefficients."""

    coeffs: Tuple[Poly, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if not coeffs:
            raise DimensionMismatch("a mu-vector needs at least one coefficient")
        v0 = coeffs[0]
        for c in coeffs[1:]:
            if c.vars != v0.vars or c.field != v0.field:
                raise VariableMismatch("mu-vector coefficients must share variables and field")

    @property
    def m(self) -> int:
        return len(self.coeffs)

    @property
    def vars(self):
        return self.coeffs[0].vars

    @property
    def field(self):
        return self.coeffs[0].field

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    @classmethod
    def zero(cls, vars, m, field="real"):
        z = Poly.zero(vars, field)
        return cls((z,) * m)

    @classmethod
    def constant(cls, vars, values: Sequence, field="real"):
        return cls(tuple(Poly.const(vars, v, field) for v in values))

    @classmethod
    def unit(cls, vars, m, field="real"):
        return cls.constant(vars, [1] + [0] * (m - 1), field)

    def __add__(self, other: "MuPoly") -> "MuPoly":
        _check_same_length(self, other)
        return MuPoly(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "MuPoly") -> "MuPoly":
        _check_same_length(self, other)
        return MuPoly(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return MuPoly(tuple(-a for a in self.coeffs))

    def scale(self, c) -> "MuPoly":
        return MuPoly(tuple(a.scale(c) for a in self.coeffs))

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def with_vars(self, vars) -> "MuPoly":
        return MuPoly(tuple(c.with_vars(vars) for c in self.coeffs))

    def as_field(self, field) -> "MuPoly":
        return MuPoly(tuple(c.as_field(field) for c in self.coeffs))

    def padded(self, m: int) -> "MuPoly":
        if m < self.m:
            raise DimensionMismatch(f"cannot pad length {self.m} down to {m}")
        z = Poly.zero(self.vars, self.field)
        return MuPoly(self.coeffs + (z,) * (m - self.m))

    def shifted(self, s: int) -> "MuPoly":
        """``mu^s V`` as a longer coefficient list (no reduction)."""
        z = Poly.zero(self.vars, self.field)
        return MuPoly((z,) * s + self.coeffs)

    def normalized(self) -> "MuPoly":
        """Subtract the value at the origin from every coefficient."""
        return MuPoly(tuple(c - c.constant_term() for c in self.coeffs))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coeffs) + ")"


def _check_same_length(V: MuPoly, W: MuPoly):
    if V.m != W.m:
        raise DimensionMismatch(f"mu-vectors of length {V.m} and {W.m}")


@dataclass(frozen=True)
class StarSystem:
    """``(X + mu I) grad V_mu == 0 (mod Z_mu)`` over the variables ``vars``."""

    X: linalg.Matrix
    modulus: Modulus
    vars: Tuple[str, ...]

    def __post_init__(self):
        X = linalg.matrix(self.X)
        vars = tuple(self.vars)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "vars", vars)
        n = len(vars)
        if len(X) != n or any(len(r) != n for r in X):
            raise DimensionMismatch(f"pencil base must be {n}x{n}")

    @property
    def m(self) -> int:
        return self.modulus.m


@dataclass(frozen=True)
class SolutionCheck:
    is_solution: bool
    quotient: Tuple[OneForm, ...]
    remainder: Tuple[OneForm, ...]

    def __bool__(self):
        return self.is_solution


def companion_matrix(Z: Modulus) -> linalg.Matrix:
    m = Z.m
    rows = []
    for i in range(m):
        row = [Fraction(0)] * m
        if i > 0:
            row[i - 1] = Fraction(1)
        row[m - 1] = -Z.z[i]
        rows.append(tuple(row))
    return tuple(rows)


def _infer(V: Sequence[Poly], vars, field):
    if V:
        return V[0].vars, V[0].field
    if vars is None:
        raise DimensionMismatch("cannot infer variables of an empty coefficient list")
    return tuple(vars), field


def reduce_mod(V: Sequence[Poly], Z: Modulus, vars=None, field="real") -> MuPoly:
    """Remainder of ``sum V_k mu^k`` on division by the monic ``Z_mu``."""
    vars, field = _infer(V, vars, field)
    work = list(V)
    m = Z.m
    for k in range(len(work) - 1, m - 1, -1):
        lead = work[k]
        if lead.is_zero():
            continue
        for i, zi in enumerate(Z.z):
            if zi != 0:
                work[k - m + i] = work[k - m + i] - lead.scale(zi)
        work[k] = Poly.zero(vars, field)
    work = work[:m]
    work += [Poly.zero(vars, field)] * (m - len(work))
    return MuPoly(tuple(work))


def mu_product(V: Sequence[Poly], W: Sequence[Poly]) -> List[Poly]:
    """Ordinary (unreduced) product of two coefficient lists."""
    vars, field = V[0].vars, V[0].field
    out = [Poly.zero(vars, field) for _ in range(len(V) + len(W) - 1)]
    for i, a in enumerate(V):
        if a.is_zero():
            continue
        for j, b in enumerate(W):
            if not b.is_zero():
                out[i + j] = out[i + j] + a * b
    return out


def _check_compatible(V: MuPoly, W: MuPoly, Z: Modulus):
    if V.m != Z.m or W.m != Z.m:
        raise DimensionMismatch(f"lengths {V.m}, {W.m} do not match modulus degree {Z.m}")
    if V.vars != W.vars:
        raise VariableMismatch("star factors use different variable lists")


def star_product(V: MuPoly, W: MuPoly, Z: Modulus) -> MuPoly:
    _check_compatible(V, W, Z)
    return reduce_mod(mu_product(V.coeffs, W.coeffs), Z)


def star_product_companion(V: MuPoly, W: MuPoly, Z: Modulus) -> MuPoly:
    """``V_C W_C e_1`` with ``V_C = sum_i V_i C^i``; independent of :func:`reduce_mod`."""
    _check_compatible(V, W, Z)
    m = Z.m
    C = companion_matrix(Z)
    powers = [linalg.identity(m)]
    for _ in range(1, m):
        powers.append(linalg.matmul(powers[-1], C))
    zero = Poly.zero(V.vars, V.field)

    def as_matrix(U: MuPoly):
        M = [[zero] * m for _ in range(m)]
        for i, Ui in enumerate(U.coeffs):
            if Ui.is_zero():
                continue
            P = powers[i]
            for a in range(m):
                for b in range(m):
                    if P[a][b] != 0:
                        M[a][b] = M[a][b] + Ui.scale(P[a][b])
        return M

    VC, WC = as_matrix(V), as_matrix(W)
    w = [WC[a][0] for a in range(m)]
    out = []
    for a in range(m):
        acc = zero
        for b in range(m):
            if not VC[a][b].is_zero() and not w[b].is_zero():
                acc = acc + VC[a][b] * w[b]
        out.append(acc)
    return MuPoly(tuple(out))


def star_power(V: MuPoly, k: int, Z: Modulus) -> MuPoly:
    if k < 0:
        raise ValueError("star powers need k >= 0")
    if V.m != Z.m:
        raise DimensionMismatch(f"length {V.m} does not match modulus degree {Z.m}")
    out = MuPoly.unit(V.vars, Z.m, V.field)
    base = V
    while k:
        if k & 1:
            out = star_product(out, base, Z)
        k >>= 1
        if k:
            base = star_product(base, base, Z)
    return out


def star_series(a: Sequence[MuPoly], base: MuPoly, Z: Modulus) -> MuPoly:
    """``sum_r a[r] * base^r`` (star products); ``a`` holds constant mu-vectors."""
    out = MuPoly.zero(base.vars, Z.m, base.field)
    power = MuPoly.unit(base.vars, Z.m, base.field)
    for r, ar in enumerate(a):
        if not ar.is_constant():
            raise ValueError(f"series coefficient {r} is not a constant mu-vector")
        if r:
            power = star_product(power, base, Z)
        if not ar.is_zero():
            out = out + star_product(ar.as_field(base.field), power, Z)
    return out


def check_solution(sys: StarSystem, V: MuPoly) -> SolutionCheck:
    """Decide ``(X + mu I) grad V_mu == 0 (mod Z_mu)`` and return the quotient ``u_mu``."""
    if V.m != sys.m:
        raise DimensionMismatch(f"mu-vector length {V.m} != modulus degree {sys.m}")
    if V.vars != sys.vars:
        raise VariableMismatch(f"mu-vector variables {V.vars} != system variables {sys.vars}")
    grads = [gradient(c) for c in V.coeffs]
    m = sys.m
    # coefficients of mu^0 .. mu^m of (X + mu I) grad V_mu
    prod = []
    for j in range(m + 1):
        term = grads[j].apply(sys.X) if j < m else None
        if j >= 1:
            term = grads[j - 1] if term is None else term + grads[j - 1]
        prod.append(term)
    quotient = _divide_forms(prod, sys.modulus)
    remainder = tuple(prod[:m])
    return SolutionCheck(all(r.is_zero() for r in remainder), quotient, remainder)


def _divide_forms(prod: List[OneForm], Z: Modulus) -> Tuple[OneForm, ...]:
    """Long division of a one-form-valued mu-polynomial by ``Z``; remainder left in ``prod``."""
    m = Z.m
    deg = len(prod) - 1
    q = [None] * max(deg - m + 1, 0)
    for k in range(deg, m - 1, -1):
        lead = prod[k]
        q[k - m] = lead
        for i, zi in enumerate(Z.z):
            if zi != 0:
                prod[k - m + i] = prod[k - m + i] - lead.scale(zi)
        prod[k] = lead - lead
    return tuple(q)


def trivial_modulus_solution(sys: StarSystem, field="real") -> MuPoly:
    """``Z_mu - mu^m`` as a constant mu-vector."""
    return MuPoly.constant(sys.vars, sys.modulus.z, field)

