"""Exact multivariate polynomials and polynomial one-forms.

A :class:`Poly` is a sparse map from exponent tuples to nonzero exact
scalars over an ordered variable list. Values are never mutated after
construction, so they can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .errors import FieldMismatch, NotClosedError, VariableMismatch
from .scalar import CQ, Scalar, as_scalar, conjugate as _conj, imag_part, real_part

Exp = Tuple[int, ...]

FIELDS = ("real", "complex")


class Poly:
    __slots__ = ("vars", "terms", "field")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exp, object] | None = None,
                 field: str = "real"):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise VariableMismatch(f"duplicate variable names in {vars}")
        if field not in FIELDS:
            raise ValueError(f"unknown field {field!r}")
        clean: Dict[Exp, Scalar] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(vars):
                raise VariableMismatch(f"exponent {exp} does not match {len(vars)} variables")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = as_scalar(c)
            if isinstance(c, CQ) and field == "real":
                raise FieldMismatch("complex coefficient in a real polynomial")
            if c != 0:
                clean[exp] = clean.get(exp, 0) + c
                if clean[exp] == 0:
                    del clean[exp]
        self.vars = vars
        self.terms = clean
        self.field = field

    @classmethod
    def _raw(cls, vars, terms, field):
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        p.field = field
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, vars, field="real"):
        return cls._raw(tuple(vars), {}, field)

    @classmethod
    def const(cls, vars, c, field="real"):
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c}, field)

    @classmethod
    def var(cls, vars, name, field="real"):
        vars = tuple(vars)
        if name not in vars:
            raise VariableMismatch(f"unknown variable {name!r}")
        exp = tuple(1 if v == name else 0 for v in vars)
        return cls._raw(vars, {exp: Fraction(1)}, field)

    @classmethod
    def monomial(cls, vars, exp, c=1, field="real"):
        return cls(vars, {tuple(exp): c}, field)

    # -- basic queries ------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, exp: Exp) -> Scalar:
        return self.terms.get(tuple(exp), Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __eq__(self, other):
        if isinstance(other, Poly):
            return (self.vars == other.vars and self.field == other.field
                    and self.terms == other.terms)
        if isinstance(other, (int, Fraction, CQ)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, self.field, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, exp) if e)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.vars != other.vars:
            raise VariableMismatch(f"variable lists differ: {self.vars} vs {other.vars}")
        if self.field != other.field:
            raise FieldMismatch(f"field modes differ: {self.field} vs {other.field}")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        c = as_scalar(other)
        if isinstance(c, CQ) and self.field == "real":
            raise FieldMismatch("complex scalar combined with a real polynomial")
        return Poly._raw(self.vars, {(0,) * self.nvars: c} if c != 0 else {}, self.field)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, 0) + c
            if s == 0:
                out.pop(exp, None)
            else:
                out[exp] = s
        return Poly._raw(self.vars, out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.vars, {e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Poly":
        c = as_scalar(c)
        if isinstance(c, CQ) and self.field == "real":
            raise FieldMismatch("complex scalar combined with a real polynomial")
        if c == 0:
            return Poly._raw(self.vars, {}, self.field)
        return Poly._raw(self.vars, {e: v * c for e, v in self.terms.items()}, self.field)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        if len(self.terms) > len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out: Dict[Exp, Scalar] = {}
        get = out.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return Poly._raw(self.vars, {e: c for e, c in out.items() if c != 0}, self.field)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        out = Poly.const(self.vars, 1, self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    # -- calculus and transforms -------------------------------------------

    def diff(self, name: str) -> "Poly":
        try:
            i = self.vars.index(name)
        except ValueError:
            raise VariableMismatch(f"unknown variable {name!r}") from None
        out = {}
        for exp, c in self.terms.items():
            k = exp[i]
            if k:
                out[exp[:i] + (k - 1,) + exp[i + 1:]] = c * k
        return Poly._raw(self.vars, out, self.field)

    def conjugate(self) -> "Poly":
        return Poly._raw(self.vars, {e: _conj(c) for e, c in self.terms.items()}, self.field)

    def real_part(self) -> "Poly":
        """Coefficientwise real part, returned as a real-mode polynomial."""
        return Poly(self.vars, {e: real_part(c) for e, c in self.terms.items()}, "real")

    def imag_part(self) -> "Poly":
        return Poly(self.vars, {e: imag_part(c) for e, c in self.terms.items()}, "real")

    def as_field(self, field: str) -> "Poly":
        if field == self.field:
            return self
        if field == "real" and any(isinstance(c, CQ) for c in self.terms.values()):
            raise FieldMismatch("polynomial has non-real coefficients")
        return Poly._raw(self.vars, dict(self.terms), field)

    def with_vars(self, vars: Sequence[str]) -> "Poly":
        """Re-express over another variable list containing every used variable."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        index = {v: i for i, v in enumerate(vars)}
        out = {}
        for exp, c in self.terms.items():
            new = [0] * len(vars)
            for v, e in zip(self.vars, exp):
                if e:
                    if v not in index:
                        raise VariableMismatch(f"variable {v!r} missing from {vars}")
                    new[index[v]] = e
            out[tuple(new)] = c
        return Poly._raw(vars, out, self.field)

    def used_vars(self) -> Tuple[str, ...]:
        used = [False] * self.nvars
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def substitute(self, assignment: Mapping[str, "Poly"]) -> "Poly":
        return substitute(self, assignment)

    def gradient(self) -> "OneForm":
        return gradient(self)


@dataclass(frozen=True)
class OneForm:
    """Polynomial one-form ``sum_i components[i] dx_i`` (equivalently a gradient column)."""

    components: Tuple[Poly, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if comps:
            vars = comps[0].vars
            for c in comps:
                if c.vars != vars:
                    raise VariableMismatch("one-form components use different variable lists")
            if len(comps) != len(vars):
                raise VariableMismatch(
                    f"one-form has {len(comps)} components over {len(vars)} variables")

    @property
    def vars(self):
        return self.components[0].vars

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other: "OneForm") -> "OneForm":
        return OneForm(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "OneForm") -> "OneForm":
        return OneForm(tuple(a - b for a, b in zip(self.components, other.components)))

    def scale(self, c) -> "OneForm":
        return OneForm(tuple(a.scale(c) for a in self.components))

    def apply(self, matrix) -> "OneForm":
        """Matrix-vector product ``matrix @ components`` with constant entries."""
        n = len(self.components)
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise VariableMismatch(f"matrix shape does not match one-form length {n}")
        out = []
        for row in matrix:
            acc = Poly.zero(self.vars, self.components[0].field)
            for a, comp in zip(row, self.components):
                if a != 0:
                    acc = acc + comp.scale(a)
            out.append(acc)
        return OneForm(tuple(out))


# -- module-level operations ------------------------------------------------


def poly_arith(p: Poly, q: Poly, op: str) -> Poly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(p: Poly, var: str) -> Poly:
    return p.diff(var)


def gradient(p: Poly) -> OneForm:
    if not p.vars:
        raise VariableMismatch("gradient of a polynomial with no variables")
    return OneForm(tuple(p.diff(v) for v in p.vars))


def conjugate(p: Poly) -> Poly:
    return p.conjugate()


def substitute(p: Poly, assignment: Mapping[str, Poly]) -> Poly:
    """Compose ``p`` with the polynomial images of its variables.

    Only variables that actually occur in ``p`` need an image; the images must
    share one variable list and field mode.
    """
    used = p.used_vars()
    missing = [v for v in used if v not in assignment]
    if missing:
        raise VariableMismatch(f"no image given for variables {missing}")
    images = [assignment[v] for v in p.vars if v in assignment]
    if not images:
        raise VariableMismatch("substitution needs at least one image to fix the target variables")
    target = images[0]
    for im in images[1:]:
        if im.vars != target.vars or im.field != target.field:
            raise VariableMismatch("substitution images use inconsistent variable lists or fields")
    field = "complex" if "complex" in (p.field, target.field) else "real"
    tvars = target.vars
    one = Poly.const(tvars, 1, field)
    # cache powers of each image
    powers: Dict[Tuple[int, int], Poly] = {}

    def power(i: int, k: int) -> Poly:
        key = (i, k)
        if key not in powers:
            base = assignment[p.vars[i]].as_field(field)
            powers[key] = one if k == 0 else (base if k == 1 else power(i, k - 1) * base)
        return powers[key]

    out = Poly.zero(tvars, field)
    for exp, c in p.terms.items():
        term = one
        for i, k in enumerate(exp):
            if k:
                term = term * power(i, k)
        out = out + term.scale(c)
    return out


def is_closed(omega: OneForm) -> bool:
    comps = omega.components
    vars = omega.vars if comps else ()
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            if comps[i].diff(vars[j]) != comps[j].diff(vars[i]):
                return False
    return True


def integrate_exact(omega: OneForm) -> Poly:
    """Potential ``P`` with ``gradient(P) == omega`` and ``P(0) == 0``.

    Uses the radial homotopy ``P(x) = sum_i int_0^1 omega_i(t x) x_i dt``,
    which on a monomial ``c x^a`` in slot ``i`` gives ``c/(|a|+1) x^(a+e_i)``.
    """
    if not is_closed(omega):
        raise NotClosedError("one-form is not closed; no potential exists")
    comps = omega.components
    if not comps:
        raise NotClosedError("empty one-form has no variable list")
    vars = omega.vars
    field = comps[0].field
    out: Dict[Exp, Scalar] = {}
    for i, comp in enumerate(comps):
        for exp, c in comp.terms.items():
            new = exp[:i] + (exp[i] + 1,) + exp[i + 1:]
            out[new] = out.get(new, 0) + c / (sum(exp) + 1)
    return Poly._raw(vars, {e: c for e, c in out.items() if c != 0}, field)


def variables(prefix: str, count: int) -> Tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(count))


def poly_from_terms(vars: Sequence[str], pairs: Iterable[Tuple[Exp, object]], field="real") -> Poly:
    acc: Dict[Exp, object] = {}
    for e, c in pairs:
        acc[tuple(e)] = acc.get(tuple(e), 0) + as_scalar(c)
    return Poly(vars, acc, field)
