"""Exact scalars: rationals (``Fraction``) and complex rationals (``CQ``).

A scalar with zero imaginary part is always stored as a plain ``Fraction``;
``CQ`` only appears when the imaginary part is nonzero. Structural equality
is therefore semantic equality.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union


class CQ:
    """Complex rational number ``re + i*im`` with ``im != 0``.

    Construct through :func:`cq`, which collapses real values to ``Fraction``.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __repr__(self):
        return f"CQ({self.re}, {self.im})"

    def __str__(self):
        sign = "+" if self.im >= 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"

    def __hash__(self):
        return hash((self.re, self.im))

    def __eq__(self, other):
        if isinstance(other, CQ):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return False  # a CQ always has im != 0
        return NotImplemented

    def __neg__(self):
        return CQ(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, CQ):
            return cq(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return CQ(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, CQ):
            return cq(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return CQ(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return CQ(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, CQ):
            return cq(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)
        if isinstance(other, (int, Fraction)):
            return cq(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CQ(self.re / other, self.im / other)
        if isinstance(other, CQ):
            return self * inverse(other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return inverse(self) * other
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return inverse(self) ** (-k)
        out = Fraction(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return CQ(self.re, -self.im)


Scalar = Union[Fraction, CQ]

I = CQ(0, 1)


def cq(re, im=0) -> Scalar:
    """Canonical scalar from real and imaginary parts."""
    im = Fraction(im)
    if im == 0:
        return Fraction(re)
    return CQ(re, im)


def as_scalar(x) -> Scalar:
    if isinstance(x, CQ):
        return x
    if isinstance(x, complex):
        raise TypeError("floating-point complex values are not exact")
    if isinstance(x, float):
        raise TypeError("floating-point values are not exact")
    if isinstance(x, (Rational, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def real_part(x: Scalar) -> Fraction:
    return x.re if isinstance(x, CQ) else x


def imag_part(x: Scalar) -> Fraction:
    return x.im if isinstance(x, CQ) else Fraction(0)


def conjugate(x: Scalar) -> Scalar:
    return x.conjugate() if isinstance(x, CQ) else x


def inverse(x: Scalar) -> Scalar:
    if isinstance(x, CQ):
        d = x.re * x.re + x.im * x.im
        return CQ(x.re / d, -x.im / d)
    if x == 0:
        raise ZeroDivisionError("inverse of zero")
    return 1 / Fraction(x)


def is_real(x: Scalar) -> bool:
    return not isinstance(x, CQ)


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def parse_rational(text) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ValueError(f"rational must be a string 'p/q' or an integer, got {text!r}")
    q = Fraction(text)
    if isinstance(text, str) and "/" in text:
        # reject non-canonical encodings such as "2/4" or "1/-3"
        p_s, q_s = text.split("/")
        if int(q_s) <= 0 or Fraction(int(p_s), int(q_s)) != q or int(q_s) != q.denominator:
            raise ValueError(f"non-canonical rational {text!r}")
    return q


def scalar_to_json(x: Scalar) -> dict:
    return {"re": format_rational(real_part(x)), "im": format_rational(imag_part(x))}


def scalar_from_json(obj) -> Scalar:
    """Accept ``{"re": "p/q", "im": "p/q"}`` or a bare rational string."""
    if isinstance(obj, dict):
        try:
            return cq(parse_rational(obj["re"]), parse_rational(obj.get("im", "0")))
        except KeyError as exc:
            raise ValueError(f"scalar record missing field {exc}") from None
    return parse_rational(obj)
