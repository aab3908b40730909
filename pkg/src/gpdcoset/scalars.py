"""Exact Gaussian rationals, the scalar field for representations.

Real scalars are kept as :class:`fractions.Fraction` (or plain ``int``) and
promote to :class:`GaussianRational` only when an imaginary part appears,
so the 0/1 matrices of permutation representations stay cheap.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

Scalar = Union[int, Fraction, "GaussianRational"]


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational | int = 0, im: Rational | int = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(x) -> GaussianRational | None:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        num = self * o.conjugate()
        return GaussianRational(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base, out = (self if n >= 0 else 1 / self), GaussianRational(1)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_scalar(self)


def simplify(x: Scalar) -> Scalar:
    """Drop a zero imaginary part, returning a Fraction when possible."""
    if isinstance(x, GaussianRational):
        return x.re if x.im == 0 else x
    return Fraction(x)


def conj(x: Scalar) -> Scalar:
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return x


def as_gaussian(x: Scalar) -> GaussianRational:
    return x if isinstance(x, GaussianRational) else GaussianRational(x)


def parse_scalar(token: str) -> Scalar:
    """Parse ``a/b``, ``a/b+c/d*i``, ``-c/d*i`` or ``i`` style tokens."""
    t = token.strip()
    try:
        if not t.endswith("i"):
            return Fraction(t)
        body = t[:-1]
        if body.endswith("*"):
            body = body[:-1]
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut > 0:
            real, imag = body[:cut], body[cut:]
        else:
            real, imag = "0", body
        if imag in ("", "+", "-"):
            imag += "1"
        value = GaussianRational(Fraction(real), Fraction(imag))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad scalar token {token!r}") from None
    return simplify(value)


def format_scalar(x: Scalar) -> str:
    """Exact textual form: ``3``, ``-3/2``, ``1/2+3/4*i``, ``0-1*i``."""
    if isinstance(x, GaussianRational):
        if x.im == 0:
            return str(x.re)
        sign = "+" if x.im > 0 else "-"
        return f"{x.re}{sign}{abs(x.im)}*i"
    return str(Fraction(x))
