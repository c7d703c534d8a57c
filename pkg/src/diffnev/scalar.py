"""Exact Gaussian-rational scalars.

A :class:`GaussianRational` is stored as ``(a + b*i) / d`` with integers
``a``, ``b`` and a positive common denominator ``d`` such that
``gcd(a, b, d) == 1``.  The real and imaginary parts are exposed as
:class:`fractions.Fraction` objects.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from numbers import Rational

__all__ = ["GaussianRational", "GR", "ZERO", "ONE", "I", "as_gr", "parse_scalar", "format_scalar"]


class GaussianRational:
    __slots__ = ("_a", "_b", "_d", "_hash")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self._set(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    def _set(self, a: int, b: int, d: int) -> None:
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(gcd(a, b), d)
        if g > 1:
            a //= g
            b //= g
            d //= g
        self._a = a
        self._b = b
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussianRational":
        obj = cls.__new__(cls)
        obj._set(a, b, d)
        return obj

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    @property
    def parts(self) -> tuple[int, int, int]:
        """Integer triple ``(a, b, d)`` with value ``(a + b i) / d``."""
        return self._a, self._b, self._d

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = as_gr(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        if self._d == o._d:
            return GaussianRational._raw(self._a + o._a, self._b + o._b, self._d)
        return GaussianRational._raw(
            self._a * o._d + o._a * self._d, self._b * o._d + o._b * self._d, self._d * o._d
        )

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = as_gr(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = as_gr(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = as_gr(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        a, b, d = self._a, self._b, self._d
        c, e, f = o._a, o._b, o._d
        return GaussianRational._raw(a * c - b * e, a * e + b * c, d * f)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = as_gr(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = as_gr(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        return o * self.reciprocal()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.reciprocal() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def reciprocal(self) -> "GaussianRational":
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        if n == 0:
            raise ZeroDivisionError("reciprocal of zero")
        # d / (a + b i) = d (a - b i) / (a^2 + b^2)
        return GaussianRational._raw(d * a, -d * b, n)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        """Squared modulus, exactly."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def __abs__(self) -> float:
        return abs(complex(self))

    # predicates and conversions -------------------------------------------
    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_real(self) -> bool:
        return self._b == 0

    def is_gaussian_integer(self) -> bool:
        return self._d == 1

    def __complex__(self) -> complex:
        return complex(self._a / self._d, self._b / self._d)

    def __eq__(self, other):
        o = as_gr(other, strict=False)
        if o is NotImplemented:
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __hash__(self):
        if self._hash is None:
            if self._b == 0:
                self._hash = hash(Fraction(self._a, self._d))
            else:
                self._hash = hash((self._a, self._b, self._d))
        return self._hash

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.im)

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        return format_scalar(self)


GR = GaussianRational
ZERO = GaussianRational._raw(0, 0, 1)
ONE = GaussianRational._raw(1, 0, 1)
I = GaussianRational._raw(0, 1, 1)


def as_gr(x, strict: bool = True):
    """Coerce ``x`` to a :class:`GaussianRational`.

    Floats are converted through their exact binary value; complex numbers
    likewise per component.  With ``strict=False`` unsupported types yield
    ``NotImplemented`` instead of raising.
    """
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        return GaussianRational._raw(x, 0, 1)
    if isinstance(x, Rational):
        return GaussianRational._raw(int(x.numerator), 0, int(x.denominator))
    if isinstance(x, float):
        return GaussianRational(Fraction(x))
    if isinstance(x, complex):
        return GaussianRational(Fraction(x.real), Fraction(x.imag))
    if isinstance(x, str):
        return parse_scalar(x)
    if strict:
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")
    return NotImplemented


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x: GaussianRational) -> str:
    re_, im_ = x.re, x.im
    if im_ == 0:
        return _fmt_frac(re_)
    if im_ == 1:
        ims = "i"
    elif im_ == -1:
        ims = "-i"
    else:
        ims = f"{_fmt_frac(im_)}*i"
    if re_ == 0:
        return ims
    if ims.startswith("-"):
        return f"{_fmt_frac(re_)}{ims}"
    return f"{_fmt_frac(re_)}+{ims}"


def _parse_rat(s: str) -> Fraction:
    if not s or not re.fullmatch(r"[+-]?(\d+(\.\d*)?|\.\d+)(/\d+)?", s):
        raise ValueError(f"not a rational: {s!r}")
    if "/" in s:
        n, d = s.split("/")
        return Fraction(n) / int(d)
    return Fraction(s)  # exact for decimal strings


def _signed_unit(s: str) -> Fraction:
    if s in ("", "+"):
        return Fraction(1)
    if s == "-":
        return Fraction(-1)
    return _parse_rat(s)


def parse_scalar(text: str) -> GaussianRational:
    """Parse forms like ``"3"``, ``"-1/2"``, ``"0.25"``, ``"1+2i"``, ``"-i"``, ``"1/2-3/4*i"``."""
    s = text.replace(" ", "").replace("*", "")
    if not s:
        raise ValueError("empty scalar")
    if not s.endswith("i"):
        return GaussianRational(_parse_rat(s))
    body = s[:-1]
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut <= 0:
        return GaussianRational(0, _signed_unit(body))
    return GaussianRational(_parse_rat(body[:cut]), _signed_unit(body[cut:]))
