"""Exact rational functions p/q over Q(i), kept in lowest terms with monic q."""

from __future__ import annotations

from .poly import DEFAULT_TOL, FactoredPoly, Poly, TolerancePolicy, fall_expr, gcd_classic, roots
from .poly import shift as poly_shift
from .scalar import GaussianRational, as_gr

__all__ = ["RationalFunction", "as_rational"]


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Poly) else Poly([num])
        den = Poly([1]) if den is None else (den if isinstance(den, Poly) else Poly([den]))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly([1])
        else:
            g = gcd_classic(num, den)
            if not g.is_constant():
                num = num.exact_div(g)
                den = den.exact_div(g)
            c = den.lead.reciprocal()
            num, den = num * c, den * c
        self.num = num
        self.den = den

    # structure -------------------------------------------------------------
    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    @property
    def degree(self) -> int:
        """max(deg p, deg q): the slope of T(r, f) in log r."""
        return max(self.num.degree, self.den.degree)

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        o = as_rational(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-as_rational(other))

    def __rsub__(self, other):
        return as_rational(other) + (-self)

    def __mul__(self, other):
        o = as_rational(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = as_rational(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return as_rational(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(self.den**-n, self.num**-n)
        return RationalFunction(self.num**n, self.den**n)

    def shift(self, c) -> "RationalFunction":
        return RationalFunction(poly_shift(self.num, c), poly_shift(self.den, c))

    def delta(self, n: int = 1) -> "RationalFunction":
        f = self
        for _ in range(n):
            f = f.shift(1) - f
        return f

    def fall(self, n: int) -> "RationalFunction":
        return RationalFunction(fall_expr(self.num, n), fall_expr(self.den, n))

    # evaluation ------------------------------------------------------------
    def __call__(self, x) -> GaussianRational:
        d = self.den(x)
        if d.is_zero():
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def eval_complex(self, z):
        return self.num.eval_complex(z) / self.den.eval_complex(z)

    def log_abs(self, z):
        return self.num.log_abs(z) - self.den.log_abs(z)

    def zeros(self, mode: str = "auto", tol: TolerancePolicy = DEFAULT_TOL) -> FactoredPoly:
        return roots(self.num, mode, tol)

    def poles(self, mode: str = "auto", tol: TolerancePolicy = DEFAULT_TOL) -> FactoredPoly:
        return roots(self.den, mode, tol)

    def minus(self, a) -> "RationalFunction":
        return self - as_gr(a)

    # comparison / display --------------------------------------------------
    def __eq__(self, other):
        try:
            o = as_rational(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        ns = str(self.num)
        if len(self.num.coeffs) > 1 or ns.startswith("("):
            ns = f"({ns})"
        return f"{ns}/({self.den})"


def as_rational(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Poly):
        return RationalFunction(x)
    return RationalFunction(Poly([as_gr(x)]))

