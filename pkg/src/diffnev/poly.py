"""Dense exact polynomials over Q(i) and the difference calculus on them.

Coefficient lists are stored lowest degree first.  All objects are
immutable; every function here is pure.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial, gcd, lcm
from typing import Iterable, Sequence, Union

import numpy as np

from . import _gaussint as gi
from .scalar import ONE, ZERO, GaussianRational, as_gr

__all__ = [
    "Poly",
    "FactoredPoly",
    "TolerancePolicy",
    "ExactFactorizationIncomplete",
    "NonConvergence",
    "Root",
    "arith",
    "shift",
    "delta",
    "fall_expr",
    "falling_monomial",
    "to_newton_basis",
    "from_newton_basis",
    "stirling2",
    "stirling1",
    "roots",
    "gcd_classic",
    "square_free",
    "Z",
]

#: A root is exact (``GaussianRational``) or an approximation (``complex``).
Root = Union[GaussianRational, complex]


class ExactFactorizationIncomplete(ArithmeticError):
    """Exact root extraction left a nonlinear factor without roots in Q(i)."""

    def __init__(self, remainder: "Poly", found: "FactoredPoly | None" = None):
        super().__init__(f"no Gaussian-rational root for factor {remainder}")
        self.remainder = remainder
        self.found = found


class NonConvergence(ArithmeticError):
    pass


@dataclass(frozen=True)
class TolerancePolicy:
    unit_gap_eps: float = 1e-9
    root_eps: float = 1e-8
    quadrature_nodes: int = 4096

    def __post_init__(self):
        if not 0 <= self.unit_gap_eps < 0.5:
            raise ValueError("unit_gap_eps must lie in [0, 0.5)")
        if self.root_eps < 0:
            raise ValueError("root_eps must be nonnegative")
        if self.quadrature_nodes < 1:
            raise ValueError("quadrature_nodes must be positive")


DEFAULT_TOL = TolerancePolicy()


class Poly:
    __slots__ = ("coeffs", "_cplx")

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_gr(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs: tuple[GaussianRational, ...] = tuple(cs)
        self._cplx = None

    # constructors ----------------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c=1) -> "Poly":
        return cls([0] * n + [c])

    @classmethod
    def from_roots(cls, rts: Iterable, lead=1) -> "Poly":
        out = cls([lead])
        for r in rts:
            out = out * cls([-as_gr(r), 1])
        return out

    # basic properties ------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, k: int) -> GaussianRational:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def lowest_term(self) -> tuple[int, GaussianRational]:
        """``(lambda, c_lambda)``: order of vanishing at 0 and the first nonzero coefficient."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k, c
        raise ValueError("zero polynomial has no lowest term")

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.lead.reciprocal()
        return Poly([c * inv for c in self.coeffs])

    # arithmetic ------------------------------------------------------------
    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        try:
            return Poly([as_gr(other)])
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly([self.coeff(k) + o.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return Poly()
        if len(o.coeffs) == 1:
            c = o.coeffs[0]
            return Poly([a * c for a in self.coeffs])
        if len(self.coeffs) == 1:
            c = self.coeffs[0]
            return Poly([c * b for b in o.coeffs])
        out = [ZERO] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Poly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = o.degree
        inv = o.lead.reciprocal()
        quot = [ZERO] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c.is_zero():
                continue
            q = c * inv
            quot[k - dq] = q
            for j, b in enumerate(o.coeffs):
                rem[k - dq + j] = rem[k - dq + j] - q * b
        return Poly(quot), Poly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def derivative(self) -> "Poly":
        return Poly([c * k for k, c in enumerate(self.coeffs)][1:])

    # evaluation ------------------------------------------------------------
    def __call__(self, x):
        """Exact Horner evaluation at a Gaussian rational (or number)."""
        x = as_gr(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def complex_coeffs(self) -> np.ndarray:
        """Coefficients as complex128, highest degree first (numpy convention)."""
        if self._cplx is None:
            self._cplx = np.array([complex(c) for c in reversed(self.coeffs)], dtype=complex)
        return self._cplx

    def eval_complex(self, z):
        if self.is_zero():
            return np.zeros_like(np.asarray(z, dtype=complex))
        return np.polyval(self.complex_coeffs(), z)

    def log_abs(self, z):
        """log|p(z)| evaluated in floating point."""
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self.eval_complex(z)))

    # comparison / display --------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)


Z = Poly([0, 1])


def _paren_scalar(c: GaussianRational) -> str:
    s = str(c)
    return f"({s})" if c.re and c.im else s


def format_poly(p: Poly, var: str = "z") -> str:
    """Render ``p`` in the CLI expression grammar, highest degree first."""
    if p.is_zero():
        return "0"
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c.is_zero():
            continue
        mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        neg = c.re < 0 if c.re else c.im < 0
        neg = neg and c.im <= 0
        mag = -c if neg else c
        if not mon:
            body = _paren_scalar(mag)
        elif mag == ONE:
            body = mon
        else:
            body = f"{_paren_scalar(mag)}*{mon}"
        terms.append(("-" if neg else "+", body))
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def arith(op: str, p: Poly, q) -> Poly:
    """Exact ``add``, ``sub``, ``mul`` or ``scale`` (q a scalar)."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p * as_gr(q)
    raise ValueError(f"unknown op {op!r}")


def shift(p: Poly, c) -> Poly:
    """p(z + c) by Horner's scheme in z + c."""
    c = as_gr(c)
    if c.is_zero() or p.is_constant():
        return p
    lin = Poly([c, 1])
    acc = Poly()
    for a in reversed(p.coeffs):
        acc = acc * lin + a
    return acc


def delta(p: Poly, n: int = 1) -> Poly:
    """n-th forward difference, p(z+1) - p(z) iterated."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    for _ in range(n):
        if p.is_zero():
            break
        p = shift(p, 1) - p
    return p


def fall_expr(p: Poly, n: int) -> Poly:
    """p(z) p(z-1) ... p(z-n+1)."""
    if n < 1:
        raise ValueError("n must be positive")
    out = p
    for k in range(1, n):
        out = out * shift(p, -k)
    return out


def falling_monomial(a, n: int) -> Poly:
    """(z - a)^{n, falling} = (z-a)(z-a-1)...(z-a-n+1); n = 0 gives 1."""
    a = as_gr(a)
    out = Poly([1])
    for k in range(n):
        out = out * Poly([-(a + k), 1])
    return out


@lru_cache(maxsize=None)
def _stirling2_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling2_row(n - 1)
    row = [0] * (n + 1)
    for k in range(1, n + 1):
        row[k] = k * (prev[k] if k < len(prev) else 0) + prev[k - 1]
    return tuple(row)


@lru_cache(maxsize=None)
def _stirling1_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling1_row(n - 1)
    row = [0] * (n + 1)
    for k in range(1, n + 1):
        row[k] = prev[k - 1] - (n - 1) * (prev[k] if k < len(prev) else 0)
    return tuple(row)


def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind: z^n = sum_k S(n,k) z^{k, falling}."""
    return _stirling2_row(n)[k] if 0 <= k <= n else 0


def stirling1(n: int, k: int) -> int:
    """Signed Stirling numbers of the first kind: z^{n, falling} = sum_k s(n,k) z^k."""
    return _stirling1_row(n)[k] if 0 <= k <= n else 0


def to_newton_basis(p: Poly) -> list[GaussianRational]:
    """Coefficients b_k with p = sum_k b_k z^{k, falling}."""
    out = [ZERO] * len(p.coeffs)
    for n, c in enumerate(p.coeffs):
        if c.is_zero():
            continue
        for k, s in enumerate(_stirling2_row(n)):
            if s:
                out[k] = out[k] + c * s
    while out and out[-1].is_zero():
        out.pop()
    return out


def from_newton_basis(b: Sequence) -> Poly:
    out = [ZERO] * len(b)
    for n, c in enumerate(b):
        c = as_gr(c)
        if c.is_zero():
            continue
        for k, s in enumerate(_stirling1_row(n)):
            if s:
                out[k] = out[k] + c * s
    return Poly(out)


def gcd_classic(p: Poly, q: Poly) -> Poly:
    """Monic Euclidean gcd over Q(i)."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials")
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def square_free(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: ``[(g_k, k), ...]`` with p = lead * prod g_k^k, g_k monic square-free."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.is_constant():
        return []
    a = p.monic()
    d = a.derivative()
    b = gcd_classic(a, d)
    c = a.exact_div(b)
    e = d.exact_div(b) - c.derivative()
    out = []
    k = 1
    while not c.is_constant():
        g = gcd_classic(c, e)
        if not g.is_constant():
            out.append((g, k))
        c = c.exact_div(g)
        e = e.exact_div(g) - c.derivative()
        k += 1
    return out


# ---------------------------------------------------------------------------
# factored form and roots
# ---------------------------------------------------------------------------


def _root_key(r: Root):
    if isinstance(r, GaussianRational):
        return (0, float(r.re), float(r.im), r.re, r.im)
    return (1, r.real, r.imag, 0, 0)


@dataclass(frozen=True)
class FactoredPoly:
    """``lead * prod (z - root)^mult``.

    ``roots`` is a tuple of ``(root, multiplicity)`` pairs in canonical
    order.  Approximate roots are Python ``complex`` values, in which case
    ``exact`` is False.
    """

    lead: GaussianRational
    roots: tuple[tuple[Root, int], ...] = ()
    exact: bool = field(default=True)

    def __post_init__(self):
        lead = as_gr(self.lead)
        if lead.is_zero():
            raise ValueError("leading coefficient must be nonzero")
        merged: dict = {}
        approx = False
        for r, m in self.roots:
            if m <= 0:
                raise ValueError("multiplicities must be positive")
            if not isinstance(r, GaussianRational):
                if isinstance(r, complex) or isinstance(r, float):
                    r = complex(r)
                    approx = True
                else:
                    r = as_gr(r)
            merged[r] = merged.get(r, 0) + m
        object.__setattr__(self, "lead", lead)
        object.__setattr__(self, "roots", tuple(sorted(merged.items(), key=lambda t: _root_key(t[0]))))
        object.__setattr__(self, "exact", self.exact and not approx)

    @classmethod
    def from_multiset(cls, rts: Iterable, lead=1) -> "FactoredPoly":
        return cls(as_gr(lead), tuple(Counter(as_gr(r) for r in rts).items()))

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.roots)

    def multiset(self) -> list[Root]:
        return [r for r, m in self.roots for _ in range(m)]

    def expand(self) -> Poly:
        """Exact expansion; only available when every root is exact."""
        if not self.exact:
            raise ValueError("cannot expand exactly: approximate roots present")
        return Poly.from_roots(self.multiset(), self.lead)

    def complex_poly(self) -> np.ndarray:
        """Floating expansion (numpy high-first coefficients), valid for any roots."""
        return complex(self.lead) * np.poly(np.array([complex(r) for r in self.multiset()], dtype=complex))

    def __mul__(self, other: "FactoredPoly") -> "FactoredPoly":
        return FactoredPoly(self.lead * other.lead, self.roots + other.roots, self.exact and other.exact)


def _gaussian_integer_poly(p: Poly) -> tuple[list[tuple[int, int]], int]:
    """Clear denominators: returns integer (re, im) coefficient pairs, lowest first."""
    den = 1
    for c in p.coeffs:
        den = lcm(den, c.parts[2])
    out = []
    for c in p.coeffs:
        a, b, d = c.parts
        out.append((a * (den // d), b * (den // d)))
    return out, den


def _aberth(p: Poly, maxiter: int = 2000, tol: float = 1e-15) -> np.ndarray:
    """Simultaneous root iteration (Aberth-Ehrlich) on the complexified polynomial."""
    n = p.degree
    c = p.complex_coeffs()
    c = c / c[0]
    if n == 1:
        return np.array([-c[1]])
    dc = np.polyder(c)
    radius = 1.0 + np.max(np.abs(c[1:])) if n else 1.0
    # Fujiwara-style bound tightened toward the geometric mean of root moduli
    scale = min(radius, 2.0 * np.max(np.abs(c[1:]) ** (1.0 / np.arange(1, n + 1))))
    if scale <= 0:
        scale = 1.0
    k = np.arange(n)
    zs = scale * np.exp(1j * (2 * np.pi * k / n + 0.4))
    for _ in range(maxiter):
        pv = np.polyval(c, zs)
        dv = np.polyval(dc, zs)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pv / dv
            diff = zs[:, None] - zs[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            s = inv.sum(axis=1)
            w = ratio / (1.0 - ratio * s)
        bad = ~np.isfinite(w)
        if bad.any():
            w[bad] = 1e-3 * (1 + np.abs(zs[bad]))
        zs = zs - w
        if np.all(np.abs(w) <= tol * (1.0 + np.abs(zs))):
            break
    else:
        pv = np.abs(np.polyval(c, zs))
        bound = 1e-8 * np.polyval(np.abs(c), np.abs(zs))
        if np.any(pv > bound):
            raise NonConvergence(f"root iteration did not converge for degree {n}")
    # Newton polish on the un-normalised coefficients
    for _ in range(3):
        pv = np.polyval(c, zs)
        dv = np.polyval(dc, zs)
        ok = dv != 0
        zs[ok] = zs[ok] - pv[ok] / dv[ok]
    return zs


def _numeric_roots(p: Poly, tol: TolerancePolicy) -> list[tuple[complex, int]]:
    out: list[tuple[complex, int]] = []
    for g, k in square_free(p):
        for z in _aberth(g):
            out.append((complex(z), k))
    return _cluster(out, tol.root_eps)


def _cluster(pairs: list[tuple[complex, int]], eps: float) -> list[tuple[complex, int]]:
    groups: list[list] = []
    for z, m in pairs:
        for g in groups:
            if abs(g[0] - z) <= eps:
                g[0] = (g[0] * g[1] + z * m) / (g[1] + m)
                g[1] += m
                break
        else:
            groups.append([z, m])
    return [(complex(z), m) for z, m in groups]


def _candidate_from_approx(z: complex, lead_gi: tuple[int, int]) -> GaussianRational:
    w = complex(*lead_gi) * z
    num = GaussianRational(round(w.real), round(w.imag))
    return num / GaussianRational(*lead_gi)


def _exact_roots_squarefree(g: Poly) -> tuple[list[GaussianRational], Poly]:
    """Gaussian-rational roots of a monic square-free g, plus the leftover cofactor."""
    found: list[GaussianRational] = []
    rest = g
    if rest.degree <= 0:
        return found, rest
    if rest.degree == 1:
        return [-rest.coeffs[0] / rest.coeffs[1]], Poly([1])
    ints, _ = _gaussian_integer_poly(rest)
    lead_gi = ints[-1]
    # fast path: round simultaneous-iteration approximations onto the lattice (lead * root is in Z[i])
    try:
        approx = _aberth(rest)
    except NonConvergence:
        approx = []
    for z in approx:
        cand = _candidate_from_approx(complex(z), lead_gi)
        if rest.degree >= 1 and rest(cand).is_zero():
            found.append(cand)
            rest = rest.exact_div(Poly([-cand, 1]))
    if rest.degree == 1:
        found.append(-rest.coeffs[0] / rest.coeffs[1])
        return found, Poly([1])
    if rest.degree <= 0:
        return found, rest
    # fallback: rational-root theorem over Z[i] (root = unit * d0 / dL)
    ints, _ = _gaussian_integer_poly(rest)
    d0 = gi.divisors(ints[0])
    dl = gi.divisors(ints[-1])
    if d0 is None or dl is None:
        return found, rest
    tried = set()
    for a in d0:
        for b in dl:
            for u in gi.UNITS:
                cand = GaussianRational(*gi.mul(u, a)) / GaussianRational(*b)
                if cand in tried:
                    continue
                tried.add(cand)
                if rest.degree >= 1 and rest(cand).is_zero():
                    found.append(cand)
                    rest = rest.exact_div(Poly([-cand, 1]))
                    if rest.degree == 1:
                        found.append(-rest.coeffs[0] / rest.coeffs[1])
                        return found, Poly([1])
    return found, rest


def _div_linear_int(c: list[tuple[int, int]], w: tuple[int, int, int]) -> list[tuple[int, int]] | None:
    """Divide the Gaussian-integer polynomial ``c`` (low degree first) by ``z - w``.

    ``w = (a + b i) / d``.  Returns a primitive integer quotient, or ``None``
    if ``w`` is not a root.  Works on scaled Horner values so nothing leaves Z[i].
    """
    a, b, d = w
    n = len(c) - 1
    ar, ai = 0, 0
    scaled = []
    dp = 1
    for k in range(n, -1, -1):
        cr, ci = c[k]
        ar, ai = ar * a - ai * b + cr * dp, ar * b + ai * a + ci * dp
        scaled.append((ar, ai))
        dp *= d
    if scaled.pop() != (0, 0):
        return None
    # scaled[j] = acc_{n-j} * d^j, and acc_{n-j} is the coefficient of z^(n-j-1)
    out = [(0, 0)] * n
    for j, (xr, xi) in enumerate(scaled):
        f = d ** (n - 1 - j)
        out[n - 1 - j] = (xr * f, xi * f)
    g = 0
    for xr, xi in out:
        g = gcd(g, gcd(xr, xi))
    if g > 1:
        out = [(xr // g, xi // g) for xr, xi in out]
    return out


def _quick_split(p: Poly) -> Counter | None:
    """Try to split p completely over Q(i) by rounding floating roots onto the lattice.

    Every candidate is confirmed by exact division, so a result is always
    correct; ``None`` means the quick route did not finish.
    """
    k = next(i for i, c in enumerate(p.coeffs) if not c.is_zero())
    found: Counter = Counter({GaussianRational(0): k} if k else {})
    rest = Poly(p.coeffs[k:])
    if rest.degree <= 0:
        return found
    ints, _ = _gaussian_integer_poly(rest)
    lead_gi = ints[-1]
    with np.errstate(all="ignore"):
        approx = np.roots(rest.complex_coeffs())
    if not np.all(np.isfinite(approx)):
        return None
    cur = [tuple(x) for x in ints]
    for z in approx:
        if len(cur) <= 1:
            break
        cand = _candidate_from_approx(complex(z), lead_gi)
        parts = cand.parts
        while len(cur) > 1:
            q = _div_linear_int(cur, parts)
            if q is None:
                break
            found[cand] += 1
            cur = q
    return found if len(cur) <= 1 else None


def roots(p: Poly, mode: str = "exact", tol: TolerancePolicy = DEFAULT_TOL) -> FactoredPoly:
    """Factor ``p`` into ``lead * prod (z - root)^mult``.

    ``mode="exact"`` finds every root in Q(i) and raises
    :class:`ExactFactorizationIncomplete` if a nonlinear factor remains.
    ``mode="numeric"`` returns clustered floating roots.  ``mode="auto"``
    extracts exact roots first and finishes the remainder numerically.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no factorization")
    if mode not in ("exact", "numeric", "auto"):
        raise ValueError(f"unknown mode {mode!r}")
    lead = p.lead
    if p.is_constant():
        return FactoredPoly(lead, ())
    if mode == "numeric":
        return FactoredPoly(lead, tuple(_numeric_roots(p, tol)), exact=False)
    quick = _quick_split(p)
    if quick is not None:
        return FactoredPoly(lead, tuple(quick.items()))
    exact_roots: list[tuple[GaussianRational, int]] = []
    leftovers: list[tuple[Poly, int]] = []
    for g, k in square_free(p):
        found, rest = _exact_roots_squarefree(g)
        exact_roots.extend((r, k) for r in found)
        if rest.degree >= 1:
            leftovers.append((rest, k))
    if not leftovers:
        return FactoredPoly(lead, tuple(exact_roots))
    if mode == "exact":
        rem = Poly([1])
        for g, k in leftovers:
            rem = rem * g**k
        raise ExactFactorizationIncomplete(rem, FactoredPoly(lead, tuple(exact_roots)))
    approx: list[tuple[complex, int]] = []
    for g, k in leftovers:
        approx.extend((complex(z), k) for z in _aberth(g))
    return FactoredPoly(lead, tuple(exact_roots) + tuple(_cluster(approx, tol.root_eps)), exact=False)
