"""Counting functions n, N, n-bar-Delta, N-bar-Delta and their relatives.

Every curve here is a right-continuous step function of the radius built
from exact jump events.  Jumps are keyed by the squared radius (a Fraction
for exact points), so the closed-disc convention is respected exactly.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .divisor import (
    Disc,
    DivisorSource,
    FiniteDivisor,
    _add,
    _step,
    closed_form_count,
    divisor_of,
    value_source,
)
from .poly import DEFAULT_TOL, Poly, TolerancePolicy, delta, gcd_classic, roots
from .rational import RationalFunction, as_rational
from .scalar import GaussianRational

__all__ = [
    "CountingCurve",
    "IntegratedCurve",
    "n_classical",
    "n_bar_delta",
    "n_tilde_iklt",
    "classical_curve",
    "delta_curve",
    "integrate",
    "N_classical",
    "N_bar_delta",
    "common_zero_count",
    "common_zero_curve",
    "n_pair",
    "common_residual",
    "theta_delta",
    "ThetaDelta",
    "ad_check",
    "ADCheck",
    "geometric_grid",
    "curve_rows",
    "CSV_HEADER",
]

CSV_HEADER = ("r", "n", "N", "nBarDelta", "NBarDelta")


def _norm2(w) -> Fraction:
    if isinstance(w, GaussianRational):
        return w.norm()
    w = complex(w)
    return Fraction(w.real * w.real + w.imag * w.imag)


def _log_r2(r2: Fraction) -> float:
    """log of sqrt(r2), computed from the exact numerator and denominator."""
    return 0.5 * (math.log(r2.numerator) - math.log(r2.denominator))


@dataclass(frozen=True)
class CountingCurve:
    """Step function r -> n(r) given by jumps at squared radii.

    ``jumps`` is sorted by squared radius with merged duplicates; a jump at
    ``r2`` is active for every r with r*r >= r2.  ``r_max`` bounds the range
    on which the curve is known to be complete.
    """

    jumps: tuple[tuple[Fraction, int], ...]
    r_max: float = math.inf

    @classmethod
    def from_events(cls, events: Iterable[tuple[Fraction, int]], r_max: float = math.inf) -> "CountingCurve":
        acc: dict[Fraction, int] = {}
        for r2, d in events:
            acc[r2] = acc.get(r2, 0) + d
        return cls(tuple(sorted((k, v) for k, v in acc.items() if v)), r_max)

    def _check(self, r) -> None:
        if r > self.r_max * (1 + 1e-12):
            raise ValueError(f"curve only known up to r={self.r_max}")

    def __call__(self, r) -> int:
        self._check(r)
        r2 = Fraction(r) ** 2
        return sum(d for k, d in self.jumps if k <= r2)

    @property
    def at_origin(self) -> int:
        return sum(d for k, d in self.jumps if k == 0)

    @property
    def breakpoints(self) -> list[float]:
        return [math.sqrt(k) for k, _ in self.jumps]

    @property
    def values(self) -> list[int]:
        """Value on [breakpoint_k, breakpoint_{k+1})."""
        out, acc = [], 0
        for _, d in self.jumps:
            acc += d
            out.append(acc)
        return out

    @property
    def eventual(self) -> int:
        """Value beyond the last breakpoint (the asymptotic slope of the integral)."""
        return sum(d for _, d in self.jumps)

    def is_monotone(self) -> bool:
        return all(d > 0 for _, d in self.jumps)


@dataclass(frozen=True)
class IntegratedCurve:
    """N(r) = n(0) log r + sum over jumps 0 < rho_k <= r of d_k log(r / rho_k)."""

    curve: CountingCurve

    def __call__(self, r) -> float:
        self.curve._check(r)
        if r <= 0:
            raise ValueError("r must be positive")
        log_r = math.log(r)
        r2 = Fraction(r) ** 2
        terms = []
        for k, d in self.curve.jumps:
            if k > r2:
                break
            terms.append(d * log_r if k == 0 else d * (log_r - _log_r2(k)))
        return math.fsum(terms)

    def slope(self) -> int:
        return self.curve.eventual

    def constant(self) -> float:
        """Eventual intercept: N(r) = slope*log r + constant beyond the last breakpoint."""
        return -math.fsum(d * _log_r2(k) for k, d in self.curve.jumps if k != 0)


def integrate(curve: CountingCurve) -> IntegratedCurve:
    return IntegratedCurve(curve)


# ---------------------------------------------------------------------------
# pointwise counts
# ---------------------------------------------------------------------------


def n_classical(src: DivisorSource, r, kind: str = "zero") -> int:
    return sum(p.mult(kind) for p in src.enumerate(r))


def n_bar_delta(src: DivisorSource, r, kind: str = "zero") -> int:
    """Closed-form chain count in the closed disc (no chains are built)."""
    return closed_form_count(src, r, kind)


def n_tilde_iklt(src: DivisorSource, r, kind: str = "zero") -> int:
    """sum over |w| <= r of ord_w - min(ord_w, ord_{w+1}), with ord_{w+1} over the whole plane."""
    step = _step(kind)
    total = 0
    for p in src.enumerate(r):
        m = p.mult(kind)
        if m:
            total += m - min(m, src.multiplicity(_add(p.at, step), kind))
    return total


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------


def _points(src: DivisorSource, kind: str, r_max):
    return [(p.at, p.mult(kind)) for p in src.enumerate(r_max) if p.mult(kind)]


def _default_rmax(src: DivisorSource, r_max):
    if r_max is not None:
        return r_max
    if isinstance(src, FiniteDivisor):
        return math.inf
    raise ValueError("r_max is required for infinite divisor sources")


def classical_curve(src: DivisorSource, kind: str = "zero", r_max=None) -> CountingCurve:
    r_max = _default_rmax(src, r_max)
    return CountingCurve.from_events(((_norm2(w), m) for w, m in _points(src, kind, r_max)), float(r_max))


def delta_curve(src: DivisorSource, kind: str = "zero", r_max=None) -> CountingCurve:
    """Step curve of the chain count.

    Point w (multiplicity m) switches on at |w| with +m; if its predecessor
    w-1 (w+1 for poles) carries multiplicity m' > 0, then min(m, m') is
    removed once both points are inside, at radius max(|w|, |w-1|).
    """
    r_max = _default_rmax(src, r_max)
    step = _step(kind)
    events = []
    for w, m in _points(src, kind, r_max):
        r2 = _norm2(w)
        events.append((r2, m))
        prev = _add(w, -step)
        pm = src.multiplicity(prev, kind)
        if pm:
            events.append((max(r2, _norm2(prev)), -min(m, pm)))
    return CountingCurve.from_events(events, float(r_max))


def N_classical(src: DivisorSource, r, kind: str = "zero") -> float:
    return integrate(classical_curve(src, kind, r if not isinstance(src, FiniteDivisor) else None))(r)


def N_bar_delta(src: DivisorSource, r, kind: str = "zero") -> float:
    return integrate(delta_curve(src, kind, r if not isinstance(src, FiniteDivisor) else None))(r)


# ---------------------------------------------------------------------------
# common zeros, N_pair, index of height, the aD inequality
# ---------------------------------------------------------------------------


def _poly_divisor(p: Poly, tol: TolerancePolicy) -> FiniteDivisor:
    if p.is_constant():
        return FiniteDivisor((), tol)
    return FiniteDivisor.from_factored(roots(p, "auto", tol), None, tol)


def common_zero_curve(a: Poly, b: Poly, tol: TolerancePolicy = DEFAULT_TOL) -> CountingCurve:
    """n_{a,b}: common zeros of a and b counted with min multiplicity (zeros of gcd(a, b))."""
    if a.is_zero() or b.is_zero():
        raise ValueError("common zeros need two nonzero polynomials")
    return classical_curve(_poly_divisor(gcd_classic(a, b), tol))


def common_zero_count(a: Poly, b: Poly, r, tol: TolerancePolicy = DEFAULT_TOL) -> int:
    return common_zero_curve(a, b, tol)(r)


def _N_of(f: RationalFunction, which: str, tol: TolerancePolicy) -> IntegratedCurve:
    """Integrated classical curve of the poles (``which='pole'``) or zeros of f."""
    p = f.den if which == "pole" else f.num
    return integrate(classical_curve(_poly_divisor(p, tol)))


def n_pair(f, r, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """2 N(r, f) - N(r, Delta f) + N(r, 1/Delta f)."""
    f = as_rational(f)
    df = f.delta()
    if df.is_zero():
        raise ValueError("Delta f vanishes identically")
    return 2 * _N_of(f, "pole", tol)(r) - _N_of(df, "pole", tol)(r) + _N_of(df, "zero", tol)(r)


def common_residual(f, r, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """N(r, Delta f / f) - N-bar-Delta(r, f) - N-bar-Delta(r, 1/f).

    Bounded in r for functions of order < 1; the quotient is reduced exactly
    before its poles are counted.
    """
    f = as_rational(f)
    if f.is_constant():
        raise ValueError("f must be nonconstant")
    q = f.delta() / f
    poles, _ = value_source(f, None, "auto", tol)
    zeros, _ = value_source(f, 0, "auto", tol)
    return (_N_of(q, "pole", tol)(r) - integrate(delta_curve(poles, "pole"))(r)
            - integrate(delta_curve(zeros, "zero"))(r))


@dataclass(frozen=True)
class ThetaDelta:
    slope_ratio: Fraction
    grid_inf: float | None
    n_slope: int
    nbar_slope: int
    t_slope: int


def theta_delta(f, a=0, r_grid: Sequence | None = None, tol: TolerancePolicy = DEFAULT_TOL) -> ThetaDelta:
    """Index of height of the value ``a`` (``None`` for infinity) for rational f.

    All of N, N-bar-Delta and T are eventually affine in log r, so the
    liminf equals the ratio of slopes.  ``grid_inf`` is the minimum of
    (N - N-bar-Delta)/T over ``r_grid`` (radii where T > 0).
    """
    f = as_rational(f)
    if f.is_constant():
        raise ValueError("theta_delta needs a nonconstant function")
    src, kind = value_source(f, a, "auto", tol)
    n_curve = classical_curve(src, kind)
    d_curve = delta_curve(src, kind)
    ratio = Fraction(n_curve.eventual - d_curve.eventual, f.degree)
    grid_inf = None
    if r_grid:
        from .nevanlinna import characteristic

        vals = []
        for r in r_grid:
            t = characteristic(f, r, tol=tol)
            if t > 0:
                vals.append((integrate(n_curve)(r) - integrate(d_curve)(r)) / t)
        grid_inf = min(vals) if vals else None
    return ThetaDelta(ratio, grid_inf, n_curve.eventual, d_curve.eventual, f.degree)


@dataclass(frozen=True)
class ADCheck:
    ok: bool
    lhs: int
    rhs: int

    def __bool__(self):
        return self.ok


def ad_check(f: Poly, values: Sequence, r, tol: TolerancePolicy = DEFAULT_TOL) -> ADCheck:
    """sum_j n(r, 1/(f - a_j)) <= n(r, 1/Delta f) + sum_j n-bar-Delta(r, 1/(f - a_j))."""
    if f.is_constant():
        raise ValueError("f must be nonconstant")
    if len(set(values)) != len(values):
        raise ValueError("values must be distinct")
    lhs = rhs = 0
    for a in values:
        src, kind = value_source(f, a, "auto", tol)
        lhs += n_classical(src, r, kind)
        rhs += n_bar_delta(src, r, kind)
    rhs += n_classical(_poly_divisor(delta(f), tol), r)
    return ADCheck(lhs <= rhs, lhs, rhs)


# ---------------------------------------------------------------------------
# tabulation
# ---------------------------------------------------------------------------


def geometric_grid(r_min: float, r_max: float, points: int) -> list[float]:
    if not (0 < r_min <= r_max) or points < 1:
        raise ValueError("need 0 < r_min <= r_max and points >= 1")
    if points == 1:
        return [float(r_min)]
    return [float(x) for x in np.geomspace(r_min, r_max, points)]


def curve_rows(src: DivisorSource, kind: str, grid: Sequence[float]) -> list[tuple]:
    """Rows (r, n, N, nBarDelta, NBarDelta) over ``grid``."""
    r_max = None if isinstance(src, FiniteDivisor) else max(grid)
    n_c = classical_curve(src, kind, r_max)
    d_c = delta_curve(src, kind, r_max)
    N_i, D_i = integrate(n_c), integrate(d_c)
    return [(r, n_c(r), N_i(r), d_c(r), D_i(r)) for r in grid]
