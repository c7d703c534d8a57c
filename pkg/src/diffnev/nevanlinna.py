"""Proximity and characteristic functions by trapezoid quadrature on |z| = r."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Protocol, Sequence, runtime_checkable

import numpy as np

from .counting import IntegratedCurve, classical_curve, common_zero_curve, integrate
from .divisor import FiniteDivisor
from .poly import DEFAULT_TOL, Poly, TolerancePolicy, roots
from .rational import RationalFunction, as_rational

__all__ = [
    "CircleQuadrature",
    "LogModulus",
    "ShiftedSine",
    "mean_log_abs",
    "proximity",
    "characteristic",
    "cartan_characteristic",
    "tilde_t",
    "origin_correction",
    "lemma_t_check",
    "LemmaTReport",
]


@dataclass(frozen=True)
class CircleQuadrature:
    """Composite trapezoid rule on [0, 2*pi).

    If the integrand is not finite at some node (a zero or pole sits on the
    circle), every node is rotated by ``nudge`` times half the node spacing
    and the rule is re-applied; log singularities are integrable, so this
    only perturbs the result by O(h log h).
    """

    nodes: int = 4096
    nudge: float = 1e-3

    def __post_init__(self):
        if self.nodes < 1:
            raise ValueError("nodes must be positive")
        if not 0 < self.nudge <= 1:
            raise ValueError("nudge must lie in (0, 1]")

    def angles(self, offset: float = 0.0) -> np.ndarray:
        return 2 * np.pi * np.arange(self.nodes) / self.nodes + offset

    def mean(self, fn: Callable[[np.ndarray], np.ndarray], r: float, offset: float = 0.0) -> float:
        vals = fn(r * np.exp(1j * self.angles(offset)))
        if not np.all(np.isfinite(vals)):
            shifted = offset + self.nudge * np.pi / self.nodes
            vals = fn(r * np.exp(1j * self.angles(shifted)))
            if not np.all(np.isfinite(vals)):
                raise ArithmeticError(f"integrand singular at quadrature nodes on |z|={r}")
        return float(np.mean(vals))


def _quad(quad: CircleQuadrature | None, tol: TolerancePolicy) -> CircleQuadrature:
    return quad if quad is not None else CircleQuadrature(tol.quadrature_nodes)


@runtime_checkable
class LogModulus(Protocol):
    """An entire function known through log|f| and its leading Laurent coefficient at 0."""

    def log_abs(self, z: np.ndarray) -> np.ndarray: ...

    def origin_coefficient(self) -> complex: ...


@dataclass(frozen=True)
class ShiftedSine:
    """scale * sin(pi (z - shift)), with a log-modulus that does not overflow for large |Im z|."""

    shift: float = 0.0
    scale: float = 1.0

    def log_abs(self, z):
        w = np.pi * (np.asarray(z, dtype=complex) - self.shift)
        y = w.imag
        sgn = np.where(y >= 0, 1.0, -1.0)
        tail = 1 - np.exp(2j * sgn * w)
        with np.errstate(divide="ignore"):
            return math.log(abs(self.scale)) + np.abs(y) - math.log(2) + np.log(np.abs(tail))

    def origin_coefficient(self) -> complex:
        if float(self.shift).is_integer():
            return self.scale * math.pi * math.cos(math.pi * self.shift)
        return self.scale * math.sin(-math.pi * self.shift)

    def __call__(self, z):
        return self.scale * np.sin(np.pi * (np.asarray(z, dtype=complex) - self.shift))


def mean_log_abs(f, r: float, quad: CircleQuadrature | None = None, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """(1/2pi) integral of log|f(r e^{it})| dt."""
    return _quad(quad, tol).mean(f.log_abs, r)


def proximity(f, r: float, quad: CircleQuadrature | None = None, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """m(r, f) = (1/2pi) integral of log+ |f|."""
    f = as_rational(f)
    return _quad(quad, tol).mean(lambda z: np.maximum(f.log_abs(z), 0.0), r)


@lru_cache(maxsize=512)
def _pole_counting(den: Poly, tol: TolerancePolicy) -> IntegratedCurve:
    if den.is_constant():
        return integrate(classical_curve(FiniteDivisor((), tol)))
    return integrate(classical_curve(FiniteDivisor.from_factored(roots(den, "auto", tol), None, tol)))


def characteristic(f, r: float, quad: CircleQuadrature | None = None, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """T(r, f) = m(r, f) + N(r, f), with N from the exact pole divisor."""
    f = as_rational(f)
    return proximity(f, r, quad, tol) + _pole_counting(f.den, tol)(r)


def _lowest(p: Poly) -> complex:
    return complex(p.lowest_term()[1])


def cartan_characteristic(f, r: float, quad: CircleQuadrature | None = None, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """T(r, p/q) as (1/2pi) integral of log max(|p|, |q|) minus log|c(q)|.

    Here c(q) is the lowest nonzero coefficient of q.  This is a second,
    quadrature-only route to T that shares no code with m + N.
    """
    f = as_rational(f)
    p, q = f.num, f.den
    if p.is_zero():
        return 0.0
    val = _quad(quad, tol).mean(lambda z: np.maximum(p.log_abs(z), q.log_abs(z)), r)
    return val - math.log(abs(_lowest(q)))


class _PolyEntry:
    def __init__(self, f):
        self.f = f

    def log_abs(self, z):
        return self.f.log_abs(z)

    def origin_coefficient(self) -> complex:
        if isinstance(self.f, Poly):
            return _lowest(self.f)
        return _lowest(self.f.num) / _lowest(self.f.den)


def _entries(funcs: Sequence) -> list:
    out = []
    for f in funcs:
        if isinstance(f, (Poly, RationalFunction)):
            if f.is_zero():
                continue
            out.append(_PolyEntry(f))
        elif isinstance(f, LogModulus):
            out.append(f)
        else:
            g = as_rational(f)
            if not g.is_zero():
                out.append(_PolyEntry(g))
    if not out:
        raise ValueError("the tuple needs at least one function that is not identically zero")
    return out


def origin_correction(funcs: Sequence) -> float:
    """max_j log|c_{lambda_j}|, using the leading Laurent coefficient of every entry at 0."""
    return max(math.log(abs(e.origin_coefficient())) for e in _entries(funcs))


def tilde_t(funcs: Sequence, r: float, quad: CircleQuadrature | None = None, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """Mean of log max_j |a_j| over |z| = r, minus the origin correction."""
    ents = _entries(funcs)

    def log_u(z):
        return np.max(np.stack([e.log_abs(z) for e in ents]), axis=0)

    return _quad(quad, tol).mean(log_u, r) - origin_correction(funcs)


@dataclass(frozen=True)
class LemmaTReport:
    grid: tuple[float, ...]
    tilde: tuple[float, ...]
    t: tuple[float, ...]
    common: tuple[float, ...]
    residual: tuple[float, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "residual", tuple(a - b - c for a, b, c in zip(self.tilde, self.t, self.common)))

    @property
    def spread(self) -> float:
        return max(self.residual) - min(self.residual)


def lemma_t_check(a: Poly, b: Poly, r_grid: Sequence[float], quad: CircleQuadrature | None = None,
                  tol: TolerancePolicy = DEFAULT_TOL) -> LemmaTReport:
    """Residual of T~_{a,b}(r) - T(r, a/b) - R_{a,b}(r) across ``r_grid``."""
    if b.is_zero():
        raise ValueError("b must not vanish identically")
    f = as_rational(a) / as_rational(b)
    if a.is_zero():
        common = [0.0] * len(r_grid)
    else:
        R = integrate(common_zero_curve(a, b, tol))
        common = [R(r) for r in r_grid]
    return LemmaTReport(
        tuple(r_grid),
        tuple(tilde_t([a, b], r, quad, tol) for r in r_grid),
        tuple(characteristic(f, r, quad, tol) for r in r_grid),
        tuple(common),
    )
