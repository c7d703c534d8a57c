"""Truncated second main theorem slopes, complete long values and shifting sharing."""

from __future__ import annotations

import math
from collections import Counter
from typing import Sequence

from ..counting import classical_curve, delta_curve, integrate
from ..divisor import chain_decompose, value_source
from ..nevanlinna import CircleQuadrature, characteristic
from ..poly import DEFAULT_TOL, ExactFactorizationIncomplete, TolerancePolicy, roots
from ..rational import RationalFunction, as_rational
from ..scalar import GaussianRational, as_gr
from .report import HOLDS, VIOLATED, MarginReport, Precondition, gate

__all__ = [
    "smt_report",
    "complete_long_values",
    "is_complete_long_value",
    "initial_points",
    "shifting_share",
    "five_value_report",
]

SMT_GRID = (10.0, 100.0, 1000.0, 10000.0)


def _is_inf(a) -> bool:
    return a is None or (isinstance(a, str) and a.lower() in ("inf", "infinity", "oo"))


def smt_report(f, values: Sequence, r_grid: Sequence[float] = SMT_GRID, quad: CircleQuadrature | None = None,
               tol: TolerancePolicy = DEFAULT_TOL, strict: bool = True) -> MarginReport:
    """(q-1) T(r, f) <= N-bar-Delta(r, f) + sum_k N-bar-Delta(r, 1/(f - a_k)) + S(r, f).

    For rational f both sides are eventually affine in log r and S(r, f) is
    o(log r), so the verdict compares exact slopes.  The curves on ``r_grid``
    are reported too, with finite-difference slopes over the last decade.
    """
    f = as_rational(f)
    vals = [as_gr(a) for a in values if not _is_inf(a)]
    q = len(values)
    pre = [
        Precondition.check("f nonconstant", not f.is_constant()),
        Precondition.check("Delta f not identically zero", not f.delta().is_zero()),
        Precondition.check("q >= 2 values", q >= 2, q),
        Precondition.check("values finite and distinct", len(vals) == q and len(set(vals)) == q),
    ]
    if any(p.failed for p in pre):
        report = MarginReport("truncated-second-main-theorem", {"f": f, "values": values}, [], [], [], pre)
        return gate(report) if strict else report

    pole_src, _ = value_source(f, None, "auto", tol)
    curves = [delta_curve(pole_src, "pole")]
    for a in vals:
        src, kind = value_source(f, a, "auto", tol)
        curves.append(delta_curve(src, kind))
    lhs_slope = (q - 1) * f.degree
    rhs_slope = sum(c.eventual for c in curves)
    integ = [integrate(c) for c in curves]
    grid = list(r_grid)
    lhs = [(q - 1) * characteristic(f, r, quad, tol) for r in grid]
    rhs = [math.fsum(N(r) for N in integ) for r in grid]
    extra = {
        "lhs_slope": lhs_slope,
        "rhs_slope": rhs_slope,
        "slope_margin": rhs_slope - lhs_slope,
        "rhs_terms": {"N_bar_delta_poles": curves[0].eventual,
                      **{f"N_bar_delta_a{k + 1}": c.eventual for k, c in enumerate(curves[1:])}},
    }
    if len(grid) >= 2:
        r0, r1 = grid[-2], grid[-1]
        span = math.log(r1 / r0)
        extra["fd_lhs_slope"] = (lhs[-1] - lhs[-2]) / span
        extra["fd_rhs_slope"] = (rhs[-1] - rhs[-2]) / span
        extra["fd_window"] = [r0, r1]
    report = MarginReport("truncated-second-main-theorem", {"f": f, "values": list(vals)}, grid, lhs, rhs, pre,
                          tolerance=0.05, extra=extra)
    report.verdict = HOLDS if rhs_slope >= lhs_slope else VIOLATED
    report.violated_at = [] if report.verdict == HOLDS else ["slope"]
    return report


def is_complete_long_value(f, a, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """Every initial shifting a-point chain of f has length >= 2 (and there is at least one)."""
    src, kind = value_source(f, a, "auto", tol)
    dec = chain_decompose(src, math.inf, kind)
    return dec.count > 0 and all(c.length >= 2 for c in dec.chains)


def _derived_candidates(f: RationalFunction, tol: TolerancePolicy) -> list[GaussianRational]:
    """Values f(w) at exact zeros w of Delta f.

    A finite complete long value a forces f(w) = f(w + 1) = a at the start
    of each chain, so it must show up here whenever those starts lie in Q(i).
    """
    num = f.delta().num
    if num.is_constant():
        return []
    try:
        zs = roots(num, "exact", tol).roots
    except ExactFactorizationIncomplete as exc:
        zs = exc.found.roots if exc.found is not None else ()
    out = []
    for w, _ in zs:
        try:
            out.append(f(w))
        except ZeroDivisionError:
            continue
    return out


def complete_long_values(f, candidates: Sequence = (), derive: bool = True, tol: TolerancePolicy = DEFAULT_TOL) -> list:
    """Complete long values among the candidates, infinity and (optionally) the derived values.

    Infinity is reported as ``None``.
    """
    f = as_rational(f)
    if f.is_constant():
        raise ValueError("f must be nonconstant")
    finite: list[GaussianRational] = []
    for a in list(candidates) + (_derived_candidates(f, tol) if derive else []):
        if not _is_inf(a):
            a = as_gr(a)
            if a not in finite:
                finite.append(a)
    out = [a for a in sorted(finite, key=lambda x: x.sort_key()) if is_complete_long_value(f, a, tol)]
    if not f.is_polynomial() and is_complete_long_value(f, None, tol):
        out.append(None)
    return out


def initial_points(f, a, r=math.inf, tol: TolerancePolicy = DEFAULT_TOL) -> list:
    src, kind = value_source(f, a, "auto", tol)
    return chain_decompose(src, r, kind).starts()


def _same_multiset(xs: list, ys: list, eps: float) -> bool:
    if len(xs) != len(ys):
        return False
    if all(isinstance(x, GaussianRational) for x in xs + ys):
        return Counter(xs) == Counter(ys)
    rest = [complex(y) for y in ys]
    for x in xs:
        xc = complex(x)
        hit = next((k for k, y in enumerate(rest) if abs(y - xc) <= eps), None)
        if hit is None:
            return False
        rest.pop(hit)
    return True


def shifting_share(f, g, a, r=math.inf, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """f and g have the same multiset of initial shifting a-points in the closed disc.

    Chain lengths are not compared: z^{3 falling} and z share 0 for r > 3.
    """
    return _same_multiset(initial_points(f, a, r, tol), initial_points(g, a, r, tol), tol.root_eps)


def five_value_report(f, g, values: Sequence, r=math.inf, tol: TolerancePolicy = DEFAULT_TOL) -> dict:
    """Which of ``values`` f and g shifting share, and whether that is consistent with the five-value theorem.

    Sharing five distinct values forces f = g; the report flags any input
    where all of five or more values are shared but f and g differ.
    """
    f, g = as_rational(f), as_rational(g)
    shared = [shifting_share(f, g, a, r, tol) for a in values]
    identical = f == g
    enough = len({str(a) for a in values}) >= 5
    return {
        "values": ["inf" if _is_inf(a) else str(as_gr(a)) for a in values],
        "shared": shared,
        "all_shared": all(shared),
        "identical": identical,
        "consistent": not (enough and all(shared) and not identical),
    }
