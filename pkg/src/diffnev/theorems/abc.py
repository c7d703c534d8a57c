"""Difference Stothers-Mason harnesses: polynomial, entire (T-tilde) and m-term forms."""

from __future__ import annotations

import math
import random
from typing import Sequence

import numpy as np

from ..casorati import linearly_independent
from ..counting import delta_curve, integrate
from ..divisor import (
    FiniteDivisor,
    LatticeDivisor,
    SumDivisor,
    chain_decompose,
    closed_form_count,
    pairwise_shifting_prime,
)
from ..nevanlinna import CircleQuadrature, ShiftedSine, tilde_t
from ..poly import DEFAULT_TOL, Poly, TolerancePolicy, roots
from ..scalar import GaussianRational
from .report import MarginReport, Precondition, gate

__all__ = [
    "verify_poly_abc",
    "verify_entire_abc",
    "counterexample_abc",
    "verify_m_term",
    "abc_preconditions",
    "abc_corpus",
    "m_term_corpus",
    "random_root_poly",
    "zero_divisor",
]

DEFAULT_GRID = (10.0, 100.0, 1000.0)


def zero_divisor(p: Poly, tol: TolerancePolicy = DEFAULT_TOL) -> FiniteDivisor:
    if p.is_zero():
        raise ValueError("the zero polynomial has no divisor")
    if p.is_constant():
        return FiniteDivisor((), tol)
    return FiniteDivisor.from_factored(roots(p, "auto", tol), None, tol)


def _product_divisor(divs: Sequence[FiniteDivisor], tol: TolerancePolicy) -> FiniteDivisor:
    return FiniteDivisor([pt for d in divs for pt in d.points], tol)


def _names(k: int) -> list[str]:
    return ["a", "b", "c"] if k == 3 else [f"f{j + 1}" for j in range(k)]


def _sum_and_prime(polys: Sequence[Poly], tol: TolerancePolicy) -> tuple[list[Precondition], list | None]:
    """Common checks: the sum identity, nonconstancy, nonvanishing, pairwise primeness."""
    names = _names(len(polys))
    *parts, total = polys
    s = Poly()
    for p in parts:
        s = s + p
    lhs_name = " + ".join(names[:-1])
    pre = [
        Precondition.check(f"{lhs_name} = {names[-1]}", s == total, None if s == total else str(s - total),
                           "" if s == total else "difference is nonzero"),
        Precondition.check("not all constants", not all(p.is_constant() for p in polys)),
        Precondition.check("no identically zero entry", not any(p.is_zero() for p in polys),
                           [n for n, p in zip(names, polys) if p.is_zero()] or None),
    ]
    if any(p.is_zero() for p in polys):
        return pre, None
    divs = [zero_divisor(p, tol) for p in polys]
    res = pairwise_shifting_prime(divs)
    witness = None
    if not res.ok:
        i, j = res.pair
        witness = {"pair": [names[i], names[j]], "points": list(res.witness)}
    pre.append(Precondition.check("pairwise relatively shifting prime", res.ok, witness))
    return pre, divs


def abc_preconditions(a: Poly, b: Poly, c: Poly, tol: TolerancePolicy = DEFAULT_TOL) -> list[Precondition]:
    return _sum_and_prime([a, b, c], tol)[0]


def verify_poly_abc(a: Poly, b: Poly, c: Poly, tol: TolerancePolicy = DEFAULT_TOL, strict: bool = True) -> MarginReport:
    """max deg(a, b, c) <= n-bar-Delta(r, 1/abc) - 1 at a radius covering every root.

    The comparison is between integers, so no tolerance is involved.  With
    ``strict`` a failed precondition raises PreconditionFailed.
    """
    pre, divs = _sum_and_prime([a, b, c], tol)
    lhs, rhs, grid, extra = [], [], [], {}
    if divs is not None:
        prod = _product_divisor(divs, tol)
        r = math.floor(prod.max_modulus()) + 1
        count = closed_form_count(prod, math.inf, "zero")
        extra = {"chains": chain_decompose(prod, math.inf, "zero").count, "nBarDelta": count}
        lhs, rhs, grid = [max(p.degree for p in (a, b, c))], [count - 1], [float(r)]
    report = MarginReport("difference-abc-polynomial", {"a": a, "b": b, "c": c}, grid, lhs, rhs, pre,
                          tolerance=0.0, exceptional=False, extra=extra)
    return gate(report) if strict else report


def _quad(quad, tol):
    return quad if quad is not None else CircleQuadrature(tol.quadrature_nodes)


def verify_entire_abc(a: Poly, b: Poly, c: Poly, r_grid: Sequence[float] = DEFAULT_GRID, eps: float = 0.1,
                      delta: float = 0.0, quad: CircleQuadrature | None = None, tol: TolerancePolicy = DEFAULT_TOL,
                      margin_tol: float = 0.05, strict: bool = True) -> MarginReport:
    """T~_{a,b,c}(r) <= N-bar-Delta(r, 1/abc) - (1 - delta - eps) log r on a radius grid."""
    pre, divs = _sum_and_prime([a, b, c], tol)
    lhs, rhs = [], []
    if divs is not None:
        nbar = integrate(delta_curve(_product_divisor(divs, tol), "zero"))
        q = _quad(quad, tol)
        lhs = [tilde_t([a, b, c], r, q, tol) for r in r_grid]
        rhs = [nbar(r) - (1 - delta - eps) * math.log(r) for r in r_grid]
    report = MarginReport("difference-abc-entire", {"a": a, "b": b, "c": c, "eps": eps, "delta": delta},
                          list(r_grid) if divs is not None else [], lhs, rhs, pre, tolerance=margin_tol)
    return gate(report) if strict else report


def counterexample_abc(r_grid: Sequence[float] = DEFAULT_GRID, eps: float = 0.1, delta: float = 1.0,
                       quad: CircleQuadrature | None = None, tol: TolerancePolicy = DEFAULT_TOL,
                       margin_tol: float = 0.05) -> MarginReport:
    """The order-one triple sin(pi z), sin(pi(z - 1/2)), sqrt(2) sin(pi(z - 1/4)).

    Zeros are the integer lattices anchored at 0, 1/2 and 1/4; no two of
    them are unit-adjacent, so every hypothesis except the order bound
    holds.  That one is recorded as waived.
    """
    fa, fb, fc = ShiftedSine(0.0), ShiftedSine(0.5), ShiftedSine(0.25, math.sqrt(2))
    lats = [LatticeDivisor(anchor, 0, zmult=1, tol=tol) for anchor in ("0", "1/2", "1/4")]
    r_top = max(r_grid)
    probe = np.exp(1j * np.linspace(0, 2 * np.pi, 17)) * np.linspace(0.3, 2.0, 17)
    resid = float(np.max(np.abs(fa(probe) + fb(probe) - fc(probe))))
    prime = pairwise_shifting_prime(lats, r_top)
    pre = [
        Precondition.check("a + b = c", resid < 1e-9, None, f"numeric, max residual {resid:.1e} at 17 probes"),
        Precondition.check("not all constants", True),
        Precondition.check("pairwise relatively shifting prime", prime.ok, prime.witness, f"checked in |z| <= {r_top:g}"),
        Precondition("order < 1", "waived", None, "entries have order 1; this is the point of the example"),
    ]
    nbar = integrate(delta_curve(SumDivisor(lats, tol), "zero", r_top))
    q = _quad(quad, tol)
    lhs = [tilde_t([fa, fb, fc], r, q, tol) for r in r_grid]
    rhs = [nbar(r) - (1 - delta - eps) * math.log(r) for r in r_grid]
    return MarginReport("difference-abc-entire (order-one lattice triple)",
                        {"a": "sin(pi z)", "b": "sin(pi (z - 1/2))", "c": "sqrt(2) sin(pi (z - 1/4))",
                         "eps": eps, "delta": delta},
                        list(r_grid), lhs, rhs, pre, tolerance=margin_tol)


def verify_m_term(fs: Sequence[Poly], r_grid: Sequence[float] = DEFAULT_GRID, eps: float = 0.1, delta: float = 0.0,
                  quad: CircleQuadrature | None = None, tol: TolerancePolicy = DEFAULT_TOL,
                  margin_tol: float = 0.05, strict: bool = True) -> MarginReport:
    """T~_{f_1..f_{m+1}}(r) <= (m-1) N-bar-Delta(r, 1/prod f_j) - m(m-1)/2 (1 - delta - eps) log r."""
    fs = list(fs)
    m = len(fs) - 1
    pre = [Precondition.check("m > 2", m > 2, m)]
    more, divs = _sum_and_prime(fs, tol) if m >= 1 else ([], None)
    pre += more
    if m >= 1 and not any(p.is_zero() for p in fs[:m]):
        pre.append(Precondition.check(f"f1..f{m} linearly independent", linearly_independent(*fs[:m])))
    lhs, rhs, grid = [], [], []
    if divs is not None and m > 2:
        nbar = integrate(delta_curve(_product_divisor(divs, tol), "zero"))
        q = _quad(quad, tol)
        grid = list(r_grid)
        lhs = [tilde_t(fs, r, q, tol) for r in grid]
        rhs = [(m - 1) * nbar(r) - m * (m - 1) / 2 * (1 - delta - eps) * math.log(r) for r in grid]
    inputs = {n: f for n, f in zip(_names(len(fs)), fs)}
    inputs.update(eps=eps, delta=delta)
    report = MarginReport("difference-m-term", inputs, grid, lhs, rhs, pre, tolerance=margin_tol)
    return gate(report) if strict else report


# ---------------------------------------------------------------------------
# seeded corpora
# ---------------------------------------------------------------------------


def random_root_poly(rng: random.Random, max_deg: int = 3, box: int = 3, min_deg: int = 0) -> Poly:
    """lead * prod (z - w_j) with Gaussian-integer roots and lead in the box (nonzero)."""
    deg = rng.randint(min_deg, max_deg)
    rts = [GaussianRational(rng.randint(-box, box), rng.randint(-box, box)) for _ in range(deg)]
    lead = GaussianRational()
    while lead.is_zero():
        lead = GaussianRational(rng.randint(-box, box), rng.randint(-box, box))
    return Poly.from_roots(rts, lead)


def abc_corpus(count: int = 200, seed: int = 0, max_deg: int = 3, box: int = 3,
               tol: TolerancePolicy = DEFAULT_TOL, max_tries: int = 100000) -> list[tuple[Poly, Poly, Poly]]:
    """Admissible triples (a, b, a + b): random root polynomials passing every precondition."""
    rng = random.Random(seed)
    out = []
    for _ in range(max_tries):
        if len(out) == count:
            break
        a = random_root_poly(rng, max_deg, box)
        b = random_root_poly(rng, max_deg, box)
        c = a + b
        if c.is_zero():
            continue
        if all(p.status == "ok" for p in abc_preconditions(a, b, c, tol)):
            out.append((a, b, c))
    return out


def m_term_corpus(m: int = 3, count: int = 10, seed: int = 0, max_deg: int = 3, box: int = 3,
                  tol: TolerancePolicy = DEFAULT_TOL, max_tries: int = 100000) -> list[list[Poly]]:
    """Admissible tuples f_1..f_m, f_{m+1} = sum for the m-term harness."""
    rng = random.Random(seed)
    out = []
    for _ in range(max_tries):
        if len(out) == count:
            break
        fs = [random_root_poly(rng, max_deg, box) for _ in range(m)]
        total = Poly()
        for f in fs:
            total = total + f
        if total.is_zero():
            continue
        fs.append(total)
        pre, divs = _sum_and_prime(fs, tol)
        if divs is None or any(p.failed for p in pre):
            continue
        if linearly_independent(*fs[:m]):
            out.append(fs)
    return out
