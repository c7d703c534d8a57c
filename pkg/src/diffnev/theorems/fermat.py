"""Falling-power Fermat equations a^{n falling} + b^{n falling} = c^{n falling}.

The search is exhaustive over triples of nonzero polynomials with
Gaussian-integer coefficients in a box.  Instead of enumerating triples it
walks the coefficient equations of F(a) + F(b) - F(c) from the top degree
down.  In equation j every coefficient that appears for the first time
enters either linearly, with factor n * lead^(n-1), or as a lead to the
n-th power; all but one of these new unknowns are enumerated and the last
is solved for exactly, so the only branching is over genuinely free
choices.
"""

from __future__ import annotations

import cmath
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Sequence

from .. import _gaussint as gi
from ..divisor import FiniteDivisor, pairwise_shifting_prime
from ..poly import DEFAULT_TOL, Poly, TolerancePolicy, fall_expr, roots
from ..scalar import GaussianRational

__all__ = ["FermatResult", "fermat_check", "fermat_search", "SearchResult"]

VALID, IDENTITY_FAILS, PRECONDITION_FAILS = "valid", "identity_fails", "precondition_fails"


@dataclass(frozen=True)
class FermatResult:
    status: str
    n: int
    detail: str = ""
    witness: object = None

    @property
    def valid(self) -> bool:
        return self.status == VALID

    def to_json(self) -> dict:
        from .report import jsonable

        d = {"status": self.status, "n": self.n}
        if self.detail:
            d["detail"] = self.detail
        if self.witness is not None:
            d["witness"] = jsonable(self.witness)
        return d


def _divisor(p: Poly, tol: TolerancePolicy) -> FiniteDivisor:
    if p.is_constant():
        return FiniteDivisor((), tol)
    return FiniteDivisor.from_factored(roots(p, "auto", tol), None, tol)


def fermat_check(a: Poly, b: Poly, c: Poly, n: int, tol: TolerancePolicy = DEFAULT_TOL) -> FermatResult:
    """Classify (a, b, c) as a valid instance, a failed identity or a failed precondition.

    Preconditions: no entry is the zero polynomial, not all are constants,
    and the three falling powers are pairwise relatively shifting prime
    (polynomials automatically have order < 1).  The identity failure
    reports the first integer z >= 0 where the two sides differ.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    names = ("a", "b", "c")
    zero = [nm for nm, p in zip(names, (a, b, c)) if p.is_zero()]
    if zero:
        return FermatResult(PRECONDITION_FAILS, n, "no identically zero entry", zero)
    if all(p.is_constant() for p in (a, b, c)):
        return FermatResult(PRECONDITION_FAILS, n, "not all constants")
    fa, fb, fc = (fall_expr(p, n) for p in (a, b, c))
    diff = fa + fb - fc
    if not diff.is_zero():
        z = 0
        while diff(z).is_zero():
            z += 1
        return FermatResult(IDENTITY_FAILS, n, "falling-power identity fails", {"z": z, "difference": str(diff)})
    res = pairwise_shifting_prime([_divisor(p, tol) for p in (fa, fb, fc)])
    if not res.ok:
        i, j = res.pair
        return FermatResult(PRECONDITION_FAILS, n, "falling powers not pairwise relatively shifting prime",
                            {"pair": [names[i], names[j]], "points": list(res.witness)})
    return FermatResult(VALID, n)


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1 << 18)
def _fall_coeffs(coeffs: tuple, n: int) -> tuple:
    """Coefficients (low first) of p(z) p(z-1) ... p(z-n+1) for complex-integer coefficients."""
    out = [1 + 0j]
    for t in range(n):
        # p(z - t) by Horner on (z - t)
        sh = [0j]
        for cf in reversed(coeffs):
            nxt = [0j] * (len(sh) + 1)
            for k, v in enumerate(sh):
                nxt[k + 1] += v
                nxt[k] -= t * v
            nxt[0] += cf
            sh = nxt
        prod_ = [0j] * (len(out) + len(sh) - 1)
        for i, u in enumerate(out):
            if u:
                for k, v in enumerate(sh):
                    prod_[i + k] += u * v
        out = prod_
    return tuple(out)


def _gint(z: complex) -> tuple[int, int]:
    return (int(round(z.real)), int(round(z.imag)))


def _nth_roots(v: tuple[int, int], n: int) -> list[tuple[int, int]]:
    """All Gaussian integers x with x^n = v (v nonzero)."""
    base = complex(*v) ** (1.0 / n)
    found = []
    for k in range(n):
        cand = _gint(base * cmath.exp(2j * cmath.pi * k / n))
        x = (1, 0)
        for _ in range(n):
            x = gi.mul(x, cand)
        if x == v and cand not in found:
            found.append(cand)
    return found


@dataclass
class SearchResult:
    n: int
    max_degree: int
    box: int
    identities: list = field(default_factory=list)
    admissible: list = field(default_factory=list)
    nodes: int = 0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "max_degree": self.max_degree,
            "box": self.box,
            "identity_solutions": len(self.identities),
            "admissible": [[str(p) for p in t] for t in self.admissible],
            "nodes": self.nodes,
        }


def _triple_key(t):
    return tuple(tuple((c.re, c.im) for c in p.coeffs) for p in t)


def fermat_search(n: int, max_degree: int = 2, box: int = 3, order_seed: int | None = None,
                  tol: TolerancePolicy = DEFAULT_TOL) -> SearchResult:
    """Every triple of nonzero polynomials, degree <= max_degree, coefficients a + b i with
    |a|, |b| <= box, solving the falling-power identity.

    Triples that are all constants are skipped.  ``identities`` holds every
    solution of the identity; ``admissible`` the ones passing
    :func:`fermat_check`.  ``order_seed`` permutes the enumeration order;
    results are returned sorted, so the output does not depend on it.
    """
    if n < 1 or max_degree < 0 or box < 0:
        raise ValueError("need n >= 1, max_degree >= 0, box >= 0")
    vals = [(x, y) for x in range(-box, box + 1) for y in range(-box, box + 1)]
    patterns = [p for p in product(range(max_degree + 1), repeat=3) if max(p) >= 1 and p.count(max(p)) >= 2]
    if order_seed is not None:
        rng = random.Random(order_seed)
        rng.shuffle(vals)
        rng.shuffle(patterns)
    nonzero = [v for v in vals if v != (0, 0)]
    in_box = set(vals)
    signs = (1, 1, -1)
    result = SearchResult(n, max_degree, box)

    for degs in patterns:
        d = max(degs)
        top = n * d
        # new[j]: unknowns (poly k, coefficient index i) first entering equation j
        new: list[list[tuple[int, int]]] = [[] for _ in range(top + 1)]
        for k, e in enumerate(degs):
            for s in range(e + 1):
                new[n * (d - e) + s].append((k, e - s))
        coeffs = [[0j] * (e + 1) for e in degs]

        def rest_at(j: int) -> complex:
            total = 0j
            for k, e in enumerate(degs):
                idx = n * e - (j - n * (d - e))
                if j >= n * (d - e) and coeffs[k][e] != 0:
                    total += signs[k] * _fall_coeffs(tuple(coeffs[k]), n)[idx]
            return total

        def dfs(j: int) -> None:
            result.nodes += 1
            if j > top:
                found = tuple(Poly([GaussianRational(int(c.real), int(c.imag)) for c in cs]) for cs in coeffs)
                if fall_expr(found[0], n) + fall_expr(found[1], n) == fall_expr(found[2], n):
                    result.identities.append(found)
                return
            unknowns = new[j]
            if not unknowns:
                if rest_at(j) == 0:
                    dfs(j + 1)
                return
            # prefer solving a linear unknown (one that is not a lead)
            lin = [u for u in unknowns if u[1] != degs[u[0]]]
            solve = lin[-1] if lin else unknowns[-1]
            free = [u for u in unknowns if u != solve]
            choices = [nonzero if i == degs[k] else vals for k, i in free]
            k0, i0 = solve
            is_lead = i0 == degs[k0]
            for pick in product(*choices):
                for (k, i), v in zip(free, pick):
                    coeffs[k][i] = complex(*v)
                coeffs[k0][i0] = 0j
                rest = _gint(rest_at(j))
                if is_lead:
                    target = (-signs[k0] * rest[0], -signs[k0] * rest[1])
                    sols = _nth_roots(target, n) if target != (0, 0) else []
                else:
                    lead = _gint(coeffs[k0][degs[k0]])
                    fac = (n, 0)
                    for _ in range(n - 1):
                        fac = gi.mul(fac, lead)
                    fac = (signs[k0] * fac[0], signs[k0] * fac[1])
                    q = gi.exact_quotient((-rest[0], -rest[1]), fac)
                    sols = [q] if q is not None else []
                for x in sols:
                    if x in in_box:
                        coeffs[k0][i0] = complex(*x)
                        dfs(j + 1)
                coeffs[k0][i0] = 0j
            for k, i in free:
                coeffs[k][i] = 0j

        dfs(0)

    result.identities.sort(key=_triple_key)
    result.admissible = [t for t in result.identities if fermat_check(*t, n, tol).valid]
    return result
