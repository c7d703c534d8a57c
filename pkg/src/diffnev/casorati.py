"""Casorati determinants: det [f_j(z + i)] for i, j = 0..m-1."""

from __future__ import annotations

from typing import Sequence

from .poly import Poly
from .rational import RationalFunction, as_rational

__all__ = ["casorati_matrix", "casorati", "linearly_independent"]


def casorati_matrix(funcs: Sequence) -> list[list[RationalFunction]]:
    fs = [as_rational(f) for f in funcs]
    return [[f.shift(i) for f in fs] for i in range(len(fs))]


def _bareiss(m: list[list[Poly]]) -> Poly:
    """Fraction-free determinant of a square polynomial matrix (modified in place)."""
    n = len(m)
    sign = 1
    prev = Poly([1])
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Poly()
        piv = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * piv - m[i][k] * m[k][j]).exact_div(prev)
        prev = piv
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def casorati(*funcs) -> RationalFunction:
    """Exact Casorati determinant of rational functions (or polynomials/constants).

    Each row is cleared of denominators by multiplying with the product of
    its entry denominators, the polynomial determinant is taken by Bareiss
    elimination and the row factors are divided back out.
    """
    if len(funcs) == 1 and isinstance(funcs[0], (list, tuple)):
        funcs = tuple(funcs[0])
    if not funcs:
        raise ValueError("casorati needs at least one function")
    rows = casorati_matrix(funcs)
    lifted: list[list[Poly]] = []
    scale = Poly([1])
    for row in rows:
        d = Poly([1])
        for e in row:
            d = d * e.den
        scale = scale * d
        lifted.append([e.num * d.exact_div(e.den) for e in row])
    return RationalFunction(_bareiss(lifted), scale)


def linearly_independent(*funcs) -> bool:
    """True iff the Casorati determinant is not identically zero.

    For rational functions this is the same as linear independence over C.
    """
    return not casorati(*funcs).is_zero()
