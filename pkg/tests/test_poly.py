"""Polynomial layer: exact arithmetic, shift/difference, falling expressions, Newton basis, roots, gcd."""

import random
from collections import Counter
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from diffnev import (
    ExactFactorizationIncomplete,
    FactoredPoly,
    GaussianRational as G,
    Poly,
    TolerancePolicy,
    Z,
    delta,
    fall_expr,
    falling_monomial,
    from_newton_basis,
    gcd_classic,
    roots,
    shift,
    to_newton_basis,
)
from diffnev.poly import arith, stirling1, stirling2

from conftest import SZ, from_sympy, gaussian_ints, nonconstant_polys, polys, to_sympy


# --- arith -----------------------------------------------------------------

def test_arith_examples():
    assert arith("add", Z**2 + 1, Poly([-2])) == Z**2 - 1
    assert arith("mul", Z, Z - 1) == Z**2 - Z
    # [DERIVED] expansion oracle
    assert arith("mul", Z**2, (Z - 1) ** 3) == from_sympy(sympy.expand(SZ**2 * (SZ - 1) ** 3))


@given(polys(), polys())
def test_product_matches_sympy(p, q):
    assert p * q == from_sympy(to_sympy(p) * to_sympy(q))
    if not p.is_zero() and not q.is_zero():
        assert (p * q).degree == p.degree + q.degree


# --- shift / delta -----------------------------------------------------------

def test_shift_examples():
    assert shift(Z**2, 1) == Z**2 + 2 * Z + 1
    assert shift(Poly([5]), G(3, 1)) == Poly([5])
    assert shift(Z**3 - Z, -1) == from_sympy(sympy.expand((SZ - 1) ** 3 - (SZ - 1)))


@given(polys(), gaussian_ints)
def test_shift_matches_substitution(p, c):
    csym = int(c.re) + sympy.I * int(c.im)
    assert shift(p, c) == from_sympy(to_sympy(p).subs(SZ, SZ + csym))


def test_delta_examples():
    assert delta(Poly([7]), 1).is_zero()
    assert delta(falling_monomial(0, 3), 1) == 3 * falling_monomial(0, 2)
    assert delta(Z**2, 2) == Poly([2])
    assert delta(Z**4, 0) == Z**4


@given(polys(), polys())
def test_delta_linear(p, q):
    assert delta(p + q) == delta(p) + delta(q)


@given(nonconstant_polys())
def test_delta_lowers_degree(p):
    assert delta(p).degree == p.degree - 1


# --- falling expressions -----------------------------------------------------

def test_fall_expr_examples():
    assert fall_expr(Z, 3) == Z * (Z - 1) * (Z - 2)
    assert fall_expr(Z - G(2, 1), 1) == Z - G(2, 1)
    assert fall_expr(Z**2, 2) == Z**2 * (Z - 1) ** 2


@given(polys(max_deg=3), st.integers(1, 3), st.integers(1, 3))
def test_fall_expr_splits(p, m, n):
    assert fall_expr(p, m + n) == fall_expr(p, m) * fall_expr(shift(p, -m), n)


@given(polys(max_deg=4), st.integers(1, 4))
def test_fall_expr_degree(p, n):
    if not p.is_zero():
        assert fall_expr(p, n).degree == n * p.degree


# --- Newton basis ------------------------------------------------------------

def test_newton_examples():
    assert to_newton_basis(Z**2) == [G(0), G(1), G(1)]
    assert to_newton_basis(Z**3) == [G(0), G(1), G(3), G(1)]
    assert to_newton_basis(Poly([G(2, 3)])) == [G(2, 3)]


def test_stirling_tables_match_sympy():
    from sympy.functions.combinatorial.numbers import stirling as sst
    for n in range(9):
        for k in range(n + 1):
            assert stirling2(n, k) == sst(n, k, kind=2)
            assert stirling1(n, k) == sst(n, k, kind=1, signed=True)


@given(polys(max_deg=12))
def test_newton_round_trip(p):
    assert from_newton_basis(to_newton_basis(p)) == p


@given(polys(max_deg=8))
def test_newton_delta_compatible(p):
    b = to_newton_basis(p)
    expected = [k * b[k] for k in range(1, len(b))]
    got = to_newton_basis(delta(p))
    n = max(len(expected), len(got))
    pad = lambda xs: list(xs) + [G(0)] * (n - len(xs))
    assert pad(got) == pad(expected)


def test_newton_round_trip_500():
    rng = random.Random(7)
    for _ in range(500):
        p = Poly([G(rng.randint(-9, 9), rng.randint(-9, 9)) for _ in range(rng.randint(0, 13))])
        assert from_newton_basis(to_newton_basis(p)) == p


# --- roots -------------------------------------------------------------------

def test_roots_examples():
    assert Counter(dict(roots(Z**2 - 1, "exact").roots)) == Counter({G(1): 1, G(-1): 1})
    fp = roots(Z**2 * (Z - 1) ** 3 * (Z - 2) ** 4, "exact")
    assert dict(fp.roots) == {G(0): 2, G(1): 3, G(2): 4}
    assert dict(roots(Z**2 + 1, "exact").roots) == {G(0, 1): 1, G(0, -1): 1}


def test_roots_rational_and_gaussian():
    p = (3 * Z - 1) ** 2 * (2 * Z - G(1, 1))
    fp = roots(p, "exact")
    assert dict(fp.roots) == {G(Fraction(1, 3)): 2, G(1, 1) / 2: 1}
    assert fp.expand() == p


def test_roots_exact_incomplete():
    with pytest.raises(ExactFactorizationIncomplete) as info:
        roots((Z**2 - 2) * (Z - 1), "exact")
    assert info.value.remainder == Z**2 - 2
    assert dict(info.value.found.roots) == {G(1): 1}


def test_roots_numeric_against_sympy():
    p = Z**3 - 2 * Z + 5
    fp = roots(p, "numeric")
    assert not fp.exact
    got = sorted((complex(w) for w, _ in fp.roots), key=lambda c: (c.real, c.imag))
    want = sorted((complex(r) for r in sympy.Poly(to_sympy(p), SZ).nroots(n=30)), key=lambda c: (c.real, c.imag))
    assert all(abs(a - b) < 1e-10 for a, b in zip(got, want))


def test_roots_numeric_clusters_multiple_roots():
    fp = roots((Z - 1) ** 3 * (Z + 2), "numeric", TolerancePolicy(root_eps=1e-4))
    mults = sorted(m for _, m in fp.roots)
    assert mults == [1, 3]


@given(st.lists(st.builds(G, st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=6),
       st.builds(G, st.integers(1, 3), st.integers(-2, 2)))
def test_roots_expansion_round_trip(rs, lead):
    p = Poly([lead])
    for w in rs:
        p = p * (Z - w)
    fp = roots(p, "exact")
    assert fp.exact and fp.expand() == p
    assert Counter(dict(fp.roots)) == Counter(rs)


def test_factored_poly_invariants():
    fp = FactoredPoly.from_multiset([G(0), G(0), G(1)], G(2))
    assert fp.expand() == 2 * Z**2 * (Z - 1)
    with pytest.raises(ValueError):
        FactoredPoly(G(0), ())


def test_tolerance_policy_validated():
    with pytest.raises(ValueError):
        TolerancePolicy(unit_gap_eps=0.5)


# --- gcd ---------------------------------------------------------------------

def test_gcd_examples():
    assert gcd_classic(Z**2, Z) == Z
    assert gcd_classic(Z**2 - 1, Z - 1) == Z - 1
    assert gcd_classic(Z * (Z - 1), (Z - 2) * (Z - 3)) == Poly([1])


@given(polys(max_deg=4), polys(max_deg=4), polys(max_deg=3))
def test_gcd_matches_sympy(p, q, h):
    a, b = p * h, q * h
    if a.is_zero() and b.is_zero():
        return
    want = sympy.Poly(sympy.gcd(to_sympy(a), to_sympy(b)), SZ, domain="QQ_I").monic()
    assert gcd_classic(a, b) == from_sympy(want.as_expr())
