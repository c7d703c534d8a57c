"""Counting functions: n, N, n-bar-Delta, N-bar-Delta, n-tilde, common zeros, N_pair, theta, aD."""

import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from diffnev import FiniteDivisor, GaussianRational as G, LatticeDivisor, Poly, Z, chain_decompose, difference_radical, fall_expr, roots
from diffnev.counting import (
    N_bar_delta,
    N_classical,
    ad_check,
    classical_curve,
    common_residual,
    common_zero_count,
    common_zero_curve,
    curve_rows,
    delta_curve,
    geometric_grid,
    integrate,
    n_bar_delta,
    n_classical,
    n_pair,
    n_tilde_iklt,
    theta_delta,
)
from diffnev.rational import as_rational

from conftest import random_divisor, root_multisets


def zsrc(p):
    return FiniteDivisor.from_factored(roots(p, "exact"))


def psrc(den):
    return FiniteDivisor.from_factored(None, roots(den, "exact"))


SIN = LatticeDivisor(0, 0, zmult=1)
GAMMA = LatticeDivisor(0, -1, pmult=1)


# --- pointwise counts --------------------------------------------------------------

def test_n_classical_examples():
    assert n_classical(psrc(Z**2 * (Z + 1) * (Z + 2)), 3, "pole") == 4
    assert n_classical(zsrc(Z**2 * (Z - 1) ** 3 * (Z - 2) ** 4), 4) == 9
    assert n_classical(FiniteDivisor(), 100) == 0


def test_n_bar_delta_examples():
    for r in [1, 2, 5.5, 40]:
        assert n_bar_delta(SIN, r) == 1
    for r in [0.1, 1, 7, 40]:
        assert n_bar_delta(GAMMA, r, "pole") == 1
    assert n_bar_delta(FiniteDivisor.from_multisets([0, 1, 1, 2]), 5) == 2


def test_n_tilde_examples():
    for r in [1, 3, 9.5]:
        assert n_tilde_iklt(SIN, r) == 0
    assert n_tilde_iklt(FiniteDivisor.from_multisets([0]), 2) == 1
    assert n_tilde_iklt(FiniteDivisor.from_multisets([0, 1]), 1) == 1


def test_worked_examples_for_all_large_r():
    f = Z**2 * (Z - 1) ** 3 * (Z - 2) ** 4
    assert all(n_bar_delta(zsrc(f), r) == 4 for r in [4, 5, 10, 1e6])
    g = Z**2 * (Z + 1) ** 4 * (Z + 2) ** 3
    assert all(n_bar_delta(psrc(g), r, "pole") == 4 for r in [3.01, 4, 100])


def test_boundary_absorption():
    # 2 is a chain start until its predecessor 1 enters; then 1 starts the merged chain
    src = FiniteDivisor.from_multisets([G(2), G(1, 1)])
    c = delta_curve(src)
    assert [c(r) for r in (1, 2)] == [0, 2]
    src = FiniteDivisor.from_multisets([G(0, 3), G(-1, 3)])  # |3i| = 3 < |-1+3i|
    c = delta_curve(src)
    assert [c(3), c(3.2)] == [1, 1]
    assert delta_curve(FiniteDivisor.from_multisets([-1, 0]))(0) == 1


@given(st.lists(st.builds(G, st.integers(-4, 4), st.integers(-4, 4)), max_size=12))
def test_n_bar_delta_monotone_in_practice(rs):
    # the curve may step down only if both u - 1 and u + 1 lie strictly inside |u|,
    # which |u+1|^2 + |u-1|^2 = 2|u|^2 + 2 rules out
    c = delta_curve(FiniteDivisor.from_multisets(rs))
    assert all(v >= 0 for v in c.values)
    assert c.values == sorted(c.values)


@given(root_multisets, st.floats(0.05, 6))
def test_dual_implementation(rs, r):
    src = FiniteDivisor.from_multisets(rs)
    assert n_bar_delta(src, r) == chain_decompose(src, r).count == delta_curve(src)(r)


def test_dual_implementation_corpus():
    rng = random.Random(3)
    for _ in range(400):
        src = random_divisor(rng)
        for r in [rng.uniform(0.1, 4.5) for _ in range(20)]:
            for kind in ("zero", "pole"):
                assert n_bar_delta(src, r, kind) == chain_decompose(src, r, kind).count == delta_curve(src, kind)(r)


@given(st.lists(st.builds(G, st.integers(-3, 3), st.integers(-2, 2)), min_size=1, max_size=8))
def test_full_radius_equals_radical_degree(rs):
    p = Poly([1])
    for w in rs:
        p = p * (Z - w)
    fp = roots(p, "exact")
    assert n_bar_delta(FiniteDivisor.from_factored(fp), 10) == difference_radical(fp).degree


# --- integration -----------------------------------------------------------------

def _stieltjes(count, r, breaks):
    """N(r) from the step function sampled at interval midpoints, plus n(0) log r."""
    n0 = count(0)
    pts = sorted({0.0, *[b for b in breaks if 0 < b < r], float(r)})
    total = mpmath.mpf(0)
    for a, b in zip(pts, pts[1:]):
        mid = (a + b) / 2
        total += (count(mid) - n0) * (mpmath.log(b) - mpmath.log(a)) if a > 0 else 0
    return float(total + n0 * mpmath.log(r))


def test_integral_examples():
    one = integrate(classical_curve(FiniteDivisor.from_multisets([1])))
    assert one(0.5) == 0 and one(5) == pytest.approx(math.log(5), abs=1e-15)
    two = integrate(classical_curve(FiniteDivisor.from_multisets([0, 0])))
    assert two(3) == pytest.approx(2 * math.log(3), abs=1e-15)


def test_integral_matches_stieltjes_oracle():
    rng = random.Random(5)
    src = FiniteDivisor.from_multisets([0, 1, 1, 2])
    N = integrate(delta_curve(src))
    breaks = [1.0, 2.0]
    assert abs(N(5) - _stieltjes(lambda t: n_bar_delta(src, t), 5, breaks)) <= 1e-12
    for _ in range(100):
        src = random_divisor(rng)
        r = rng.uniform(0.2, 6)
        pts = [complex(p.at) for p in src.points]
        breaks = [abs(w + s) for w in pts for s in (-1, 0, 1)]
        for kind in ("zero", "pole"):
            N = integrate(delta_curve(src, kind))
            oracle = _stieltjes(lambda t: n_bar_delta(src, t, kind), r, breaks)
            assert abs(N(r) - oracle) <= 1e-12
            assert abs(N_classical(src, r, kind) - _stieltjes(lambda t: n_classical(src, t, kind), r, breaks)) <= 1e-12


def test_N_bar_delta_lattice():
    assert N_bar_delta(SIN, 50) == pytest.approx(math.log(50))
    with pytest.raises(ValueError):
        delta_curve(SIN)


# --- common zeros, N_pair, theta, aD ---------------------------------------------

def test_common_zero_examples():
    assert all(common_zero_count(Z**2, Z**3, r) == 2 for r in (0.1, 1, 10))
    assert common_zero_count(Z - 1, Z + 1, 10) == 0
    assert common_zero_count(Z * (Z - 1), Z * (Z - 2), 3) == 1
    R = integrate(common_zero_curve(Z**2, Z**3))
    assert R(10) == pytest.approx(2 * math.log(10))


def test_n_pair_examples():
    for r in [1, 10, 1000]:
        assert n_pair(as_rational(Z), r) == 0
        assert n_pair(1 / as_rational(Z), r) == pytest.approx(0, abs=1e-12)
        assert n_pair(as_rational(Z**2), r) == pytest.approx(math.log(2 * r), abs=1e-12)


def test_theta_examples():
    assert theta_delta(fall_expr(Z, 2), 0).slope_ratio == Fraction(1, 2)
    assert theta_delta(Z, 0).slope_ratio == 0
    assert theta_delta(1 / as_rational(fall_expr(Z, 3)), None).slope_ratio == Fraction(2, 3)
    est = theta_delta(fall_expr(Z, 2), 0, [10, 100, 1000, 10000])
    assert 0 < est.grid_inf <= 0.5 + 0.05


def test_ad_examples():
    res = ad_check(Z**2, [0], 5)
    # n(r,1/Delta f) = 1 and the double zero at 0 gives two singleton chains
    assert res and (res.lhs, res.rhs) == (2, 3)
    res = ad_check(Z, [0, 1], 5)
    assert res and (res.lhs, res.rhs) == (2, 2)
    res = ad_check(fall_expr(Z, 2), [0], 2)
    assert res and (res.lhs, res.rhs) == (2, 2)


@given(st.lists(st.builds(G, st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=5),
       st.sets(st.builds(G, st.integers(-3, 3), st.integers(-1, 1)), min_size=1, max_size=3),
       st.floats(0.5, 8))
def test_ad_property(rs, values, r):
    p = Poly([1])
    for w in rs:
        p = p * (Z - w)
    assert ad_check(p, sorted(values, key=lambda v: v.sort_key()), r)


def test_common_residual_bounded():
    f = as_rational(Z**3 - 2) / ((Z - 1) ** 2 * (Z + G(0, 1)))
    vals = [common_residual(f, r) for r in (10, 100, 1000, 10000)]
    assert max(vals) - min(vals) < 1e-9


# --- CSV rows ----------------------------------------------------------------------

def test_curve_rows_and_grid():
    grid = geometric_grid(1, 1000, 4)
    assert grid == pytest.approx([1, 10, 100, 1000])
    rows = curve_rows(zsrc(Z**2 * (Z - 1)), "zero", grid)
    assert rows[1][:2] == (10.0, 3) and rows[1][3] == 2
    assert rows[2][2] == pytest.approx(2 * math.log(100) + math.log(100))
