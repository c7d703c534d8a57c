import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from diffnev import FiniteDivisor, GaussianRational, Poly

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SZ = sympy.Symbol("z")


def to_sympy(p: Poly):
    return sympy.Integer(0) + sum((sympy.Rational(c.re.numerator, c.re.denominator)
                + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)) * SZ**k
               for k, c in enumerate(p.coeffs))


def from_sympy(expr) -> Poly:
    sp = sympy.Poly(sympy.expand(expr), SZ)
    out = []
    for c in reversed(sp.all_coeffs()):
        re, im = sympy.re(c), sympy.im(c)
        out.append(GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q))))
    return Poly(out)


small_ints = st.integers(-4, 4)
gaussian_ints = st.builds(GaussianRational, small_ints, small_ints)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
gaussian_rats = st.builds(GaussianRational, rationals, rationals)


def polys(max_deg=6, coeffs=gaussian_rats):
    return st.lists(coeffs, min_size=0, max_size=max_deg + 1).map(Poly)


def nonconstant_polys(max_deg=6, coeffs=gaussian_rats):
    return polys(max_deg, coeffs).filter(lambda p: p.degree >= 1)


# multisets of roots on a small Gaussian-integer box, so unit adjacency is frequent
root_multisets = st.lists(st.builds(GaussianRational, st.integers(-3, 3), st.integers(-1, 1)),
                          min_size=0, max_size=10)


def random_divisor(rng: random.Random, box=3, size=10, poles=True) -> FiniteDivisor:
    pts = [GaussianRational(rng.randint(-box, box), rng.randint(-1, 1)) for _ in range(rng.randint(0, size))]
    if not poles:
        return FiniteDivisor.from_multisets(pts)
    zeros = [w for w in pts if rng.random() < 0.5]
    used = set(zeros)
    pls = [w for w in pts if w not in used]
    return FiniteDivisor.from_multisets(zeros, pls)


@pytest.fixture
def rng():
    return random.Random(20261016)
