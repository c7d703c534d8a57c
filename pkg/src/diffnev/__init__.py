"""Exact difference calculus: falling-factorial chains, difference counting functions,
Nevanlinna characteristics and executable checks of difference value-distribution theorems."""

from .casorati import casorati, linearly_independent
from .divisor import (
    DivisorPoint,
    FiniteDivisor,
    LatticeDivisor,
    SumDivisor,
    chain_decompose,
    classic_radical,
    difference_radical,
    divisor_of,
    length_of_pole_at,
    length_of_zero_at,
    pairwise_shifting_prime,
    relatively_shifting_prime,
)
from .poly import (
    DEFAULT_TOL,
    ExactFactorizationIncomplete,
    FactoredPoly,
    NonConvergence,
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
from .rational import RationalFunction, as_rational
from .scalar import GaussianRational, as_gr, parse_scalar

__version__ = "0.1.0"
