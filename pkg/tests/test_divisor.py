"""Divisors, lengths, chain decompositions, radicals and the shifting-prime relation."""

import json
import math
import random
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diffnev import (
    DivisorPoint,
    FiniteDivisor,
    GaussianRational as G,
    LatticeDivisor,
    Poly,
    SumDivisor,
    Z,
    chain_decompose,
    classic_radical,
    delta,
    difference_radical,
    divisor_of,
    fall_expr,
    length_of_pole_at,
    length_of_zero_at,
    pairwise_shifting_prime,
    relatively_shifting_prime,
    roots,
)
from diffnev.divisor import chains_to_json, closed_form_count, divisor_from_json, divisor_to_json, value_source

from conftest import random_divisor, root_multisets

EXAMPLE = Z**2 * (Z - 1) ** 3 * (Z - 2) ** 4
POLE_EXAMPLE = Z**2 * (Z + 1) ** 4 * (Z + 2) ** 3


def poly_src(p):
    return FiniteDivisor.from_factored(roots(p, "exact"))


def pole_src(den):
    return FiniteDivisor.from_factored(None, roots(den, "exact"))


def chains(dec):
    return Counter({(str(s), n): k for (s, n), k in dec.multiset().items()})


# --- points and sources -----------------------------------------------------

def test_divisor_point_invariants():
    with pytest.raises(ValueError):
        DivisorPoint(G(0), 1, 1)
    with pytest.raises(ValueError):
        DivisorPoint(G(0), 0, 0)


def test_enumerate_is_closed_disc_and_monotone():
    src = FiniteDivisor.from_multisets([G(3, 4), G(5), G(1)])
    assert {p.at for p in src.enumerate(5)} == {G(3, 4), G(5), G(1)}
    assert {p.at for p in src.enumerate(4.99)} == {G(1)}
    for r1, r2 in [(0.5, 1), (1, 5), (2, 10)]:
        assert set(src.enumerate(r1)) <= set(src.enumerate(r2))


def test_divisor_of_rational_cancels():
    from diffnev.rational import as_rational
    f = as_rational(Z * (Z - 1)) / (Z * (Z + 3) ** 2)
    src = divisor_of(f)
    assert src.multiplicity(G(0), "zero") == 0 and src.multiplicity(G(0), "pole") == 0
    assert src.multiplicity(G(1), "zero") == 1
    assert src.multiplicity(G(-3), "pole") == 2


# --- lengths -------------------------------------------------------------------

def test_length_of_zero_examples():
    assert length_of_zero_at(poly_src(EXAMPLE), G(0), 10) == 3
    assert length_of_zero_at(poly_src(Z - 5), G(5)) == 1
    assert length_of_zero_at(poly_src(Z - 5), G(4)) == 0
    sin = LatticeDivisor(0, 0, zmult=1)
    for r in [1, 2.5, 7, 30]:
        k = math.floor(r)
        assert length_of_zero_at(sin, G(-k), r) == 2 * k + 1


def test_length_of_pole_examples():
    src = pole_src(Z**2 * (Z + 1) * (Z + 2))
    assert [length_of_pole_at(src, G(w)) for w in (0, -1, -2)] == [3, 2, 1]
    assert length_of_pole_at(pole_src(Z - 7), G(7)) == 1
    gamma = LatticeDivisor(0, -1, pmult=1)
    assert length_of_pole_at(gamma, G(0), 10) == 11


@given(root_multisets)
def test_length_matches_delta_definition(rs):
    # [DERIVED] Delta^k f(z0) = 0 for k < n and Delta^n f(z0) != 0
    p = Poly([1])
    for w in rs:
        p = p * (Z - w)
    src = FiniteDivisor.from_multisets(rs)
    for z0 in set(rs) | {G(0)}:
        n = length_of_zero_at(src, z0)
        assert all(delta(p, k)(z0).is_zero() for k in range(n))
        assert not delta(p, n)(z0).is_zero()


# --- chain decomposition -------------------------------------------------------

def test_chain_examples():
    dec = chain_decompose(poly_src(EXAMPLE), 4, "zero")
    assert chains(dec) == Counter({("0", 3): 2, ("1", 2): 1, ("2", 1): 1})
    assert dec.count == 4
    dec = chain_decompose(pole_src(POLE_EXAMPLE), 4, "pole")
    assert chains(dec) == Counter({("0", 3): 2, ("-1", 2): 1, ("-1", 1): 1})
    dec = chain_decompose(FiniteDivisor.from_multisets([0, 1, 1, 2]), math.inf, "zero")
    assert chains(dec) == Counter({("0", 3): 1, ("1", 1): 1})


def test_chain_product_reproduces_polynomial():
    dec = chain_decompose(poly_src(EXAMPLE), math.inf, "zero")
    prod = Poly([1])
    for c in dec.chains:
        prod = prod * fall_expr(Z - c.start, c.length)
    assert prod == EXAMPLE


def test_boundary_partner_outside_disc_does_not_suppress():
    # 3 and 4 are adjacent but |3| <= 3.5 < |4|; chain start 4 is absent, chain at 3 is clipped
    src = FiniteDivisor.from_multisets([3, 4])
    dec = chain_decompose(src, 3.5)
    assert [(str(c.start), c.length, c.clipped) for c in dec.chains] == [("3", 1, True)]
    # predecessor outside disc: -4 -> -3 at r = 3.5 counts a chain at -3
    assert closed_form_count(FiniteDivisor.from_multisets([-4, -3]), 3.5) == 1


def test_lattice_chains():
    sin = LatticeDivisor(0, 0, zmult=1)
    for r in [1, 3.3, 12]:
        dec = chain_decompose(sin, r)
        assert dec.count == 1 and dec.chains[0].length == 2 * math.floor(r) + 1
    gamma = LatticeDivisor(0, -1, pmult=1)
    dec = chain_decompose(gamma, 10, "pole")
    assert dec.count == 1 and dec.chains[0].length == 11 and dec.chains[0].clipped


def test_sum_divisor_adds():
    src = SumDivisor([FiniteDivisor.from_multisets([0, 1]), FiniteDivisor.from_multisets([1, 2])])
    assert src.multiplicity(G(1), "zero") == 2
    assert chains(chain_decompose(src)) == Counter({("0", 3): 1, ("1", 1): 1})


@given(root_multisets, st.floats(0.1, 5))
def test_chain_reaggregation(rs, r):
    src = FiniteDivisor.from_multisets(rs)
    dec = chain_decompose(src, r)
    want = Counter({p.at: p.zmult for p in src.enumerate(r)})
    assert dec.coverage() == want


@given(root_multisets, st.floats(0.1, 5), st.integers(0, 10**6))
def test_chain_order_independent(rs, r, seed):
    src = FiniteDivisor.from_multisets(rs)
    base = chain_decompose(src, r).multiset()
    assert chain_decompose(src, r, rng=random.Random(seed)).multiset() == base


def _brute_count(pts: Counter, r: float, step: int) -> int:
    """Sum of max(0, m(w) - m(w - step)) with the partner seen only inside the disc."""
    total = 0
    for w, m in pts.items():
        if abs(complex(w)) > r:
            continue
        prev = w - step
        mp = pts.get(prev, 0) if abs(complex(prev)) <= r else 0
        total += max(0, m - mp)
    return total


def test_chain_count_matches_oracles_on_corpus():
    rng = random.Random(11)
    for _ in range(300):
        src = random_divisor(rng)
        zs = Counter({p.at: p.zmult for p in src.points if p.zmult})
        ps = Counter({p.at: p.pmult for p in src.points if p.pmult})
        for r in [0.5, 1, 1.5, 2, 2.3, 3, 3.2, 4]:
            assert chain_decompose(src, r, "zero").count == closed_form_count(src, r, "zero") == _brute_count(zs, r, 1)
            assert chain_decompose(src, r, "pole").count == closed_form_count(src, r, "pole") == _brute_count(ps, r, -1)


def test_numeric_mode_chains_use_unit_gap():
    # float roots linked by a unit gap within unit_gap_eps
    s = 2 ** 0.5
    src = FiniteDivisor([DivisorPoint(complex(s, 0), 1), DivisorPoint(complex(s + 1, 0), 1)])
    assert chain_decompose(src).count == 1
    p = (Z**2 - 2) * ((Z - 1) ** 2 - 2)  # -sqrt2 links to 1-sqrt2, sqrt2 to 1+sqrt2
    src, _ = value_source(p, 0)
    assert chain_decompose(src).count == 2


# --- radicals ------------------------------------------------------------------

def test_difference_radical_examples():
    rad = difference_radical(roots(EXAMPLE, "exact"))
    assert rad.expand() == Z * Z * (Z - 1) * (Z - 2) and rad.degree == 4
    assert difference_radical(roots(Z - 5, "exact")).expand() == Z - 5
    assert difference_radical(roots(Poly([7]), "exact")).expand() == Poly([1])


def test_classic_radical_examples():
    assert classic_radical(roots(Z**2 * (Z - 1) ** 3, "exact")).expand() == Z * (Z - 1)
    assert classic_radical(roots(Z**2 + 1, "exact")).expand() == Z**2 + 1
    assert classic_radical(roots(Poly([3]), "exact")).expand() == Poly([1])


@given(root_multisets)
def test_radical_degree_is_chain_count(rs):
    p = Poly([1])
    for w in rs:
        p = p * (Z - w)
    fp = roots(p, "exact")
    src = FiniteDivisor.from_factored(fp)
    big = 1 + max((abs(complex(w)) for w in rs), default=0)
    assert difference_radical(fp).degree == chain_decompose(src).count == closed_form_count(src, big)


# --- shifting primeness ----------------------------------------------------------

def _definitional_common_divisor(f: Poly, g: Poly) -> bool:
    """Oracle straight from the definition: pieces (z-z1)^{m1 falling} | f and (z-z2)^{n1 falling} | g
    whose product is a single falling factorial starting at z1 or z2."""
    fz = dict(roots(f, "exact").roots) if f.degree > 0 else {}
    gz = dict(roots(g, "exact").roots) if g.degree > 0 else {}

    def run(zs, w):
        n = 0
        while w + n in zs:
            n += 1
        return n

    for z1 in fz:
        for m1 in range(1, run(fz, z1) + 1):
            for z2 in gz:
                for n1 in range(1, run(gz, z2) + 1):
                    piece = fall_expr(Z - z1, m1) * fall_expr(Z - z2, n1)
                    if any(piece == fall_expr(Z - z0, m1 + n1) for z0 in (z1, z2)):
                        return True
    return False


def test_shifting_prime_examples():
    assert relatively_shifting_prime(poly_src(Z**2 + 1), poly_src(Z**2 - 1))
    res = relatively_shifting_prime(poly_src(Z), poly_src(Z - 1))
    assert not res and res.witness == (G(0), G(1))
    assert relatively_shifting_prime(poly_src(Z), poly_src(Z))


def test_pairwise_examples():
    empty = FiniteDivisor()
    assert pairwise_shifting_prime([poly_src(Z**2 + 1), empty, poly_src(Z**2 - 1)])
    assert not pairwise_shifting_prime([poly_src(Z), poly_src(Z - 1), poly_src(Z + 3)])
    assert pairwise_shifting_prime([poly_src(Z)])


@given(st.lists(st.integers(-3, 3), max_size=4), st.lists(st.integers(-3, 3), max_size=4))
def test_adjacency_matches_definition(fr, gr):
    f = Poly([1])
    for w in fr:
        f = f * (Z - w)
    g = Poly([1])
    for w in gr:
        g = g * (Z - w)
    adj = relatively_shifting_prime(FiniteDivisor.from_multisets(fr), FiniteDivisor.from_multisets(gr))
    assert bool(adj) == (not _definitional_common_divisor(f, g))


# --- exchange format -------------------------------------------------------------

def test_json_round_trip():
    src = FiniteDivisor.from_multisets([G(1, 2), 0, 0], [G(-3)])
    blob = json.dumps(divisor_to_json(src.points))
    back = divisor_from_json(blob)
    assert set(back.points) == set(src.points)
    assert divisor_to_json(src.points)[0].keys() == {"re", "im", "zmult", "pmult"}


def test_json_lattice_and_chain_report():
    src = divisor_from_json({"lattices": [{"anchor": {"re": "0", "im": "0"}, "direction": -1, "pmult": 1}]})
    assert length_of_pole_at(src, G(0), 5) == 6
    rep = chains_to_json(chain_decompose(poly_src(EXAMPLE)))
    assert {"start": "0", "length": 3, "kind": "zero"} in rep
