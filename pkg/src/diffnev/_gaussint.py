"""Gaussian-integer helpers for the exact rational-root search.

Gaussian integers are plain ``(re, im)`` int tuples here.
"""

from __future__ import annotations

from itertools import product

UNITS = ((1, 0), (0, 1), (-1, 0), (0, -1))


def mul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def norm(x) -> int:
    return x[0] * x[0] + x[1] * x[1]


def divmod_round(x, y):
    """Euclidean division with rounded quotient: x = q*y + r, N(r) < N(y)."""
    n = norm(y)
    num = mul(x, (y[0], -y[1]))
    q = (_round_div(num[0], n), _round_div(num[1], n))
    qy = mul(q, y)
    return q, (x[0] - qy[0], x[1] - qy[1])


def _round_div(a: int, n: int) -> int:
    return (2 * a + n) // (2 * n)


def exact_quotient(x, y):
    """Return x / y if y divides x in Z[i], else None."""
    n = norm(y)
    num = mul(x, (y[0], -y[1]))
    if num[0] % n or num[1] % n:
        return None
    return (num[0] // n, num[1] // n)


def ggcd(x, y):
    while y != (0, 0):
        _, r = divmod_round(x, y)
        x, y = y, r
    return x


def _factor_int(n: int, limit: int) -> dict[int, int] | None:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        if p > limit:
            return None
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _split_prime(p: int):
    """Gaussian prime of norm p for a rational prime p = 1 mod 4."""
    for c in range(2, p):
        t = pow(c, (p - 1) // 4, p)
        if t * t % p == p - 1:
            break
    g = ggcd((p, 0), (t, 1))
    return g


def gaussian_primes_over(p: int):
    if p == 2:
        return [(1, 1)]
    if p % 4 == 3:
        return [(p, 0)]
    g = _split_prime(p)
    return [g, (g[0], -g[1])]


def factor(x, trial_limit: int = 10**6):
    """Factor a nonzero Gaussian integer into Gaussian primes.

    Returns ``[(prime, exponent), ...]`` (unit part discarded) or ``None``
    when the norm has a prime factor above ``trial_limit`` that could not be
    confirmed by trial division.
    """
    rat = _factor_int(norm(x), trial_limit)
    if rat is None:
        return None
    out = []
    rest = x
    for p in sorted(rat):
        for pi in gaussian_primes_over(p):
            e = 0
            while True:
                q = exact_quotient(rest, pi)
                if q is None:
                    break
                rest = q
                e += 1
            if e:
                out.append((pi, e))
    return out


def divisors(x, trial_limit: int = 10**6, cap: int = 20000):
    """All divisors of ``x`` up to units (one associate each), or None if too many."""
    fac = factor(x, trial_limit)
    if fac is None:
        return None
    count = 1
    for _, e in fac:
        count *= e + 1
    if count > cap:
        return None
    divs = []
    for exps in product(*[range(e + 1) for _, e in fac]):
        d = (1, 0)
        for (pi, _), k in zip(fac, exps):
            for _ in range(k):
                d = mul(d, pi)
        divs.append(d)
    return divs

