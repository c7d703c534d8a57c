"""Zero/pole divisors, lengths of zeros and poles, and chain decompositions.

A zero chain starting at ``w`` with length ``n`` covers ``w, w+1, ..., w+n-1``
(the zeros of the falling factorial ``(z-w)^{n}``); a pole chain covers
``w, w-1, ..., w-n+1`` (the poles of ``(z-w)^{-n}``).  All disc tests use
the closed disc ``|w| <= r``.
"""

from __future__ import annotations

import json
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Protocol, Sequence, runtime_checkable

from .poly import DEFAULT_TOL, FactoredPoly, Poly, Root, TolerancePolicy, roots
from .rational import RationalFunction, as_rational
from .scalar import GaussianRational, as_gr, parse_scalar

__all__ = [
    "DivisorPoint",
    "DivisorSource",
    "FiniteDivisor",
    "LatticeDivisor",
    "SumDivisor",
    "Chain",
    "ChainDecomposition",
    "PrimeCheck",
    "Disc",
    "length_of_zero_at",
    "length_of_pole_at",
    "chain_decompose",
    "closed_form_count",
    "difference_radical",
    "classic_radical",
    "relatively_shifting_prime",
    "pairwise_shifting_prime",
    "divisor_of",
    "value_source",
    "divisor_to_json",
    "divisor_from_json",
    "chains_to_json",
    "format_point",
]

KINDS = ("zero", "pole")


def _step(kind: str) -> int:
    if kind == "zero":
        return 1
    if kind == "pole":
        return -1
    raise ValueError(f"kind must be 'zero' or 'pole', got {kind!r}")


class Disc:
    """Closed disc |w| <= r about the origin, tested exactly for exact points."""

    __slots__ = ("r", "r2", "infinite")

    def __init__(self, r):
        if isinstance(r, Disc):
            self.r, self.r2, self.infinite = r.r, r.r2, r.infinite
            return
        if isinstance(r, float) and math.isinf(r):
            self.r, self.r2, self.infinite = r, None, True
            return
        if r < 0:
            raise ValueError("radius must be nonnegative")
        self.r = r
        self.r2 = Fraction(r) ** 2
        self.infinite = False

    @classmethod
    def from_r2(cls, r2: Fraction) -> "Disc":
        d = cls.__new__(cls)
        d.r, d.r2, d.infinite = math.sqrt(r2), Fraction(r2), False
        return d

    def __contains__(self, w) -> bool:
        if self.infinite:
            return True
        if isinstance(w, GaussianRational):
            return w.norm() <= self.r2
        w = complex(w)
        return w.real * w.real + w.imag * w.imag <= float(self.r2)

    def __float__(self):
        return float(self.r)


@dataclass(frozen=True)
class DivisorPoint:
    at: Root
    zmult: int = 0
    pmult: int = 0

    def __post_init__(self):
        if self.zmult < 0 or self.pmult < 0:
            raise ValueError("multiplicities must be nonnegative")
        if self.zmult and self.pmult:
            raise ValueError("a point cannot be both a zero and a pole")
        if not self.zmult and not self.pmult:
            raise ValueError("a divisor point needs a nonzero multiplicity")

    def mult(self, kind: str) -> int:
        return self.zmult if kind == "zero" else self.pmult


@runtime_checkable
class DivisorSource(Protocol):
    """Anything that can list its divisor points inside a closed disc."""

    tol: TolerancePolicy

    def enumerate(self, r) -> list[DivisorPoint]: ...

    def multiplicity(self, w, kind: str) -> int: ...


def _same(a: Root, b: Root, eps: float) -> bool:
    if isinstance(a, GaussianRational) and isinstance(b, GaussianRational):
        return a == b
    return abs(complex(a) - complex(b)) <= eps


class _PointIndex:
    """Lookup of multiplicities by location, exact via hashing, approximate via tolerance."""

    def __init__(self, pts: Iterable[tuple[Root, int]], eps: float):
        self.eps = eps
        self.exact: dict[GaussianRational, int] = {}
        self.approx: list[tuple[complex, int]] = []
        for w, m in pts:
            if isinstance(w, GaussianRational):
                self.exact[w] = self.exact.get(w, 0) + m
            else:
                self.approx.append((complex(w), m))

    def get(self, w: Root) -> int:
        total = 0
        if isinstance(w, GaussianRational):
            total += self.exact.get(w, 0)
            if not self.approx:
                return total
        wc = complex(w)
        if not isinstance(w, GaussianRational):
            for e, m in self.exact.items():
                if abs(complex(e) - wc) <= self.eps:
                    total += m
        for a, m in self.approx:
            if abs(a - wc) <= self.eps:
                total += m
        return total


def _add(w: Root, k: int) -> Root:
    return w + k if isinstance(w, GaussianRational) else complex(w) + k


class FiniteDivisor:
    """A finite divisor, e.g. of a rational function."""

    def __init__(self, points: Iterable[DivisorPoint] = (), tol: TolerancePolicy = DEFAULT_TOL):
        merged: dict = {}
        order: list = []
        for p in points:
            key = p.at
            if key not in merged:
                merged[key] = 0
                order.append(key)
            merged[key] += p.zmult - p.pmult
        pts = []
        for key in order:
            net = merged[key]
            if net > 0:
                pts.append(DivisorPoint(key, zmult=net))
            elif net < 0:
                pts.append(DivisorPoint(key, pmult=-net))
        self.points: tuple[DivisorPoint, ...] = tuple(sorted(pts, key=lambda p: _point_key(p.at)))
        self.tol = tol
        self._index = {k: _PointIndex(((p.at, p.mult(k)) for p in self.points if p.mult(k)), tol.unit_gap_eps) for k in KINDS}

    @classmethod
    def from_factored(cls, zeros: FactoredPoly | None = None, poles: FactoredPoly | None = None,
                      tol: TolerancePolicy = DEFAULT_TOL) -> "FiniteDivisor":
        pts = []
        if zeros is not None:
            pts += [DivisorPoint(w, zmult=m) for w, m in zeros.roots]
        if poles is not None:
            pts += [DivisorPoint(w, pmult=m) for w, m in poles.roots]
        return cls(pts, tol)

    @classmethod
    def from_multisets(cls, zeros: Iterable = (), poles: Iterable = (), tol: TolerancePolicy = DEFAULT_TOL):
        pts = [DivisorPoint(as_gr(w), zmult=m) for w, m in Counter(as_gr(x) for x in zeros).items()]
        pts += [DivisorPoint(as_gr(w), pmult=m) for w, m in Counter(as_gr(x) for x in poles).items()]
        return cls(pts, tol)

    @property
    def exact(self) -> bool:
        return all(isinstance(p.at, GaussianRational) for p in self.points)

    def enumerate(self, r) -> list[DivisorPoint]:
        disc = Disc(r)
        return [p for p in self.points if p.at in disc]

    def multiplicity(self, w, kind: str) -> int:
        return self._index[kind].get(w)

    def max_modulus(self) -> float:
        return max((abs(complex(p.at)) for p in self.points), default=0.0)

    def __repr__(self):
        return f"FiniteDivisor({len(self.points)} points)"


class LatticeDivisor:
    """Points ``anchor + k`` for integer k, clipped to the query disc.

    ``direction=+1`` gives k >= 0, ``direction=-1`` gives k <= 0 and
    ``direction=0`` gives every integer k.  The zeros of sin(pi z) are
    ``LatticeDivisor(0, 0, zmult=1)``; the poles of Gamma are
    ``LatticeDivisor(0, -1, pmult=1)``.
    """

    def __init__(self, anchor=0, direction: int = 0, zmult: int = 0, pmult: int = 0,
                 tol: TolerancePolicy = DEFAULT_TOL):
        if direction not in (-1, 0, 1):
            raise ValueError("direction must be -1, 0 or +1")
        DivisorPoint(ZERO_GR, zmult, pmult)  # validates the multiplicity pair
        self.anchor = as_gr(anchor)
        self.direction = direction
        self.zmult = zmult
        self.pmult = pmult
        self.tol = tol

    def _k_range(self, disc: Disc) -> range:
        if disc.infinite:
            raise ValueError("lattice divisors need a finite radius")
        x, y = self.anchor.re, self.anchor.im
        slack = disc.r2 - y * y
        if slack < 0:
            return range(0)
        s = math.sqrt(slack)
        lo = math.floor(-x - s) - 1
        hi = math.ceil(-x + s) + 1
        while (x + lo) ** 2 > slack:
            lo += 1
        while hi >= lo and (x + hi) ** 2 > slack:
            hi -= 1
        if self.direction == 1:
            lo = max(lo, 0)
        elif self.direction == -1:
            hi = min(hi, 0)
        return range(lo, hi + 1)

    def enumerate(self, r) -> list[DivisorPoint]:
        return [DivisorPoint(self.anchor + k, self.zmult, self.pmult) for k in self._k_range(Disc(r))]

    def multiplicity(self, w, kind: str) -> int:
        m = self.zmult if kind == "zero" else self.pmult
        if not m:
            return 0
        if isinstance(w, GaussianRational):
            k = w - self.anchor
            if not (k.is_real() and k.re.denominator == 1):
                return 0
            k = int(k.re)
        else:
            kc = complex(w) - complex(self.anchor)
            k = round(kc.real)
            if abs(kc - k) > self.tol.unit_gap_eps:
                return 0
        if self.direction * k < 0:
            return 0
        return m

    def __repr__(self):
        return f"LatticeDivisor(anchor={self.anchor}, direction={self.direction}, zmult={self.zmult}, pmult={self.pmult})"


ZERO_GR = as_gr(0)


class SumDivisor:
    """Divisor of a product: multiplicities of the parts add (zeros minus poles)."""

    def __init__(self, parts: Sequence, tol: TolerancePolicy | None = None):
        self.parts = list(parts)
        self.tol = tol or (self.parts[0].tol if self.parts else DEFAULT_TOL)

    def enumerate(self, r) -> list[DivisorPoint]:
        pts = [p for src in self.parts for p in src.enumerate(r)]
        return list(FiniteDivisor(pts, self.tol).points)

    def multiplicity(self, w, kind: str) -> int:
        other = "pole" if kind == "zero" else "zero"
        net = sum(s.multiplicity(w, kind) - s.multiplicity(w, other) for s in self.parts)
        return max(net, 0)


def _point_key(w: Root):
    if isinstance(w, GaussianRational):
        return (float(w.re), float(w.im), 0, w.re, w.im)
    w = complex(w)
    return (w.real, w.imag, 1, 0, 0)


# ---------------------------------------------------------------------------
# constructors from functions
# ---------------------------------------------------------------------------


def divisor_of(f, mode: str = "auto", tol: TolerancePolicy = DEFAULT_TOL) -> FiniteDivisor:
    """Divisor of a Poly, FactoredPoly or RationalFunction."""
    if isinstance(f, FactoredPoly):
        return FiniteDivisor.from_factored(f, None, tol)
    f = as_rational(f)
    if f.is_zero():
        raise ValueError("the zero function has no divisor")
    zeros = roots(f.num, mode, tol) if not f.num.is_constant() else None
    poles = roots(f.den, mode, tol) if not f.den.is_constant() else None
    return FiniteDivisor.from_factored(zeros, poles, tol)


def value_source(f, a, mode: str = "auto", tol: TolerancePolicy = DEFAULT_TOL) -> tuple[FiniteDivisor, str]:
    """``(source, kind)`` whose kind-points are the a-points of f (``a=None`` means infinity)."""
    f = as_rational(f)
    if a is None or (isinstance(a, str) and a.lower() in ("inf", "infinity", "oo")):
        return divisor_of(f, mode, tol), "pole"
    g = f - as_gr(a)
    if g.is_zero():
        raise ValueError("f is identically equal to a")
    if g.num.is_constant():
        return FiniteDivisor((), tol), "zero"
    return FiniteDivisor.from_factored(roots(g.num, mode, tol), None, tol), "zero"


# ---------------------------------------------------------------------------
# lengths
# ---------------------------------------------------------------------------


def _run_length(src: DivisorSource, z0, r, kind: str) -> int:
    disc = Disc(r)
    if z0 not in disc:
        raise ValueError("z0 must lie in the disc")
    step = _step(kind)
    n = 0
    w = z0
    while w in disc and src.multiplicity(w, kind) > 0:
        n += 1
        w = _add(w, step)
    return n


def length_of_zero_at(src: DivisorSource, z0, r=math.inf) -> int:
    """Largest n with z0, z0+1, ..., z0+n-1 zeros inside the closed disc; 0 if z0 is not a zero."""
    z0 = z0 if isinstance(z0, complex) else as_gr(z0)
    return _run_length(src, z0, r, "zero")


def length_of_pole_at(src: DivisorSource, z0, r=math.inf) -> int:
    """Largest n with z0, z0-1, ..., z0-n+1 poles inside the closed disc; 0 if z0 is not a pole."""
    z0 = z0 if isinstance(z0, complex) else as_gr(z0)
    return _run_length(src, z0, r, "pole")


# ---------------------------------------------------------------------------
# chains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Chain:
    start: Root
    length: int
    kind: str
    clipped: bool = False

    def covers(self) -> list[Root]:
        step = _step(self.kind)
        return [_add(self.start, step * k) for k in range(self.length)]

    def key(self):
        return (_point_key(self.start), self.length, self.kind)


@dataclass(frozen=True)
class ChainDecomposition:
    chains: tuple[Chain, ...]
    kind: str
    radius: object
    remainder: str = ""

    @property
    def count(self) -> int:
        return len(self.chains)

    def multiset(self) -> Counter:
        return Counter((c.start, c.length) for c in self.chains)

    def starts(self) -> list[Root]:
        return [c.start for c in self.chains]

    def coverage(self) -> Counter:
        """Multiplicity re-aggregated from the chains."""
        out: Counter = Counter()
        for c in self.chains:
            for w in c.covers():
                out[w] += 1
        return out


def _link(points: list[Root], step: int, eps: float) -> list[int | None]:
    """succ[i] = index of points[i] + step, if present."""
    exact = {w: i for i, w in enumerate(points) if isinstance(w, GaussianRational)}
    approx = [(i, complex(w)) for i, w in enumerate(points) if not isinstance(w, GaussianRational)]
    succ: list[int | None] = []
    for w in points:
        target = _add(w, step)
        j = exact.get(target) if isinstance(target, GaussianRational) else None
        if j is None and (approx or not isinstance(target, GaussianRational)):
            tc = complex(target)
            cands = approx if isinstance(target, GaussianRational) else approx + [(i, complex(e)) for e, i in exact.items()]
            for i2, c in cands:
                if abs(c - tc) <= eps:
                    j = i2
                    break
        succ.append(j)
    return succ


def chain_decompose(src: DivisorSource, r=math.inf, kind: str = "zero", rng: random.Random | None = None) -> ChainDecomposition:
    """Greedy extraction of initial shifting points inside the closed disc.

    Repeatedly pick a point with positive remaining multiplicity whose
    predecessor (w-1 for zeros, w+1 for poles) is not a remaining point of
    the disc, strip one unit along the maximal run, and record the chain.
    ``rng`` randomises the selection order; the resulting multiset does not
    depend on it.
    """
    step = _step(kind)
    disc = Disc(r)
    pts = [p for p in src.enumerate(r) if p.mult(kind) > 0]
    locs = [p.at for p in pts]
    mult = [p.mult(kind) for p in pts]
    succ = _link(locs, step, src.tol.unit_gap_eps)
    pred: list[int | None] = [None] * len(locs)
    for i, j in enumerate(succ):
        if j is not None:
            pred[j] = i
    chains = []
    while True:
        starts = [i for i in range(len(locs)) if mult[i] > 0 and (pred[i] is None or mult[pred[i]] == 0)]
        if not starts:
            break
        i = rng.choice(starts) if rng is not None else starts[0]
        run = [i]
        j = succ[i]
        while j is not None and mult[j] > 0:
            run.append(j)
            j = succ[j]
        for k in run:
            mult[k] -= 1
        clipped = False
        if not disc.infinite:
            after, before = _add(locs[run[-1]], step), _add(locs[i], -step)
            clipped = any(w not in disc and src.multiplicity(w, kind) > 0 for w in (after, before))
        chains.append(Chain(locs[i], len(run), kind, clipped))
    chains.sort(key=Chain.key)
    outside = ""
    if isinstance(src, FiniteDivisor):
        n_out = sum(p.mult(kind) for p in src.points) - sum(p.mult(kind) for p in pts)
        outside = f"{n_out} {kind}(s) outside the disc" if n_out else "chain-free in the disc"
    return ChainDecomposition(tuple(chains), kind, r, outside)


def closed_form_count(src: DivisorSource, r=math.inf, kind: str = "zero") -> int:
    """sum_w (ord_w - min(ord_w, Ord_{w-step in disc})) over the closed disc.

    Independent of :func:`chain_decompose`: it queries multiplicities directly
    instead of building chains.
    """
    disc = Disc(r)
    step = _step(kind)
    total = 0
    for p in src.enumerate(r):
        m = p.mult(kind)
        if not m:
            continue
        prev = _add(p.at, -step)
        prev_m = src.multiplicity(prev, kind) if prev in disc else 0
        total += m - min(m, prev_m)
    return total


def difference_radical(p: FactoredPoly, tol: TolerancePolicy = DEFAULT_TOL) -> FactoredPoly:
    """Product of (z - chain start) over the zero chains of p."""
    if p.degree == 0:
        return FactoredPoly(as_gr(1), ())
    dec = chain_decompose(FiniteDivisor.from_factored(p, None, tol), math.inf, "zero")
    return FactoredPoly(as_gr(1), tuple((s, 1) for s in dec.starts()), exact=p.exact)


def classic_radical(p: FactoredPoly) -> FactoredPoly:
    return FactoredPoly(as_gr(1), tuple((w, 1) for w, _ in p.roots), exact=p.exact)


@dataclass(frozen=True)
class PrimeCheck:
    ok: bool
    witness: tuple | None = None
    pair: tuple[int, int] | None = None

    def __bool__(self):
        return self.ok


def _zero_points(src: DivisorSource, r) -> list[Root]:
    return [p.at for p in src.enumerate(r) if p.zmult > 0]


def relatively_shifting_prime(f: DivisorSource, g: DivisorSource, r=math.inf) -> PrimeCheck:
    """True iff no zero w of one function has w+1 as a zero of the other (both in the disc).

    On failure the witness is ``(w, w+1)`` with w a zero of the first-named
    function of the adjacent pair.
    """
    disc = Disc(r)
    for a, b in ((f, g), (g, f)):
        for w in _zero_points(a, r):
            nxt = _add(w, 1)
            if nxt in disc and b.multiplicity(nxt, "zero") > 0:
                return PrimeCheck(False, (w, nxt))
    return PrimeCheck(True)


def pairwise_shifting_prime(sources: Sequence[DivisorSource], r=math.inf) -> PrimeCheck:
    for i, j in combinations(range(len(sources)), 2):
        res = relatively_shifting_prime(sources[i], sources[j], r)
        if not res:
            return PrimeCheck(False, res.witness, (i, j))
    return PrimeCheck(True)


# ---------------------------------------------------------------------------
# exchange formats
# ---------------------------------------------------------------------------


def format_point(w: Root) -> str:
    if isinstance(w, GaussianRational):
        return str(w)
    w = complex(w)
    return f"{w.real:.12g}{w.imag:+.12g}*i" if abs(w.imag) > 0 else f"{w.real:.12g}"


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def divisor_to_json(points: Iterable[DivisorPoint]) -> list[dict]:
    out = []
    for p in points:
        w = p.at
        if isinstance(w, GaussianRational):
            re_s, im_s = _frac_str(w.re), _frac_str(w.im)
        else:
            re_s, im_s = repr(complex(w).real), repr(complex(w).imag)
        out.append({"re": re_s, "im": im_s, "zmult": p.zmult, "pmult": p.pmult})
    return out


def _load_point(d: dict) -> DivisorPoint:
    re_ = parse_scalar(str(d.get("re", "0")))
    im_ = parse_scalar(str(d.get("im", "0")))
    if not (re_.is_real() and im_.is_real()):
        raise ValueError("re/im must be real rationals")
    return DivisorPoint(re_ + im_ * as_gr(1j), int(d.get("zmult", 0)), int(d.get("pmult", 0)))


def divisor_from_json(obj, tol: TolerancePolicy = DEFAULT_TOL) -> DivisorSource:
    """Load a divisor from the JSON exchange format.

    A bare list is a finite divisor of ``{re, im, zmult, pmult}`` records.
    An object may carry ``points`` (such a list) and ``lattices``, each
    ``{anchor: {re, im}, direction, zmult, pmult}``.
    """
    if isinstance(obj, str):
        obj = json.loads(obj)
    if isinstance(obj, list):
        return FiniteDivisor([_load_point(d) for d in obj], tol)
    if not isinstance(obj, dict):
        raise ValueError("divisor JSON must be a list or an object")
    parts: list = []
    pts = obj.get("points", [])
    if pts:
        parts.append(FiniteDivisor([_load_point(d) for d in pts], tol))
    for lat in obj.get("lattices", []):
        anc = lat.get("anchor", {"re": "0", "im": "0"})
        anchor = parse_scalar(str(anc.get("re", "0"))) + parse_scalar(str(anc.get("im", "0"))) * as_gr(1j)
        parts.append(LatticeDivisor(anchor, int(lat.get("direction", 0)), int(lat.get("zmult", 0)),
                                    int(lat.get("pmult", 0)), tol))
    if not parts:
        return FiniteDivisor((), tol)
    if len(parts) == 1:
        return parts[0]
    return SumDivisor(parts, tol)


def chains_to_json(dec: ChainDecomposition) -> list[dict]:
    out = []
    for c in dec.chains:
        d = {"start": format_point(c.start), "length": c.length, "kind": c.kind}
        if c.clipped:
            d["clipped"] = True
        out.append(d)
    return out
