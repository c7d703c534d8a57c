"""Command-line entry point.

Exit codes: 0 success or "holds", 1 violated or a counterexample found,
2 a precondition failed, 3 bad input.  Reports go to stdout as JSON;
errors go to stderr as ``{"error": ..., "detail": ...}``.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Sequence

from ..casorati import casorati
from ..counting import (
    CSV_HEADER,
    N_bar_delta,
    N_classical,
    curve_rows,
    geometric_grid,
    n_bar_delta,
    n_classical,
    n_tilde_iklt,
)
from ..divisor import (
    FiniteDivisor,
    chain_decompose,
    chains_to_json,
    classic_radical,
    difference_radical,
    divisor_from_json,
    divisor_of,
    format_point,
    length_of_pole_at,
    length_of_zero_at,
    value_source,
)
from ..poly import ExactFactorizationIncomplete, FactoredPoly, NonConvergence, Poly, Z, roots
from ..scalar import parse_scalar
from ..theorems.abc import counterexample_abc, verify_entire_abc, verify_m_term, verify_poly_abc
from ..theorems.fermat import fermat_check, fermat_search
from ..theorems.report import HOLDS, PreconditionFailed, jsonable
from ..theorems.smt import shifting_share, initial_points, smt_report
from .config import Config, ConfigError, load_config
from .expr import ExpressionSyntaxError, parse_function

__all__ = ["main", "build_parser", "InputError", "format_factored"]


class InputError(Exception):
    def __init__(self, kind: str, detail: str):
        super().__init__(detail)
        self.kind = kind
        self.detail = detail


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2
        raise InputError("usage", message)


def format_factored(fp: FactoredPoly) -> str:
    """Product form such as ``z^2*(z - 1)*(z - 2)``."""
    parts = []
    if fp.lead != 1 or not fp.roots:
        parts.append(str(fp.lead) if fp.lead.is_real() and fp.lead.re.denominator == 1 else f"({fp.lead})")
    for w, m in fp.roots:
        if w == 0:
            base, wrap = "z", False
        elif isinstance(w, complex):
            base, wrap = f"z - ({format_point(w)})", True
        else:
            base, wrap = str(Z - w), True
        fac = f"({base})" if wrap else base
        parts.append(fac if m == 1 else f"{fac}^{m}")
    return "*".join(parts)


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------


def _function(text: str):
    if text is None:
        raise InputError("input", "an expression is required")
    try:
        return parse_function(text)
    except ExpressionSyntaxError as exc:
        raise InputError("syntax", str(exc)) from exc
    except (ZeroDivisionError, ValueError) as exc:
        raise InputError("input", str(exc)) from exc


def _poly(text: str) -> Poly:
    f = _function(text)
    if not f.is_polynomial():
        raise InputError("input", f"{text!r} is not a polynomial")
    return f.num


def _radius(text):
    if text is None or str(text).lower() in ("inf", "infinity"):
        return math.inf
    try:
        r = parse_scalar(str(text))
    except ValueError as exc:
        raise InputError("input", f"bad radius {text!r}") from exc
    if not r.is_real() or r.re < 0:
        raise InputError("input", "radius must be a nonnegative real")
    return r.re


def _point(text: str):
    try:
        return parse_scalar(text)
    except ValueError as exc:
        raise InputError("input", f"bad point {text!r}") from exc


def _value(text):
    if text is None or str(text).lower() in ("inf", "infinity", "oo"):
        return None
    return _point(text)


def _source(args, cfg: Config):
    """Divisor source from an expression or a divisor file."""
    if getattr(args, "divisor", None):
        if args.expr:
            raise InputError("input", "give either an expression or --divisor, not both")
        try:
            with open(args.divisor, encoding="utf-8") as fh:
                return divisor_from_json(json.load(fh), cfg.tol)
        except (OSError, json.JSONDecodeError, ValueError, TypeError, KeyError) as exc:
            raise InputError("input", f"cannot load divisor file: {exc}") from exc
    f = _function(args.expr)
    if f.is_zero():
        raise InputError("input", "the zero function has no divisor")
    return divisor_of(f, "auto", cfg.tol)


def _needs_radius(src, r):
    if math.isinf(r) and not isinstance(src, FiniteDivisor):
        raise InputError("input", "lattice divisors need a finite --radius")


def _grid(args, cfg: Config) -> list[float]:
    r_min = args.r_min if args.r_min is not None else cfg.r_min
    r_max = args.r_max if args.r_max is not None else cfg.r_max
    points = args.points if args.points is not None else cfg.points
    try:
        return geometric_grid(r_min, r_max, points)
    except ValueError as exc:
        raise InputError("input", str(exc)) from exc


def _kind(text: str) -> str:
    return {"zeros": "zero", "zero": "zero", "poles": "pole", "pole": "pole"}[text]


def _radius_json(r):
    return "inf" if isinstance(r, float) and math.isinf(r) else jsonable(r)


# ---------------------------------------------------------------------------
# commands: each returns (payload, exit code)
# ---------------------------------------------------------------------------


def cmd_factor(args, cfg):
    r = _radius(args.radius)
    if args.delta:
        src = _source(args, cfg)
        _needs_radius(src, r)
        out = {"radius": _radius_json(r)}
        for kind in ("zero", "pole"):
            dec = chain_decompose(src, r, kind)
            out[f"{kind}_chains"] = chains_to_json(dec)
            out[f"nBarDelta_{kind}s"] = dec.count
        return out, 0
    f = _function(args.expr)
    if f.is_zero():
        raise InputError("input", "cannot factor the zero function")
    out = {"input": str(f)}
    for name, p in (("zeros", f.num), ("poles", f.den)):
        fp = roots(p, args.mode, cfg.tol) if not p.is_constant() else FactoredPoly(p.lead, ())
        out[name] = [{"at": format_point(w), "mult": m} for w, m in fp.roots]
        out[f"{name}_exact"] = fp.exact
        if name == "zeros":
            out["lead"] = str(f.num.lead / f.den.lead)
    return out, 0


def cmd_radical(args, cfg):
    p = _poly(args.expr)
    if p.is_zero():
        raise InputError("input", "the zero polynomial has no radical")
    fp = roots(p, "auto", cfg.tol) if not p.is_constant() else FactoredPoly(p.lead, ())
    rad = classic_radical(fp) if args.classic else difference_radical(fp, cfg.tol)
    out = {"kind": "classic" if args.classic else "difference", "radical": format_factored(rad), "degree": rad.degree}
    if rad.exact:
        out["expanded"] = str(rad.expand())
    return out, 0


def cmd_length(args, cfg):
    src = _source(args, cfg)
    r = _radius(args.radius)
    _needs_radius(src, r)
    z0 = _point(args.at)
    try:
        n = length_of_pole_at(src, z0, r) if args.pole else length_of_zero_at(src, z0, r)
    except ValueError as exc:
        raise InputError("input", str(exc)) from exc
    return {"at": str(z0), "kind": "pole" if args.pole else "zero", "radius": _radius_json(r), "length": n}, 0


def cmd_count(args, cfg):
    src = _source(args, cfg)
    kind = _kind(args.kind)
    if args.value is not None and args.divisor:
        raise InputError("input", "--value needs an expression, not a divisor file")
    if args.value is not None:
        src, kind = value_source(_function(args.expr), _value(args.value), "auto", cfg.tol)
    r = _radius(args.radius)
    _needs_radius(src, r)
    out = {"kind": kind, "radius": _radius_json(r), "n": n_classical(src, r, kind), "nBarDelta": n_bar_delta(src, r, kind),
           "nTilde": n_tilde_iklt(src, r, kind)}
    if not math.isinf(r) and r > 0:
        out["N"] = N_classical(src, float(r), kind)
        out["NBarDelta"] = N_bar_delta(src, float(r), kind)
    return out, 0


def cmd_curve(args, cfg):
    src = _source(args, cfg)
    kind = _kind(args.kind)
    if args.value is not None:
        src, kind = value_source(_function(args.expr), _value(args.value), "auto", cfg.tol)
    rows = curve_rows(src, kind, _grid(args, cfg))
    try:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(CSV_HEADER)
            for row in rows:
                w.writerow([repr(float(row[0])), row[1], repr(row[2]), row[3], repr(row[4])])
    except OSError as exc:
        raise InputError("io", str(exc)) from exc
    return {"out": args.out, "rows": len(rows), "columns": list(CSV_HEADER)}, 0


def _report_exit(report) -> int:
    return 0 if report.verdict == HOLDS else 1


def cmd_abc(args, cfg):
    if args.action == "counterexample":
        rep = counterexample_abc(_grid(args, cfg), args.eps, args.delta_order if args.delta_order is not None else 1.0,
                                 tol=cfg.tol)
        return rep.to_json(), _report_exit(rep)
    a, b, c = (_poly(x) for x in (args.a, args.b, args.c))
    if args.entire:
        rep = verify_entire_abc(a, b, c, _grid(args, cfg), args.eps,
                                args.delta_order if args.delta_order is not None else 0.0, tol=cfg.tol)
    else:
        rep = verify_poly_abc(a, b, c, cfg.tol)
    return rep.to_json(), _report_exit(rep)


def cmd_mterm(args, cfg):
    fs = [_poly(x) for x in args.f]
    rep = verify_m_term(fs, _grid(args, cfg), args.eps, args.delta_order or 0.0, tol=cfg.tol)
    return rep.to_json(), _report_exit(rep)


def cmd_smt(args, cfg):
    f = _function(args.f)
    values = [_value(v) for v in args.values.split(",") if v.strip()]
    rep = smt_report(f, values, _grid(args, cfg), tol=cfg.tol)
    return rep.to_json(), _report_exit(rep)


def cmd_fermat(args, cfg):
    if args.n < 1:
        raise InputError("input", "n must be positive")
    if args.action == "check":
        res = fermat_check(_poly(args.a), _poly(args.b), _poly(args.c), args.n, cfg.tol)
        out = res.to_json()
        if res.status == "precondition_fails":
            return out, 2
        if res.valid:
            out["consistent_with_bound"] = args.n <= 2
            return out, 0 if args.n <= 2 else 1
        return out, 1
    res = fermat_search(args.n, args.max_degree, args.box, args.order_seed, cfg.tol)
    out = res.to_json()
    return out, 1 if (res.admissible and args.n >= 3) else 0


def cmd_casorati(args, cfg):
    fs = [_function(x) for x in args.exprs]
    det = casorati(*fs)
    return {"casorati": str(det), "linearly_independent": not det.is_zero()}, 0


def cmd_share(args, cfg):
    f, g = _function(args.f), _function(args.g)
    a = _value(args.value)
    r = _radius(args.radius)
    shared = shifting_share(f, g, a, r, cfg.tol)
    pts = {name: [format_point(w) for w in initial_points(h, a, r, cfg.tol)] for name, h in (("f", f), ("g", g))}
    return {"value": "inf" if a is None else str(a), "radius": _radius_json(r), "share": shared,
            "f_initial_points": pts["f"], "g_initial_points": pts["g"]}, 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _grid_opts(p):
    p.add_argument("--r-min", type=float, default=None)
    p.add_argument("--r-max", type=float, default=None)
    p.add_argument("--points", type=int, default=None)


def _source_opts(p):
    p.add_argument("expr", nargs="?", help="function expression in z")
    p.add_argument("--divisor", help="JSON divisor file instead of an expression")


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgParser(prog="diffnev", description="Difference-calculus divisors, counting functions and theorem checks.")
    ap.add_argument("--config", help="INI file with a [diffnev] section")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    p = sub.add_parser("factor", help="roots, or chain decomposition with --delta")
    _source_opts(p)
    p.add_argument("--delta", action="store_true", help="decompose into falling-factorial chains")
    p.add_argument("--radius", default=None)
    p.add_argument("--mode", choices=("exact", "auto", "numeric"), default="auto")
    p.set_defaults(run=cmd_factor)

    p = sub.add_parser("radical", help="difference (default) or classical radical of a polynomial")
    p.add_argument("expr")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--classic", action="store_true")
    g.add_argument("--delta", action="store_true")
    p.set_defaults(run=cmd_radical)

    p = sub.add_parser("length", help="length of a zero (or pole) at a point")
    _source_opts(p)
    p.add_argument("--at", required=True)
    p.add_argument("--pole", action="store_true")
    p.add_argument("--radius", default=None)
    p.set_defaults(run=cmd_length)

    p = sub.add_parser("count", help="n, n-bar-Delta and n-tilde in a disc")
    _source_opts(p)
    p.add_argument("--kind", choices=("zeros", "poles"), default="zeros")
    p.add_argument("--radius", required=True)
    p.add_argument("--value", default=None, help="count a-points of the expression instead")
    p.set_defaults(run=cmd_count)

    p = sub.add_parser("curve", help="write r,n,N,nBarDelta,NBarDelta as CSV")
    _source_opts(p)
    p.add_argument("--kind", choices=("zeros", "poles"), default="zeros")
    p.add_argument("--value", default=None)
    p.add_argument("--out", required=True)
    _grid_opts(p)
    p.set_defaults(run=cmd_curve)

    p = sub.add_parser("abc", help="difference Stothers-Mason checks")
    p.add_argument("action", choices=("verify", "counterexample"))
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--c")
    p.add_argument("--entire", action="store_true", help="T-tilde margin on a radius grid instead of degrees")
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--delta-order", type=float, default=None, help="order bound delta in the margin")
    _grid_opts(p)
    p.set_defaults(run=cmd_abc)

    p = sub.add_parser("mterm", help="m-term inequality for f1 + ... + fm = f(m+1)")
    p.add_argument("action", choices=("verify",))
    p.add_argument("--f", action="append", required=True, help="repeat; the last one is the sum")
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--delta-order", type=float, default=None)
    _grid_opts(p)
    p.set_defaults(run=cmd_mterm)

    p = sub.add_parser("smt", help="truncated second main theorem slope report")
    p.add_argument("action", choices=("report",))
    p.add_argument("--f", required=True)
    p.add_argument("--values", required=True, help="comma-separated values a_1,...,a_q")
    _grid_opts(p)
    p.set_defaults(run=cmd_smt)

    p = sub.add_parser("fermat", help="falling-power Fermat equations")
    p.add_argument("action", choices=("check", "search"))
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--c")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--box", type=int, default=3)
    p.add_argument("--order-seed", type=int, default=None)
    p.set_defaults(run=cmd_fermat)

    p = sub.add_parser("casorati", help="Casorati determinant")
    p.add_argument("exprs", nargs="+")
    p.set_defaults(run=cmd_casorati)

    p = sub.add_parser("share", help="do f and g shifting share a value in a disc")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--value", required=True)
    p.add_argument("--radius", default=None)
    p.set_defaults(run=cmd_share)
    return ap


def _emit_error(kind: str, detail: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "detail": detail}) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = load_config(args.config) if args.config else Config()
        for need in ("a", "b", "c"):
            if getattr(args, "action", None) in ("verify", "check") and hasattr(args, need) and getattr(args, need) is None:
                raise InputError("usage", f"--{need} is required")
        payload, code = args.run(args, cfg)
    except InputError as exc:
        _emit_error(exc.kind, exc.detail)
        return 3
    except ConfigError as exc:
        _emit_error("config", str(exc))
        return 3
    except PreconditionFailed as exc:
        if exc.report is not None:
            sys.stdout.write(json.dumps(exc.report.to_json(), indent=2) + "\n")
        _emit_error("precondition_failed", str(exc))
        return 2
    except ExactFactorizationIncomplete as exc:
        _emit_error("inexact", f"no exact factorization; remainder {exc.remainder}")
        return 3
    except (NonConvergence, ArithmeticError, ValueError) as exc:
        _emit_error("input", str(exc))
        return 3
    sys.stdout.write(json.dumps(jsonable(payload), indent=2) + "\n")
    return code
