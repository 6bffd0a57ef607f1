"""Command-line interface.

Subcommands: poly, series, table, eval, verify-builtin, check. The
global --format flag (before the subcommand) switches between human text
and a single machine-readable JSON document per run.

Exit codes: 0 every check passed, 1 a verification failed, 2 bad input
(malformed arguments, unreadable file, identity parse error), 3 internal
fault (numeric route disagreement, table-form violation).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from . import dsl
from .classical import cassini_check, fib_poly, laurent_check, lucas_poly
from .exactcore import QuadExt, Rational, UniPoly, as_rational, poly_str
from .interpolants import (Family, RELATIONS, RouteDisagreementError,
                           closed_series, def_series, exact_at_one,
                           lambda_num, lambda_num_routes, phi_num,
                           phi_num_routes, radical_form_check, relation_check,
                           specialize)
from .sampling import DEFAULT_SEED
from .series import DEFAULT_ORDER, TruncSeries

MAX_POLY_INDEX = 500


class TableFormError(RuntimeError):
    """A table entry was not purely rational or purely a root multiple."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    order: int = DEFAULT_ORDER
    seed: int = DEFAULT_SEED
    samples: int = 100
    tolerance: float = 1e-9
    fmt: str = "text"


@dataclass
class ReportItem:
    name: str
    status: str  # pass | fail | error
    detail: str
    micros: int


@dataclass
class RunReport:
    config: RunConfig
    items: list[ReportItem] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(item.status == "pass" for item in self.items)


def _frac_str(q: Rational) -> str:
    return f"{q.numerator}/{q.denominator}"


def _quad_json(v: QuadExt) -> dict:
    return {"a": _frac_str(v.a), "b": _frac_str(v.b)}


def _poly_json(p: UniPoly) -> list[str]:
    return [_frac_str(c) for c in p.coeffs]


def _emit(doc: dict):
    print(json.dumps(doc, indent=2))


def _report_doc(report: RunReport) -> dict:
    cfg = report.config
    return {
        "command": cfg.command,
        "order": cfg.order,
        "seed": cfg.seed,
        "samples": cfg.samples,
        "tolerance": cfg.tolerance,
        "items": [{"name": i.name, "status": i.status,
                   "detail": i.detail, "micros": i.micros}
                  for i in report.items],
    }


def _print_report(report: RunReport, fmt: str):
    if fmt == "machine":
        _emit(_report_doc(report))
        return
    width = max((len(i.name) for i in report.items), default=0)
    for i in report.items:
        print(f"{i.status.upper():5s} {i.name:{width}s}  {i.detail} [{i.micros} us]")
    passed = sum(1 for i in report.items if i.status == "pass")
    verdict = "PASS" if report.all_passed else "FAIL"
    print(f"overall: {verdict} ({passed}/{len(report.items)} items passed)")


def _run_item(name: str, thunk) -> ReportItem:
    start = time.perf_counter_ns()
    try:
        ok, detail = thunk()
        status = "pass" if ok else "fail"
    except Exception as exc:  # isolate items so the suite always finishes
        status, detail = "error", f"{type(exc).__name__}: {exc}"
    micros = (time.perf_counter_ns() - start) // 1000
    return ReportItem(name, status, detail, micros)


# -- poly ----------------------------------------------------------------------

def cmd_poly(kind: str, n: int, fmt: str) -> int:
    if not 0 <= n <= MAX_POLY_INDEX:
        print(f"error: index must be in 0..{MAX_POLY_INDEX}, got {n}",
              file=sys.stderr)
        return 2
    p = fib_poly(n) if kind == "fib" else lucas_poly(n)
    label = f"{'F' if kind == 'fib' else 'L'}_{n}(x)"
    if fmt == "machine":
        _emit({"command": "poly", "kind": kind, "n": n,
               "coefficients": _poly_json(p), "rendered": poly_str(p)})
    else:
        coeffs = " ".join(str(c) for c in p.coeffs) or "0"
        print(f"coefficients (low to high): {coeffs}")
        print(f"{label} = {poly_str(p)}")
    return 0


# -- series ----------------------------------------------------------------------

def cmd_series(family: str, order: int, t_value, fmt: str) -> int:
    if order < 1:
        print("error: order must be >= 1", file=sys.stderr)
        return 2
    s = def_series(Family(family), order)
    if t_value is not None:
        s = s.eval_t(t_value)
    if fmt == "machine":
        if t_value is None:
            coeffs = [_poly_json(c) for c in s.coeffs]
        else:
            coeffs = [_frac_str(c) for c in s.coeffs]
        _emit({"command": "series", "family": family, "order": order,
               "t": None if t_value is None else _frac_str(t_value),
               "coefficients": coeffs})
        return 0
    if t_value is None:
        print(f"{family}, order {order}, coefficients as polynomials in t:")
        for m, c in enumerate(s.coeffs):
            if not c.is_zero:
                print(f"  x^{m}: {poly_str(c, descending=True)}")
        return 0
    print(f"{family} at t = {t_value}, order {order}:")
    print(f"  {poly_str(UniPoly('x', s.coeffs))}")
    return 0


# -- table ----------------------------------------------------------------------

def _quad_str(v: QuadExt) -> str:
    if v.a * v.b != 0:
        raise TableFormError(
            f"table entry {v.a} + {v.b}*sqrt5 is neither rational nor a pure "
            "root multiple")
    if v.b == 0:
        return str(v.a)
    if v.b.denominator == 1:
        return "√5" if v.b == 1 else f"{v.b}√5"
    m = v.b * 5
    if m.denominator == 1:
        return f"{m}/√5"
    return f"{v.b}√5"


def cmd_table(max_k: int, fmt: str) -> int:
    if max_k < 0:
        print("error: --max-k must be >= 0", file=sys.stderr)
        return 2
    ks = range(max_k + 1)
    one = Rational(1)
    rows: list[tuple[str, list]] = [
        ("F_k", [QuadExt(fib_poly(k)(one), Rational(0)) for k in ks]),
        ("Phi0(k)", [exact_at_one(Family.PHI0, k) for k in ks]),
        ("Phi1(k)", [exact_at_one(Family.PHI1, k) for k in ks]),
        ("L_k", [QuadExt(lucas_poly(k)(one), Rational(0)) for k in ks]),
        ("Lam0(k)", [exact_at_one(Family.LAM0, k) for k in ks]),
        ("Lam1(k)", [exact_at_one(Family.LAM1, k) for k in ks]),
    ]
    if fmt == "machine":
        _emit({"command": "table", "max_k": max_k,
               "rows": {name: [_quad_json(v) for v in values]
                        for name, values in rows}})
        return 0
    cells = [["k"] + [str(k) for k in ks]]
    for name, values in rows:
        cells.append([name] + [_quad_str(v) for v in values])
    widths = [max(len(row[i]) for row in cells) for i in range(len(cells[0]))]
    for row in cells:
        print("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
    return 0


# -- eval ----------------------------------------------------------------------

def cmd_eval(which: str, j: int, t: float, x: float, verbose: bool,
             fmt: str) -> int:
    value = phi_num(j, t, x) if which == "phi" else lambda_num(j, t, x)
    routes = (phi_num_routes if which == "phi" else lambda_num_routes)(j, t, x)
    if fmt == "machine":
        _emit({"command": "eval", "which": which, "j": j, "t": t, "x": x,
               "value": value,
               "routes": {"root-power": routes[0], "hyperbolic": routes[1]}})
        return 0
    print(value)
    if verbose:
        print(f"  root-power route: {routes[0]!r}")
        print(f"  hyperbolic route: {routes[1]!r}")
    return 0


# -- verify-builtin --------------------------------------------------------------

def _first_mismatch(lhs: TruncSeries, rhs: TruncSeries) -> int | None:
    for m in range(lhs.order):
        if lhs.coeffs[m] != rhs.coeffs[m]:
            return m
    return None


def builtin_check_items(order: int):
    """Yield (name, thunk) pairs covering the whole exact identity suite."""

    def oracle(family):
        def thunk():
            lhs = def_series(family, order)
            rhs = closed_series(family, order)
            m = _first_mismatch(lhs, rhs)
            if m is None:
                return True, f"all {order} coefficient polynomials agree"
            return False, (f"first mismatch at x^{m}: "
                           f"{lhs.coeffs[m]} vs {rhs.coeffs[m]}")
        return thunk

    for family in Family:
        yield f"oracle {family.value}", oracle(family)

    def laurent(kind, parity):
        def thunk():
            bad = [n for n in range(11) if not laurent_check(kind, parity, n)]
            if bad:
                return False, f"failed at n = {bad}"
            return True, "exact in the Laurent ring for n = 0..10"
        return thunk

    for kind in ("fib", "lucas"):
        for parity in ("even", "odd"):
            yield f"laurent {kind} {parity}", laurent(kind, parity)

    def relation(name, j):
        def thunk():
            if relation_check(name, j, order):
                return True, f"exact modulo x^{order}"
            return False, "series coefficients differ"
        return thunk

    for name in RELATIONS:
        for j in (0, 1):
            yield f"relation {name} j={j}", relation(name, j)

    def cassini(kind):
        def thunk():
            bad = [n for n in range(1, 21) if not cassini_check(kind, n)]
            if bad:
                return False, f"failed at n = {bad}"
            return True, "exact for n = 1..20"
        return thunk

    for kind in ("fib", "lucas"):
        yield f"cassini {kind}", cassini(kind)

    def radical(which):
        def thunk():
            bad = [k for k in range(1, 5) if not radical_form_check(which, k)]
            if bad:
                return False, f"failed at k = {bad}"
            return True, "squared forms agree in Q for k = 1..4"
        return thunk

    for which in ("phi0-odd", "phi1-even", "lam0-odd", "lam1-even"):
        yield f"radical {which}", radical(which)

    def specialization(family, target):
        start = 0 if family in (Family.PHI0, Family.LAM0) else 1
        ks = [k for k in range(start, 14, 2) if k < order]

        def thunk():
            bad = [k for k in ks if specialize(family, k, order) != target(k)]
            if bad:
                return False, f"failed at k = {bad}"
            return True, f"reproduces the classical polynomials for k in {ks}"
        return thunk

    for family, target in ((Family.PHI0, fib_poly), (Family.PHI1, fib_poly),
                           (Family.LAM0, lucas_poly), (Family.LAM1, lucas_poly)):
        yield f"specialize {family.value}", specialization(family, target)


def cmd_verify_builtin(cfg: RunConfig) -> int:
    if cfg.order < 8:
        print("error: verification needs --order >= 8", file=sys.stderr)
        return 2
    report = RunReport(cfg)
    for name, thunk in builtin_check_items(cfg.order):
        report.items.append(_run_item(name, thunk))
    _print_report(report, cfg.fmt)
    return 0 if report.all_passed else 1


# -- check ----------------------------------------------------------------------

def cmd_check(path: str, cfg: RunConfig) -> int:
    if cfg.order < 8:
        print("error: verification needs --order >= 8", file=sys.stderr)
        return 2
    if cfg.samples < 1:
        print("error: --samples must be >= 1", file=sys.stderr)
        return 2
    if not cfg.tolerance > 0:
        print("error: --tol must be positive", file=sys.stderr)
        return 2
    try:
        with open(path, encoding="utf-8") as fh:
            raw_lines = fh.read().splitlines()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return 2

    report = RunReport(cfg)
    any_parse_error = False
    for lineno, raw in enumerate(raw_lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            ast = dsl.parse(text)
        except (dsl.LexError, dsl.ParseError) as exc:
            any_parse_error = True
            report.items.append(ReportItem(
                f"line {lineno}", "error", f"parse error at line {lineno}: {exc}", 0))
            continue

        def thunk(ast=ast):
            exact = dsl.check_exact(ast, cfg.order)
            numeric = dsl.check_numeric(ast, cfg.samples, cfg.seed,
                                        cfg.tolerance)
            ok = exact.passed and numeric.passed
            return ok, f"exact: {exact.detail()}; numeric: {numeric.detail()}"

        item = _run_item(f"line {lineno}", thunk)
        item.name = f"line {lineno}: {text}"
        report.items.append(item)
    _print_report(report, cfg.fmt)
    if any_parse_error:
        return 2
    return 0 if report.all_passed else 1


# -- argument plumbing ------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibinterp",
        description="Exact interpolation series for Fibonacci and Lucas "
                    "polynomials, with identity verification.")
    parser.add_argument("--format", choices=("text", "machine"),
                        default="text", help="output format (default text)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="print one classical polynomial")
    p.add_argument("kind", choices=("fib", "lucas"))
    p.add_argument("n", type=int)

    p = sub.add_parser("series", help="print an interpolation series")
    p.add_argument("family", choices=[f.value for f in Family])
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--t", type=as_rational, default=None, metavar="P/Q",
                   help="evaluate coefficients at this rational t")

    p = sub.add_parser("table", help="exact value table at x = 1")
    p.add_argument("--max-k", type=int, default=8)

    p = sub.add_parser("eval", help="numeric evaluation at real (t, x)")
    p.add_argument("which", choices=("phi", "lambda"))
    p.add_argument("--j", type=int, choices=(0, 1), required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--verbose", action="store_true",
                   help="also print both computation routes")

    p = sub.add_parser("verify-builtin", help="run the builtin identity suite")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)

    p = sub.add_parser("check", help="verify identities from a file")
    p.add_argument("file")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    p.add_argument("--tol", type=float, default=1e-9)

    return parser


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    fmt = args.format
    try:
        if args.command == "poly":
            return cmd_poly(args.kind, args.n, fmt)
        if args.command == "series":
            return cmd_series(args.family, args.order, args.t, fmt)
        if args.command == "table":
            return cmd_table(args.max_k, fmt)
        if args.command == "eval":
            return cmd_eval(args.which, args.j, args.t, args.x,
                            args.verbose, fmt)
        if args.command == "verify-builtin":
            cfg = RunConfig("verify-builtin", order=args.order, fmt=fmt)
            return cmd_verify_builtin(cfg)
        cfg = RunConfig("check", order=args.order, seed=args.seed,
                        samples=args.samples, tolerance=args.tol, fmt=fmt)
        return cmd_check(args.file, cfg)
    except (RouteDisagreementError, TableFormError) as exc:
        print(f"internal fault: {exc}", file=sys.stderr)
        return 3


def entry():
    sys.exit(run())
