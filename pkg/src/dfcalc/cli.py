"""Command-line front end.

    dfcalc apply  --family caputo --calculus nabla --side left --order 1/2 --base 0 --builtin one
    dfcalc check  --suite all --order 1/2,3/2 --length 8,16
    dfcalc ml     --family nabla --alpha 1 --lambda 0.5 --z 2
    dfcalc solve  --calculus nabla --alpha 1/2 --lambda 0.3 --N 12 --forcing one --method ml

Exit codes: 0 success, 1 identity outside tolerance, 2 usage or domain
error, 3 series non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .differences import apply as apply_op
from .dualities import SUITE_IDS, HarnessConfig, run_all_suites
from .errors import DfcalcError, DomainError, NonConvergenceError
from .grid import GridFn, read_csv, write_csv
from .mittag_leffler import MLSpec, ml_series
from .powers import falling, rising
from .report import DEFAULT_TOL, REPORT_HEADER
from .scalars import floor_order, to_exact
from .solver import FORCINGS, FdeProblem, builtin_forcing, solve
from .sums import CALCULI, FAMILIES, SIDES, OpSpec

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONCONVERGENCE = 0, 1, 2, 3
BUILTINS = ("one", "ramp", "square", "monomial:<mu>")


class UsageError(DfcalcError):
    pass


def _rational(text: str) -> Fraction:
    try:
        return to_exact(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(part) for part in text.split(",") if part.strip()]


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _real(text: str) -> float:
    try:
        return float(to_exact(text))
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# -- apply ----------------------------------------------------------------

def builtin_grid(name: str, spec: OpSpec, start: Optional[Fraction], length: int) -> GridFn:
    """Sample a builtin on a window that suits ``spec``.

    By default a left operator's window starts at the base (n-1 points
    earlier for a nabla Caputo difference); a right operator's ends there.
    ``monomial:mu`` is the power (t-a)^mu (rising for nabla, falling for
    delta) for left operators and (b-t)^mu for right ones.
    """
    if length < 1:
        raise UsageError("--length must be positive")
    ext = 0
    if spec.family == "caputo" and spec.calculus == "nabla":
        ext = floor_order(spec.order) - 1
    if start is None:
        start = spec.base - ext if spec.side == "left" else spec.base + ext - (length - 1)
    dist = (lambda t: t - spec.base) if spec.side == "left" else (lambda t: spec.base - t)
    if name == "one":
        fn = lambda t: 1.0
    elif name == "ramp":
        fn = lambda t: float(t)
    elif name == "square":
        fn = lambda t: float(t * t)
    elif name.startswith("monomial:"):
        mu = to_exact(name.split(":", 1)[1])
        pw = rising if spec.calculus == "nabla" else falling
        fn = lambda t: pw(dist(t), mu)
    else:
        raise UsageError(f"unknown builtin {name!r}; expected one of {', '.join(BUILTINS)}")
    return GridFn.from_function(fn, start, length)


def _open_out(path: Optional[str]):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", newline="", encoding="utf-8"), True


def cmd_apply(args) -> int:
    order = args.order
    spec = OpSpec(args.family, args.calculus, args.side, order, args.base)
    if (args.input is None) == (args.builtin is None):
        raise UsageError("give exactly one of --input or --builtin")
    if args.input is not None:
        with open(args.input, newline="", encoding="utf-8") as fh:
            f = read_csv(fh)
    else:
        f = builtin_grid(args.builtin, spec, args.start, args.length)
    kw = {"extend": True} if args.extend else {}
    if args.extend and spec.family != "riemann":
        raise UsageError("--extend applies to Riemann differences only")
    out = apply_op(spec, f, **kw)
    stream, close = _open_out(args.output)
    try:
        write_csv(out, stream)
    finally:
        if close:
            stream.close()
    return EXIT_OK


# -- check ----------------------------------------------------------------

def cmd_check(args) -> int:
    suites = None
    if args.suite and "all" not in args.suite:
        suites = args.suite
        unknown = [s for s in suites if s not in SUITE_IDS]
        if unknown:
            raise UsageError(f"unknown suite(s): {', '.join(unknown)} (see 'check --list')")
    if args.list:
        print("\n".join(SUITE_IDS))
        return EXIT_OK
    cfg = HarnessConfig(tol=args.tol, seed=args.seed, suites=suites)
    if args.order:
        cfg.orders = args.order
    if args.length:
        cfg.lengths = args.length
    if args.p:
        cfg.p_values = args.p
    reports = run_all_suites(cfg)
    stream, close = _open_out(args.output)
    try:
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(REPORT_HEADER)
        for r in reports:
            w.writerow(r.row())
    finally:
        if close:
            stream.close()
    failed = sum(not r.passed for r in reports)
    print(f"{len(reports) - failed}/{len(reports)} passed", file=sys.stderr)
    if not reports:
        print("no applicable cases for the chosen orders", file=sys.stderr)
    return EXIT_OK if failed == 0 else EXIT_FAIL


# -- ml -----------------------------------------------------------------------

def cmd_ml(args) -> int:
    spec = MLSpec(args.family, args.alpha, args.beta, args.lam, args.tol, args.kmax)
    res = ml_series(spec, args.z)
    print("value,K")
    print(f"{res.value!r},{res.K}")
    return EXIT_OK


# -- solve ------------------------------------------------------------------

_PROBLEM_KEYS = {"calculus", "alpha", "lambda", "a", "a0", "N", "forcing"}


def _load_problem(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise UsageError(f"{path}: expected a JSON object")
    extra = set(data) - _PROBLEM_KEYS
    if extra:
        raise UsageError(f"{path}: unknown keys {', '.join(sorted(extra))}")
    forcing = data.get("forcing")
    if isinstance(forcing, str) and forcing not in FORCINGS and not os.path.isabs(forcing):
        data["forcing"] = os.path.join(os.path.dirname(os.path.abspath(path)), forcing)
    return data


def build_problem(args) -> FdeProblem:
    data = _load_problem(args.problem) if args.problem else {}
    flags = {"calculus": args.calculus, "alpha": args.alpha, "lambda": args.lam, "a": args.a,
             "a0": args.a0, "N": args.N, "forcing": args.forcing}
    data.update({k: v for k, v in flags.items() if v is not None})
    missing = [k for k in ("calculus", "alpha", "lambda", "N") if k not in data]
    if missing:
        raise UsageError(f"missing problem field(s): {', '.join(missing)}")
    calculus = data["calculus"]
    alpha = to_exact(data["alpha"])
    N = data["N"]
    if not isinstance(N, int) or isinstance(N, bool):
        raise UsageError(f"N must be an integer, got {N!r}")
    a = None if data.get("a") is None else to_exact(data["a"])
    forcing = data.get("forcing", "zero")
    if forcing in FORCINGS:
        f = builtin_forcing(forcing, calculus, alpha, N, a)
    else:
        with open(forcing, newline="", encoding="utf-8") as fh:
            f = read_csv(fh)
    return FdeProblem(calculus, alpha, float(to_exact(data["lambda"])),
                      float(to_exact(data.get("a0", 1))), N, f, a)


def cmd_solve(args) -> int:
    problem = build_problem(args)
    kw = {"iterations": args.iterations} if args.method == "picard" else {}
    rep = solve(problem, args.method, **kw)
    stream, close = _open_out(args.output)
    try:
        write_csv(rep.solution, stream)
    finally:
        if close:
            stream.close()
    extra = f",iterations={rep.iterations}" if rep.iterations is not None else ""
    print(f"method={rep.method},residual={rep.residual!r}{extra}", file=sys.stderr)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dfcalc", description="Discrete fractional calculus toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("apply", help="apply a fractional sum or difference to a grid function")
    a.add_argument("--family", choices=FAMILIES, required=True)
    a.add_argument("--calculus", choices=CALCULI, required=True)
    a.add_argument("--side", choices=SIDES, required=True)
    a.add_argument("--order", type=_rational, required=True)
    a.add_argument("--base", type=_rational, required=True)
    a.add_argument("--input", help="t,value CSV file")
    a.add_argument("--builtin", help="one, ramp, square or monomial:<mu>")
    a.add_argument("--start", type=_rational, help="first grid point for --builtin")
    a.add_argument("--length", type=int, default=16, help="number of samples for --builtin")
    a.add_argument("--extend", action="store_true",
                   help="Riemann only: read the inner sum as 0 where it is empty")
    a.add_argument("--output", "-o")
    a.set_defaults(func=cmd_apply)

    c = sub.add_parser("check", help="run identity suites on seeded random inputs")
    c.add_argument("--suite", action="append", default=[],
                   help="suite id or 'all' (repeatable)")
    c.add_argument("--list", action="store_true", help="list suite ids and exit")
    c.add_argument("--order", type=_rational_list, help="comma-separated orders")
    c.add_argument("--length", type=_int_list, help="comma-separated grid lengths")
    c.add_argument("--p", type=_int_list, help="difference orders for lng/rng/modleft/modright")
    c.add_argument("--seed", type=int, default=42)
    c.add_argument("--tol", type=float, default=DEFAULT_TOL)
    c.add_argument("--output", "-o")
    c.set_defaults(func=cmd_check)

    m = sub.add_parser("ml", help="evaluate a discrete Mittag-Leffler function")
    m.add_argument("--family", choices=("delta", "nabla"), required=True)
    m.add_argument("--alpha", type=_rational, required=True)
    m.add_argument("--beta", type=_rational, default=Fraction(1))
    m.add_argument("--lambda", dest="lam", type=_real, required=True)
    m.add_argument("--z", type=_rational, required=True)
    m.add_argument("--tol", type=float, default=1e-16)
    m.add_argument("--kmax", type=int, default=20000)
    m.set_defaults(func=cmd_ml)

    s = sub.add_parser("solve", help="solve a linear Caputo fractional difference equation")
    s.add_argument("--problem", help="JSON file with calculus, alpha, lambda, a, a0, N, forcing")
    s.add_argument("--calculus", choices=("delta", "nabla"))
    s.add_argument("--alpha", type=_rational)
    s.add_argument("--lambda", dest="lam", type=_rational)
    s.add_argument("--a", type=_rational, help="base point (nabla only; delta uses alpha-1)")
    s.add_argument("--a0", type=_rational)
    s.add_argument("--N", type=int)
    s.add_argument("--forcing", help="zero, one, ramp or a t,value CSV path")
    s.add_argument("--method", choices=("ml", "march", "picard"), default="march")
    s.add_argument("--iterations", type=int, default=50)
    s.add_argument("--output", "-o")
    s.set_defaults(func=cmd_solve)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NonConvergenceError as exc:
        print(f"dfcalc: non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (DfcalcError, OSError) as exc:
        print(f"dfcalc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
