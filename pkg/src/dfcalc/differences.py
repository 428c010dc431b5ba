"""Riemann, Caputo and dual Caputo fractional differences.

With n = [alpha] + 1 and nu = n - alpha:

========  =====================================  =============================
operator  definition                             output window
========  =====================================  =============================
Riemann   delta left   Delta^n  Delta_a^{-nu}    N_{a+nu}
          delta right  (-Nabla)^n _bDelta^{-nu}  _{b-nu}N
          nabla left   Nabla^n  Nabla_a^{-nu}    N_{a+n}
          nabla right  (-Delta)^n _bNabla^{-nu}  _{b-n}N
Caputo    delta left   Delta_a^{-nu} Delta^n     N_{a+nu}
          delta right  _bDelta^{-nu} (-Nabla)^n  _{b-nu}N
          nabla left   Nabla_a^{-nu} Nabla^n     N_a (needs n-1 samples < a)
          nabla right  _bNabla^{-nu} (-Delta)^n  _bN (needs n-1 samples > b)
dual      nabla left   Nabla_{a+n-1}^{-nu} Nabla^n          N_{a+n}
Caputo    nabla right  _{b-n+1}Nabla^{-nu} (-Delta)^n       _{b-n}N
========  =====================================  =============================

For integer alpha every Riemann and Caputo difference is the plain n-th
difference (circled on right sides).

``riemann_diff(..., extend=True)`` also evaluates points just outside the
window above, reading the inner sum as 0 where its defining sum is empty.
Those values coincide with the direct kernel formula of order -alpha and
are what the summation-by-parts identities range over.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .errors import DomainError, PreconditionError
from .grid import GridFn
from .powers import delta_at, diff_n, falling, nabla_at, rising
from .report import DEFAULT_TOL, IdentityReport, compare
from .scalars import format_exact, rgamma
from .sums import OpSpec, fsum

_INT_DIFF = {
    ("delta", "left"): "delta",
    ("delta", "right"): "circled-nabla",
    ("nabla", "left"): "nabla",
    ("nabla", "right"): "circled-delta",
}


def _pad(g: GridFn, count: int, below: bool) -> GridFn:
    if count <= 0:
        return g
    z = np.zeros(count)
    if below:
        return GridFn(g.start - count, np.concatenate([z, g.values]))
    return GridFn(g.start, np.concatenate([g.values, z]))


def _clip(g: GridFn, spec: OpSpec, lo=None, hi=None) -> GridFn:
    lo = g.start if lo is None else lo
    hi = g.last if hi is None else hi
    return g.between(lo, hi)


def _integer_diff(spec: OpSpec, f: GridFn) -> GridFn:
    n, c = spec.n, spec.base
    op = _INT_DIFF[(spec.calculus, spec.side)]
    if spec.side == "left":
        g = f.between(c if spec.calculus == "delta" else f.start, f.last)
        out = diff_n(g, n, op)
        return out.between(c if spec.calculus == "delta" else c + 1, out.last)
    g = f.between(f.start, c if spec.calculus == "delta" else f.last)
    out = diff_n(g, n, op)
    return out.between(out.start, c if spec.calculus == "delta" else c - 1)


def riemann_diff(spec: OpSpec, f: GridFn, extend: bool = False) -> GridFn:
    """Integer difference of the (n - alpha)-order sum."""
    if spec.family != "riemann":
        raise DomainError(f"riemann_diff needs family='riemann', got {spec.family!r}")
    alpha, n, c = spec.order, spec.n, spec.base
    if alpha.denominator == 1:
        return _integer_diff(spec, f)
    nu = n - alpha
    g = fsum(spec.calculus, spec.side, f, c, nu)
    pad = (n if spec.calculus == "delta" else n - 1) if extend else 0
    g = _pad(g, pad, below=spec.side == "left")
    op = _INT_DIFF[(spec.calculus, spec.side)]
    if len(g) < n + 1:
        raise DomainError(f"grid too short for the order-{n} outer difference")
    return diff_n(g, n, op)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise PreconditionError(msg)


def caputo_diff(spec: OpSpec, f: GridFn) -> GridFn:
    """The (n - alpha)-order sum of the n-th integer difference of ``f``."""
    if spec.family != "caputo":
        raise DomainError(f"caputo_diff needs family='caputo', got {spec.family!r}")
    alpha, n, c = spec.order, spec.n, spec.base
    if spec.calculus == "nabla":
        if spec.side == "left":
            _need(f.start <= c + 1 - n,
                  f"nabla left Caputo of order {format_exact(alpha)} needs f from "
                  f"{format_exact(c + 1 - n)} ({n - 1} samples before a)")
        else:
            _need(f.last >= c - 1 + n,
                  f"nabla right Caputo of order {format_exact(alpha)} needs f up to "
                  f"{format_exact(c - 1 + n)} ({n - 1} samples after b)")
    if alpha.denominator == 1:
        return _integer_diff(spec, f)
    nu = n - alpha
    op = _INT_DIFF[(spec.calculus, spec.side)]
    if spec.calculus == "delta":
        g = f.between(c, f.last) if spec.side == "left" else f.between(f.start, c)
    else:
        g = f
    d = diff_n(g, n, op)
    return fsum(spec.calculus, spec.side, d, c, nu)


def dual_caputo_diff(spec: OpSpec, f: GridFn) -> GridFn:
    """Nabla Caputo difference based at a+n-1 (b-n+1); reads f on N_a (_bN) only."""
    if spec.family != "dual-caputo" or spec.calculus != "nabla":
        raise DomainError("dual_caputo_diff is defined for family='dual-caputo', calculus='nabla'")
    alpha, n, c = spec.order, spec.n, spec.base
    nu = n - alpha
    if spec.side == "left":
        d = diff_n(f.between(c, f.last), n, "nabla")
        out = fsum("nabla", "left", d, spec.a_alpha, nu)
        return out.between(c + n, out.last)
    d = diff_n(f.between(f.start, c), n, "circled-delta")
    out = fsum("nabla", "right", d, spec.b_alpha, nu)
    return out.between(out.start, c - n)


def apply(spec: OpSpec, f: GridFn, **kw) -> GridFn:
    """Dispatch on ``spec.family``."""
    if spec.family == "sum":
        return fsum(spec.calculus, spec.side, f, spec.base, spec.order)
    if spec.family == "riemann":
        return riemann_diff(spec, f, **kw)
    if spec.family == "caputo":
        return caputo_diff(spec, f)
    return dual_caputo_diff(spec, f)


# -- boundary data -------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryData:
    """The n end-point differences entering the Riemann-Caputo relation.

    Left:  D^k f(a) (delta) or Nabla^k f(a) (nabla).
    Right: (-Nabla)^k f(b) (delta) or (-Delta)^k f(b) (nabla).
    """

    side: str
    point: Fraction
    values: tuple[float, ...]


def boundary_data(spec: OpSpec, f: GridFn) -> BoundaryData:
    n = spec.n
    if spec.family == "dual-caputo":
        point = spec.a_alpha if spec.side == "left" else spec.b_alpha
    else:
        point = spec.base
    vals = []
    for k in range(n):
        if spec.calculus == "delta":
            v = delta_at(f, k, point) if spec.side == "left" else (-1) ** k * nabla_at(f, k, point)
        else:
            v = nabla_at(f, k, point) if spec.side == "left" else (-1) ** k * delta_at(f, k, point)
        vals.append(v)
    return BoundaryData(spec.side, point, tuple(vals))


def _power(calculus: str, x, p) -> float:
    return falling(x, p) if calculus == "delta" else rising(x, p)


def _taylor(spec: OpSpec, bd: BoundaryData, grid: GridFn, shift) -> GridFn:
    """sum_k coef_k * power(distance, shift(k)) * value_k over ``grid``'s points."""
    left = spec.side == "left"
    out = np.zeros(len(grid))
    for i, t in enumerate(grid.points):
        x = t - bd.point if left else bd.point - t
        acc = 0.0
        for k, v in enumerate(bd.values):
            if v == 0.0:
                continue
            p, coef = shift(k)
            if coef == 0.0:
                continue
            acc += coef * _power(spec.calculus, x, p) * v
        out[i] = acc
    return GridFn(grid.start, out)


def caputo_of(spec: OpSpec, f: GridFn) -> GridFn:
    return caputo_diff(spec, f) if spec.family == "caputo" else dual_caputo_diff(spec, f)


def _riemann_partner(spec: OpSpec) -> OpSpec:
    base = spec.base
    if spec.family == "dual-caputo":
        base = spec.a_alpha if spec.side == "left" else spec.b_alpha
    return OpSpec("riemann", spec.calculus, spec.side, spec.order, base)


def relate_residual(spec: OpSpec, f: GridFn, tol: float = DEFAULT_TOL, seed=None,
                    extend: bool = False) -> IdentityReport:
    """|Caputo - (Riemann - sum_k power(t-a, k-alpha)/Gamma(k-alpha+1) D^k f(a))|."""
    if spec.family not in ("caputo", "dual-caputo"):
        raise PreconditionError("relate_residual takes a caputo or dual-caputo spec")
    alpha = spec.order
    cap = caputo_of(spec, f)
    rie = riemann_diff(_riemann_partner(spec), f, extend=extend)
    if alpha.denominator == 1:
        rhs = rie
    else:
        bd = boundary_data(spec, f)
        terms = _taylor(spec, bd, rie, lambda k: (k - alpha, rgamma(k - alpha + 1)))
        rhs = rie - terms
    name = f"relate-{'dual' if spec.family == 'dual-caputo' else spec.calculus}-{spec.side}"
    return compare(name, cap, rhs, tol, {"alpha": alpha, "length": len(f)}, seed)


def inversion_residual(spec: OpSpec, f: GridFn, tol: float = DEFAULT_TOL,
                       seed=None) -> IdentityReport:
    """|sum of order alpha of the Caputo difference - (f - Taylor boundary sum)|."""
    if spec.family not in ("caputo", "dual-caputo"):
        raise PreconditionError("inversion_residual takes a caputo or dual-caputo spec")
    alpha, n, c = spec.order, spec.n, spec.base
    cap = caputo_of(spec, f)
    left = spec.side == "left"
    if spec.calculus == "delta":
        sbase = c + (n - alpha) if left else c - (n - alpha)
    elif spec.family == "dual-caputo":
        sbase = spec.a_alpha if left else spec.b_alpha
    else:
        sbase = c
    lhs = fsum(spec.calculus, spec.side, cap, sbase, alpha)
    bd = boundary_data(spec, f)
    own = f.between(bd.point, f.last) if left else f.between(f.start, bd.point)
    terms = _taylor(spec, bd, own, lambda k: (k, 1.0 / factorial(k)))
    name = f"invert-{'dual' if spec.family == 'dual-caputo' else spec.calculus}-{spec.side}"
    return compare(name, lhs, own - terms, tol, {"alpha": alpha, "length": len(f)}, seed)
