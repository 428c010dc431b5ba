"""Identity verifiers: delta/nabla duals, the Q operator, summation by parts,
commutation rules, Riemann/Caputo relations and the sum laws.

Each suite builds the two sides of one identity from the operator
primitives and reports the largest absolute gap over the shared points.

=====================  =======================================================
suite                  identity
=====================  =======================================================
left-dual-i            (Delta_{a+1}^alpha y)(t-alpha) = Nabla_a^alpha y(t)
left-dual-ii           (Delta_{a+1}^{-alpha} y)(t+alpha) = Nabla_a^{-alpha} y(t)
left-dual2-i           Delta_c^alpha y(t) = (Nabla_{c-1}^alpha y)(t+alpha), c=alpha-n
left-dual2-ii          Delta_c^{-(n-alpha)} y(t) = (Nabla_{c-1}^{-(n-alpha)} y)(t-n+alpha)
right-dual-i           (_bDelta^alpha y)(t+alpha) = _{b+1}Nabla^alpha y(t)
right-dual-ii          (_bDelta^{-alpha} y)(t-alpha) = _{b+1}Nabla^{-alpha} y(t)
right-dual2-i          _{n-alpha}Delta^alpha y(t) = _{n-alpha+1}Nabla^alpha y(t-alpha)
right-dual2-ii         _{n-alpha}Delta^{-(n-alpha)} y(t) = _{n-alpha+1}Nabla^{-(n-alpha)} y(t+n-alpha)
lCdual                 (C-Delta_a^alpha f)(t-alpha) = dual C-Nabla_{a+n-1}^alpha f(t)
rCdual                 (C-_bDelta^alpha f)(t+alpha) = dual C-_{b-n+1}Nabla^alpha f(t)
q-<calc>-<family>      left operator of Qf = Q(right operator of f), Qf(s) = f(a+b-s)
byparts-nabla-sum      sum g Nabla_a^{-alpha} f = sum f _bNabla^{-alpha} g
byparts-nabla-riemann  sum f Nabla_a^alpha g = sum g _bNabla^alpha f
byparts-delta-sum      sum g (Delta_{a+1}^{-alpha} f)(s+alpha) = sum f _{b-1}Delta^{-alpha} g(s-alpha)
byparts-delta-riemann  sum f Delta_{a+1}^alpha g(s-alpha) = sum g _{b-1}Delta^alpha f(s+alpha)
byparts-caputo-nabla   sum g C-Nabla_a^alpha f = [f _bNabla^{-(1-alpha)} g]_a^{b-1} + sum f _bNabla^alpha g
byparts-caputo-delta   delta counterpart of the above
lbsdandds, bsdandds    Riemann difference and sum of the same order invert each other
ato, td, att, rn       sum of a first difference vs difference of the sum
lng, rng, modleft,     p-th difference versions (any real order; negative orders
modright               use the Riemann difference)
relate-*, invert-*     Riemann-Caputo relation; sum of the Caputo difference
semigroup-*, power-*   exponent law and power rule of the four sums
caputo-constant        Caputo difference of a constant is 0
riemann-constant       Nabla_a^alpha 1 = (t-a)^{-alpha, rising}/Gamma(1-alpha)
caputo-power-*         Caputo difference of (t-a)^{beta-1, rising}
=====================  =======================================================

Sums run over s = a+1..b-1 throughout; both arguments of a by-parts suite
live on a common window around [a, b].
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import factorial
from typing import Callable, Optional, Sequence

import numpy as np

from .differences import caputo_diff, dual_caputo_diff, inversion_residual, relate_residual, riemann_diff
from .errors import DomainError, PreconditionError
from .grid import GridFn, same_lattice
from .powers import diff_n, delta_at, nabla_at, rising
from .report import DEFAULT_TOL, IdentityReport, compare, max_residual
from .scalars import floor_order, format_exact, gamma_ratio, rgamma, to_exact
from .sums import OpSpec, fsum, power_rule, power_rule_input, semigroup_residual


def q_transform(f: GridFn, a, b) -> GridFn:
    """(Qf)(s) = f(a+b-s); requires a = b (mod 1)."""
    a, b = to_exact(a), to_exact(b)
    if not same_lattice(a, b):
        raise DomainError(
            f"Q operator needs a = b (mod 1), got a={format_exact(a)}, b={format_exact(b)}"
        )
    if len(f) == 0:
        return GridFn.empty(a + b - f.start)
    return GridFn(a + b - f.last, f.values[::-1])


# -- operator shorthands -------------------------------------------------------

def _S(cal, side, f, base, order):
    return fsum(cal, side, f, base, order)


def _R(cal, side, base, alpha, f, extend=False):
    return riemann_diff(OpSpec("riemann", cal, side, alpha, base), f, extend=extend)


def _C(cal, side, base, alpha, f):
    return caputo_diff(OpSpec("caputo", cal, side, alpha, base), f)


def _DC(side, base, alpha, f):
    return dual_caputo_diff(OpSpec("dual-caputo", "nabla", side, alpha, base), f)


def _scalar(x: float) -> GridFn:
    return GridFn(0, [x])


def _window_sum(h: GridFn, lo, hi) -> float:
    """sum_{s=lo}^{hi} h(s); every point must be present."""
    lo, hi = to_exact(lo), to_exact(hi)
    if hi < lo:
        return 0.0
    return float(np.sum(h.restrict(lo, int(hi - lo) + 1).values))


def _dot(u: GridFn, v: GridFn, lo, hi) -> float:
    lo, hi = to_exact(lo), to_exact(hi)
    if hi < lo:
        return 0.0
    m = int(hi - lo) + 1
    return float(np.dot(u.restrict(lo, m).values, v.restrict(lo, m).values))


# -- suite machinery ---------------------------------------------------------

@dataclass
class CheckInput:
    alpha: Fraction
    f: GridFn
    g: Optional[GridFn] = None
    a: Optional[Fraction] = None
    b: Optional[Fraction] = None
    p: int = 1
    beta: Optional[Fraction] = None

    @property
    def n(self) -> int:
        return floor_order(abs(self.alpha))


@dataclass(frozen=True)
class Suite:
    id: str
    summary: str
    evaluate: Callable[[CheckInput], tuple[GridFn, GridFn]]
    layout: str = "left"             # left | right | both | fixed-left | fixed-right | none
    ext: Callable[[int, int], int] = lambda n, p: 0
    needs_g: bool = False
    requires: Callable[[CheckInput], Optional[str]] = lambda ci: None
    uses_p: bool = False
    beta_values: tuple = ()
    negative_orders: bool = False
    relative: bool = False

    def params(self, ci: CheckInput) -> dict:
        d = {"alpha": ci.alpha, "length": len(ci.f)}
        if self.uses_p:
            d["p"] = ci.p
        if ci.beta is not None and self.beta_values:
            d["beta"] = ci.beta
        return d


SUITES: dict[str, Suite] = {}


def _register(*suites: Suite) -> None:
    for s in suites:
        if s.id in SUITES:
            raise RuntimeError(f"duplicate suite {s.id}")
        SUITES[s.id] = s


def _non_integer(ci: CheckInput) -> Optional[str]:
    if ci.alpha.denominator == 1:
        return "alpha must be non-integer"
    return None


def _unit_interval(ci: CheckInput) -> Optional[str]:
    if not 0 < ci.alpha < 1:
        return "requires 0 < alpha < 1"
    return None


def _positive(ci: CheckInput) -> Optional[str]:
    if ci.alpha <= 0:
        return "requires alpha > 0"
    return None


def _all(*checks):
    def req(ci):
        for c in checks:
            msg = c(ci)
            if msg:
                return msg
        return None
    return req


# -- dual identities ---------------------------------------------------------

def _left_dual_i(ci):
    return _R("delta", "left", ci.a + 1, ci.alpha, ci.f).shift(-ci.alpha), \
        _R("nabla", "left", ci.a, ci.alpha, ci.f)


def _left_dual_ii(ci):
    return _S("delta", "left", ci.f, ci.a + 1, ci.alpha).shift(ci.alpha), \
        _S("nabla", "left", ci.f, ci.a, ci.alpha)


def _left_dual2_i(ci):
    c = ci.a
    return _R("delta", "left", c, ci.alpha, ci.f), \
        _R("nabla", "left", c - 1, ci.alpha, ci.f).shift(ci.alpha)


def _left_dual2_ii(ci):
    c, nu = ci.a, ci.n - ci.alpha
    return _S("delta", "left", ci.f, c, nu), \
        _S("nabla", "left", ci.f, c - 1, nu).shift(-nu)


def _right_dual_i(ci):
    return _R("delta", "right", ci.b, ci.alpha, ci.f).shift(ci.alpha), \
        _R("nabla", "right", ci.b + 1, ci.alpha, ci.f)


def _right_dual_ii(ci):
    return _S("delta", "right", ci.f, ci.b, ci.alpha).shift(-ci.alpha), \
        _S("nabla", "right", ci.f, ci.b + 1, ci.alpha)


def _right_dual2_i(ci):
    return _R("delta", "right", ci.b, ci.alpha, ci.f), \
        _R("nabla", "right", ci.b + 1, ci.alpha, ci.f).shift(-ci.alpha)


def _right_dual2_ii(ci):
    nu = ci.n - ci.alpha
    return _S("delta", "right", ci.f, ci.b, nu), \
        _S("nabla", "right", ci.f, ci.b + 1, nu).shift(nu)


def _lcdual(ci):
    return _C("delta", "left", ci.a, ci.alpha, ci.f).shift(-ci.alpha), \
        _DC("left", ci.a, ci.alpha, ci.f)


def _rcdual(ci):
    return _C("delta", "right", ci.b, ci.alpha, ci.f).shift(ci.alpha), \
        _DC("right", ci.b, ci.alpha, ci.f)


def _fixed_left_base(ci):
    return ci.alpha - ci.n


def _fixed_right_base(ci):
    return ci.n - ci.alpha


_register(
    Suite("left-dual-i", "left Riemann: delta from a+1 vs nabla from a", _left_dual_i, "left"),
    Suite("left-dual-ii", "left sum: delta from a+1 vs nabla from a", _left_dual_ii, "left"),
    Suite("left-dual2-i", "left Riemann: delta from c vs nabla from c-1", _left_dual2_i, "fixed-left"),
    Suite("left-dual2-ii", "left sum of order n-alpha: delta from c vs nabla from c-1", _left_dual2_ii, "fixed-left",
          requires=_non_integer),
    Suite("right-dual-i", "right Riemann: delta at b vs nabla at b+1", _right_dual_i, "right"),
    Suite("right-dual-ii", "right sum: delta at b vs nabla at b+1", _right_dual_ii, "right"),
    Suite("right-dual2-i", "right Riemann, fixed base: delta at b vs nabla at b+1", _right_dual2_i, "fixed-right"),
    Suite("right-dual2-ii", "right sum of order n-alpha: delta at b vs nabla at b+1", _right_dual2_ii, "fixed-right",
          requires=_non_integer),
    Suite("lCdual", "left delta Caputo vs dual nabla Caputo", _lcdual, "left"),
    Suite("rCdual", "right delta Caputo vs dual nabla Caputo", _rcdual, "right"),
)


# -- Q operator ----------------------------------------------------------------

def _q_suite(cal: str, family: str):
    def op(side, f, c, alpha):
        if family == "sum":
            return _S(cal, side, f, c, alpha)
        if family == "caputo":
            return _C(cal, side, c, alpha, f)
        return _R(cal, side, c, alpha, f)

    def evaluate(ci):
        qf = q_transform(ci.f, ci.a, ci.b)
        return op("left", qf, ci.a, ci.alpha), \
            q_transform(op("right", ci.f, ci.b, ci.alpha), ci.a, ci.b)

    ext = (lambda n, p: n - 1) if (cal == "nabla" and family == "caputo") else (lambda n, p: 0)
    return Suite(f"q-{cal}-{family}", f"Q duality, {cal} {family}", evaluate, "both", ext=ext)


_register(*(_q_suite(c, fam) for c in ("delta", "nabla") for fam in ("sum", "caputo", "riemann")))


# -- summation by parts --------------------------------------------------------

def _bp_nabla_sum(ci):
    a, b, f, g = ci.a, ci.b, ci.f, ci.g
    lhs = _dot(g, _S("nabla", "left", f, a, ci.alpha), a + 1, b - 1)
    rhs = _dot(f, _S("nabla", "right", g, b, ci.alpha), a + 1, b - 1)
    return _scalar(lhs), _scalar(rhs)


def _bp_nabla_riemann(ci):
    a, b, f, g = ci.a, ci.b, ci.f, ci.g
    lhs = _dot(f, _R("nabla", "left", a, ci.alpha, g, extend=True), a + 1, b - 1)
    rhs = _dot(g, _R("nabla", "right", b, ci.alpha, f, extend=True), a + 1, b - 1)
    return _scalar(lhs), _scalar(rhs)


def _bp_delta_sum(ci):
    a, b, f, g, al = ci.a, ci.b, ci.f, ci.g, ci.alpha
    lhs = _dot(g, _S("delta", "left", f, a + 1, al).shift(al), a + 1, b - 1)
    rhs = _dot(f, _S("delta", "right", g, b - 1, al).shift(-al), a + 1, b - 1)
    return _scalar(lhs), _scalar(rhs)


def _bp_delta_riemann(ci):
    a, b, f, g, al = ci.a, ci.b, ci.f, ci.g, ci.alpha
    lhs = _dot(f, _R("delta", "left", a + 1, al, g, extend=True).shift(-al), a + 1, b - 1)
    rhs = _dot(g, _R("delta", "right", b - 1, al, f, extend=True).shift(al), a + 1, b - 1)
    return _scalar(lhs), _scalar(rhs)


def caputo_by_parts_terms(f: GridFn, g: GridFn, a, b, alpha, calculus: str = "nabla"):
    """Pieces of the Caputo summation-by-parts formula for 0 < alpha < 1.

    Returns (lhs, boundary, tail, boundary_sum@b-1) where the formula reads
    lhs = boundary + tail; the last entry is the right sum of order 1-alpha
    at s=b-1, which must equal g(b-1).
    """
    a, b, alpha = to_exact(a), to_exact(b), to_exact(alpha)
    if calculus == "nabla":
        cap = _C("nabla", "left", a, alpha, f)
        big_g = _S("nabla", "right", g, b, 1 - alpha)
        rdiff = _R("nabla", "right", b, alpha, g)
    else:
        cap = _C("delta", "left", a, alpha, f).shift(-alpha)
        big_g = _S("delta", "right", g, b - 1, 1 - alpha).shift(-(1 - alpha))
        rdiff = _R("delta", "right", b - 1, alpha, g).shift(alpha)
    lhs = _dot(g, cap, a + 1, b - 1)
    boundary = f(b - 1) * big_g(b - 1) - f(a) * big_g(a)
    tail = _dot(f, rdiff, a, b - 2)
    return lhs, boundary, tail, big_g(b - 1)


def _bp_caputo(calculus):
    def evaluate(ci):
        lhs, boundary, tail, _ = caputo_by_parts_terms(ci.f, ci.g, ci.a, ci.b, ci.alpha, calculus)
        return _scalar(lhs), _scalar(boundary + tail)
    return evaluate


def _lbsdandds(ci):
    a, f, al, n = ci.a, ci.f, ci.alpha, ci.n
    s = _S("nabla", "left", f, a, al)
    r1, _ = max_residual(_R("nabla", "left", a, al, s, extend=True), f)
    if al.denominator != 1:
        second = _S("nabla", "left", _R("nabla", "left", a, al, f, extend=True), a, al)
        target = f.between(a + 1, f.last)
    else:
        second = _S("nabla", "left", _R("nabla", "left", a, al, f), a, al)
        own = f.between(a + 1, f.last)
        target = own - GridFn.from_function(
            lambda t: sum(rising(t - a, k) / factorial(k) * nabla_at(f, k, a) for k in range(n)),
            own.start, len(own))
    # fold the first residual into the lhs so one comparison covers both
    return second.scale(1.0), target + GridFn.constant(r1, target.start, len(target))


def _bsdandds(ci):
    b, f, al, n = ci.b, ci.f, ci.alpha, ci.n
    s = _S("nabla", "right", f, b, al)
    r1, _ = max_residual(_R("nabla", "right", b, al, s, extend=True), f)
    if al.denominator != 1:
        second = _S("nabla", "right", _R("nabla", "right", b, al, f, extend=True), b, al)
        target = f.between(f.start, b - 1)
    else:
        second = _S("nabla", "right", _R("nabla", "right", b, al, f), b, al)
        own = f.between(f.start, b - 1)
        target = own - GridFn.from_function(
            lambda t: sum(rising(b - t, k) / factorial(k) * (-1) ** k * delta_at(f, k, b)
                          for k in range(n)),
            own.start, len(own))
    return second, target + GridFn.constant(r1, target.start, len(target))


_register(
    Suite("byparts-nabla-sum", "nabla sums, left vs right", _bp_nabla_sum, "both", needs_g=True),
    Suite("byparts-nabla-riemann", "nabla Riemann differences, left vs right", _bp_nabla_riemann, "both",
          needs_g=True, requires=_non_integer),
    Suite("byparts-delta-sum", "delta sums, left vs right", _bp_delta_sum, "both", needs_g=True),
    Suite("byparts-delta-riemann", "delta Riemann differences, left vs right", _bp_delta_riemann, "both",
          needs_g=True, requires=_non_integer),
    Suite("byparts-caputo-nabla", "nabla Caputo by parts with boundary terms", _bp_caputo("nabla"), "both",
          needs_g=True, requires=_unit_interval),
    Suite("byparts-caputo-delta", "delta Caputo by parts with boundary terms", _bp_caputo("delta"), "both",
          needs_g=True, requires=_unit_interval),
    Suite("lbsdandds", "left nabla sum and difference are inverse", _lbsdandds, "left",
          ext=lambda n, p: n - 1),
    Suite("bsdandds", "right nabla sum and difference are inverse", _bsdandds, "right",
          ext=lambda n, p: n - 1),
)


# -- commutation rules -----------------------------------------------------

def _nabla_op(side, f, c, order):
    """Nabla sum of order ``order`` (> 0) or Riemann difference of order -order (< 0)."""
    if order > 0:
        return _S("nabla", side, f, c, order)
    return _R("nabla", side, c, -order, f, extend=True)


def _ato(ci):
    a, f, al = ci.a, ci.f, ci.alpha
    lhs = _S("delta", "left", diff_n(f.between(a, f.last), 1, "delta"), a, al)
    d = diff_n(_S("delta", "left", f, a, al), 1, "delta")
    corr = GridFn.from_function(lambda t: _falling_over(t - a, al - 1) * f(a), d.start, len(d))
    return lhs, d - corr


def _td(ci):
    b, f, al = ci.b, ci.f, ci.alpha
    lhs = _S("delta", "right", diff_n(f.between(f.start, b), 1, "circled-nabla"), b, al)
    d = diff_n(_S("delta", "right", f, b, al), 1, "circled-nabla")
    corr = GridFn.from_function(lambda t: _falling_over(b - t, al - 1) * f(b), d.start, len(d))
    return lhs, d - corr


def _falling_over(x, p):
    # (x)^(p) / Gamma(p+1)
    from .powers import falling
    return falling(x, p) * rgamma(p + 1)


def _rising_over(x, p):
    return rising(x, p) * rgamma(p + 1)


def _lng(ci):
    """Nabla_c^{-alpha} Nabla^p f = Nabla^p Nabla_c^{-alpha} f - boundary terms at c = a."""
    a, f, al, p = ci.a, ci.f, ci.alpha, ci.p
    lhs = _nabla_op("left", diff_n(f, p, "nabla"), a, al)
    d = diff_n(_nabla_op("left", f, a, al), p, "nabla")
    corr = GridFn.from_function(
        lambda t: sum(_rising_over(t - a, al - p + k) * nabla_at(f, k, a) for k in range(p)),
        d.start, len(d))
    return lhs, d - corr


def _rng(ci):
    b, f, al, p = ci.b, ci.f, ci.alpha, ci.p
    lhs = _nabla_op("right", diff_n(f, p, "circled-delta"), b, al)
    d = diff_n(_nabla_op("right", f, b, al), p, "circled-delta")
    corr = GridFn.from_function(
        lambda t: sum(_rising_over(b - t, al - p + k) * (-1) ** k * delta_at(f, k, b)
                      for k in range(p)),
        d.start, len(d))
    return lhs, d - corr


def _modleft(ci):
    # f lives on N_a only; the identity is based at a+p-1
    return _lng(replace(ci, a=ci.a + ci.p - 1))


def _modright(ci):
    return _rng(replace(ci, b=ci.b - ci.p + 1))


def _nonzero_non_integer(ci):
    if ci.alpha == 0 or ci.alpha.denominator == 1:
        return "order must be a non-zero non-integer"
    return None


_register(
    Suite("ato", "left delta sum of a difference", _ato, "left", requires=_positive),
    Suite("td", "right delta sum of a difference", _td, "right", requires=_positive),
    Suite("att", "left nabla order by first difference (any real order)",
          lambda ci: _lng(replace(ci, p=1)), "left", requires=_nonzero_non_integer,
          negative_orders=True),
    Suite("rn", "right nabla order by first difference (any real order)",
          lambda ci: _rng(replace(ci, p=1)), "right", requires=_nonzero_non_integer,
          negative_orders=True),
    Suite("lng", "left nabla order by p-th difference", _lng, "left", ext=lambda n, p: p - 1, uses_p=True,
          requires=_nonzero_non_integer, negative_orders=True),
    Suite("rng", "right nabla order by p-th difference", _rng, "right", ext=lambda n, p: p - 1, uses_p=True,
          requires=_nonzero_non_integer, negative_orders=True),
    Suite("modleft", "left rule based at a+p-1 (f on N_a only)", _modleft, "left", uses_p=True,
          requires=_nonzero_non_integer, negative_orders=True),
    Suite("modright", "right rule based at b-p+1 (f on _bN only)", _modright, "right", uses_p=True,
          requires=_nonzero_non_integer, negative_orders=True),
)


# -- relation / inversion ------------------------------------------------------

def _relate_suite(kind: str, cal: str, family: str, side: str):
    fn = relate_residual if kind == "relate" else inversion_residual

    def evaluate(ci):
        c = ci.a if side == "left" else ci.b
        rep = fn(OpSpec(family, cal, side, ci.alpha, c), ci.f)
        return _scalar(rep.residual), _scalar(0.0)

    label = "dual" if family == "dual-caputo" else cal
    ext = (lambda n, p: n - 1) if family == "caputo" and cal == "nabla" else (lambda n, p: 0)
    return Suite(f"{kind}-{label}-{side}", f"{kind} {family} {cal} {side}", evaluate, side,
                 ext=ext, requires=_positive)


_register(*(
    _relate_suite(kind, cal, fam, side)
    for kind in ("relate", "invert")
    for cal, fam in (("delta", "caputo"), ("nabla", "caputo"), ("nabla", "dual-caputo"))
    for side in ("left", "right")
))


# -- sum laws, constants, power rules -------------------------------------------

def _semigroup(cal, side):
    def evaluate(ci):
        rep = semigroup_residual(cal, side, ci.alpha, ci.beta, ci.f)
        return _scalar(rep.residual), _scalar(0.0)
    return Suite(f"semigroup-{cal}-{side}", f"exponent law, {cal} {side}", evaluate, side,
                 requires=_positive, beta_values=(Fraction(1, 3), Fraction(2, 3), Fraction(5, 4)))


def _power(cal, side):
    def evaluate(ci):
        spec = OpSpec("sum", cal, side, ci.alpha, ci.a if side == "left" else ci.b)
        x, c = power_rule_input(spec, ci.beta, len(ci.f))
        return fsum(cal, side, x, c, ci.alpha), power_rule(spec, ci.beta, len(ci.f))
    mus = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(3, 2))
    if cal == "nabla":
        mus = (Fraction(0),) + mus
    return Suite(f"power-{cal}-{side}", f"power rule, {cal} {side}", evaluate, side,
                 requires=_positive, beta_values=mus, relative=True)


def _caputo_constant(ci):
    a, al, c = ci.a, ci.alpha, 0.75
    one = GridFn.constant(c, ci.f.start, len(ci.f))
    parts = [np.abs(_C("nabla", "left", a, al, one).values).max(),
             np.abs(_C("delta", "left", a, al, one).values).max()]
    return _scalar(max(parts)), _scalar(0.0)


def _riemann_constant(ci):
    a, al = ci.a, ci.alpha
    one = GridFn.constant(1.0, ci.f.start, len(ci.f))
    r = _R("nabla", "left", a, al, one, extend=True)
    closed = GridFn.from_function(lambda t: rising(t - a, -al) * rgamma(1 - al), r.start, len(r))
    return r, closed


def caputo_power_closed(t, c, alpha, beta, side: str = "left") -> float:
    """Gamma(beta)/Gamma(beta-alpha) (x)^{beta-alpha-1, rising} with x = t-c or c-t.

    Written as Gamma(beta) Gamma(x+beta-alpha-1) / (Gamma(beta-alpha) Gamma(x)) and
    evaluated as one gamma ratio, so the zero cases beta-1 = alpha-j take their
    limit value at the points x <= j where the power itself has a pole.
    """
    x = to_exact(t) - to_exact(c) if side == "left" else to_exact(c) - to_exact(t)
    alpha, beta = to_exact(alpha), to_exact(beta)
    return gamma_ratio(beta, 1) * gamma_ratio(x + beta - alpha - 1, beta - alpha) * rgamma(x)


def _caputo_power_ok(ci: CheckInput) -> Optional[str]:
    if ci.alpha <= 0:
        return "requires alpha > 0"
    if ci.beta is not None and ci.beta.denominator == 1 and ci.beta <= ci.n:
        return "integer beta <= n gives a polynomial of degree < n (difference is 0)"
    return None


def _caputo_power(side):
    def evaluate(ci):
        al, beta = ci.alpha, ci.beta
        c = ci.a if side == "left" else ci.b
        dist = (lambda t: t - c) if side == "left" else (lambda t: c - t)
        f = GridFn.from_function(lambda t: rising(dist(t), beta - 1), ci.f.start, len(ci.f))
        cap = _C("nabla", side, c, al, f)
        cap = cap.between(c + 1, cap.last) if side == "left" else cap.between(cap.start, c - 1)
        closed = GridFn.from_function(lambda t: caputo_power_closed(t, c, al, beta, side),
                                      cap.start, len(cap))
        return cap, closed
    return Suite(f"caputo-power-{side}", f"Caputo power rule, nabla {side}", evaluate, side,
                 ext=lambda n, p: n - 1, requires=_caputo_power_ok,
                 beta_values=(Fraction(1, 2), Fraction(3, 2), Fraction(2), Fraction(5, 2),
                              Fraction(3), Fraction(7, 2)),
                 relative=True)


_register(
    *(_semigroup(c, s) for c in ("delta", "nabla") for s in ("left", "right")),
    *(_power(c, s) for c in ("delta", "nabla") for s in ("left", "right")),
    Suite("caputo-constant", "Caputo difference of a constant is 0", _caputo_constant, "left",
          ext=lambda n, p: n - 1, requires=_positive),
    Suite("riemann-constant", "Riemann difference of a constant", _riemann_constant, "left",
          requires=_all(_positive, _non_integer)),
    _caputo_power("left"),
    _caputo_power("right"),
)

SUITE_IDS = tuple(SUITES)


# -- inputs and harness ----------------------------------------------------------

def _bases_for(suite: Suite, ci_alpha: Fraction, f: GridFn, p: int):
    n = floor_order(abs(ci_alpha))
    e = suite.ext(n, p)
    if suite.layout == "left":
        return f.start + e, None
    if suite.layout == "right":
        return None, f.last - e
    if suite.layout == "both":
        return f.start + e, f.last - e
    if suite.layout == "fixed-left":
        return ci_alpha - n, None
    if suite.layout == "fixed-right":
        return None, n - ci_alpha
    return None, None


def make_inputs(suite: Suite, alpha, length: int, rng: np.random.Generator, p: int = 1,
                beta=None) -> CheckInput:
    """Seeded uniform [-1, 1] samples on a window suited to ``suite``."""
    alpha = to_exact(alpha)
    n = floor_order(abs(alpha))
    e = suite.ext(n, p)
    if suite.layout == "fixed-left":
        start = alpha - n
    elif suite.layout == "fixed-right":
        start = n - alpha - (length - 1)
    elif suite.layout == "right":
        start = Fraction(0) - (length - 1) + e
    else:
        start = Fraction(-e)
    total = length + (2 * e if suite.layout == "both" else e if suite.layout in ("left", "right") else 0)
    if suite.layout == "right":
        start = Fraction(-(length - 1))
    f = GridFn(start, rng.uniform(-1.0, 1.0, total))
    g = GridFn(start, rng.uniform(-1.0, 1.0, total)) if suite.needs_g else None
    a, b = _bases_for(suite, alpha, f, p)
    return CheckInput(alpha, f, g, a, b, p, None if beta is None else to_exact(beta))


def check_identity(suite: str, alpha, f: GridFn, g: Optional[GridFn] = None, a=None, b=None,
                   p: int = 1, beta=None, tol: float = DEFAULT_TOL, seed=None) -> IdentityReport:
    """Evaluate both sides of one identity and report the max absolute residual.

    Missing bases are inferred from the window of ``f`` (left suites take the
    first point past any extension samples, right suites the last).
    """
    try:
        s = SUITES[suite]
    except KeyError:
        raise DomainError(f"unknown suite {suite!r}") from None
    alpha = to_exact(alpha)
    if s.needs_g and g is None:
        raise PreconditionError(f"suite {suite} needs a second function g")
    if s.beta_values and beta is None:
        beta = s.beta_values[0]
    da, db = _bases_for(s, alpha, f, p)
    ci = CheckInput(alpha, f, g, to_exact(a) if a is not None else da,
                    to_exact(b) if b is not None else db, p,
                    None if beta is None else to_exact(beta))
    msg = s.requires(ci)
    if msg:
        raise PreconditionError(f"suite {suite}: {msg}")
    if ci.a is not None and ci.b is not None and not same_lattice(ci.a, ci.b):
        raise PreconditionError(f"suite {suite}: needs b = a (mod 1)")
    lhs, rhs = s.evaluate(ci)
    if s.relative:
        res, pts = _relative_residual(lhs, rhs)
        return IdentityReport(suite, res, pts, tol, s.params(ci), seed)
    return compare(suite, lhs, rhs, tol, s.params(ci), seed)


def _relative_residual(lhs: GridFn, rhs: GridFn) -> tuple[float, int]:
    from .grid import common_window
    lo, n = common_window(lhs, rhs)
    if n == 0:
        raise DomainError("the two sides share no grid points")
    x = lhs.restrict(lo, n).values
    y = rhs.restrict(lo, n).values
    scale = np.maximum(np.abs(y), 1e-300)
    r = np.where(y == 0, np.abs(x - y), np.abs(x - y) / scale)
    return float(r.max()), n


DEFAULT_ORDERS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1),
                  Fraction(4, 3), Fraction(3, 2), Fraction(2), Fraction(5, 2))
DEFAULT_LENGTHS = (8, 16, 32)


@dataclass
class HarnessConfig:
    tol: float = DEFAULT_TOL
    orders: Sequence = DEFAULT_ORDERS
    lengths: Sequence[int] = DEFAULT_LENGTHS
    seed: int = 42
    suites: Optional[Sequence[str]] = None
    p_values: Sequence[int] = (1, 2, 3)


def run_all_suites(config: Optional[HarnessConfig] = None) -> list[IdentityReport]:
    """Seeded sweep over suites x orders x lengths (x p, x beta where used).

    Combinations a suite's hypotheses exclude are skipped.  Each case draws
    its inputs from a generator seeded by ``seed`` and the case index, and
    that seed is recorded in the report.
    """
    cfg = config or HarnessConfig()
    ids = list(cfg.suites) if cfg.suites else list(SUITE_IDS)
    unknown = [i for i in ids if i not in SUITES]
    if unknown:
        raise DomainError(f"unknown suite(s): {', '.join(unknown)}")
    reports: list[IdentityReport] = []
    for sid in sorted(ids):
        s = SUITES[sid]
        orders = [to_exact(o) for o in cfg.orders]
        if s.negative_orders:
            orders = orders + [-o for o in orders]
        case = 0
        for alpha in orders:
            for length in cfg.lengths:
                for p in (cfg.p_values if s.uses_p else (1,)):
                    for beta in (s.beta_values or (None,)):
                        case_seed = cfg.seed * 1_000_003 + _stable_hash(sid) + case
                        case += 1
                        rng = np.random.default_rng(case_seed)
                        ci = make_inputs(s, alpha, length, rng, p, beta)
                        if s.requires(ci):
                            continue
                        reports.append(check_identity(
                            sid, alpha, ci.f, ci.g, ci.a, ci.b, p, beta, cfg.tol, case_seed))
    return reports


def _stable_hash(text: str) -> int:
    h = 0
    for ch in text.encode():
        h = (h * 131 + ch) % 1_000_003
    return h
