"""Delta and nabla, left and right fractional sums.

Every sum of order ``alpha`` is a discrete convolution with the weights

    w_d = (alpha - 1 + d)^(alpha - 1) / Gamma(alpha)        (delta kernels)
        = (d + 1)^{alpha - 1, rising} / Gamma(alpha)        (nabla kernels)

where ``d >= 0`` is the integer lag between the output point and the summed
point.  Both expressions equal Gamma(d + alpha) / (Gamma(d + 1) Gamma(alpha)),
and order 0 gives the identity (w = 1, 0, 0, ...).

Output windows:

* delta left,  base a:  f on N_a           ->  N_{a+alpha}
* delta right, base b:  f on _bN           ->  _{b-alpha}N
* nabla left,  base a:  f on N_{a+1}       ->  N_a   (value 0 at t = a)
* nabla right, base b:  f on _{b-1}N       ->  _bN   (value 0 at t = b)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError, PreconditionError
from .grid import GridFn, same_lattice
from .powers import falling, rising
from .report import DEFAULT_TOL, IdentityReport, max_residual
from .scalars import Scalar, floor_order, format_exact, gamma, rgamma, to_exact

FAMILIES = ("sum", "riemann", "caputo", "dual-caputo")
CALCULI = ("delta", "nabla")
SIDES = ("left", "right")


@dataclass(frozen=True)
class OpSpec:
    """Descriptor of a fractional operator."""

    family: str
    calculus: str
    side: str
    order: Fraction
    base: Fraction

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")
        if self.calculus not in CALCULI:
            raise DomainError(f"unknown calculus {self.calculus!r}")
        if self.side not in SIDES:
            raise DomainError(f"unknown side {self.side!r}")
        order = to_exact(self.order)
        if order < 0 or (order == 0 and self.family != "sum"):
            raise DomainError(f"order must be positive, got {format_exact(order)}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "base", to_exact(self.base))

    @property
    def n(self) -> int:
        return floor_order(self.order) if self.order > 0 else 0

    @property
    def a_alpha(self) -> Fraction:
        """Shifted left base a + n - 1."""
        return self.base + self.n - 1

    @property
    def b_alpha(self) -> Fraction:
        """Shifted right base b - n + 1."""
        return self.base - self.n + 1


@lru_cache(maxsize=None)
def _weight(calculus: str, order: Fraction, d: int) -> float:
    if order == 0:
        return 1.0 if d == 0 else 0.0
    if calculus == "delta":
        k = falling(order - 1 + d, order - 1)
    else:
        k = rising(d + 1, order - 1)
    # divide (not multiply by 1/Gamma) so that w_0 is exactly 1.0
    return k / gamma(order)


def sum_weights(calculus: str, order: Scalar, count: int) -> np.ndarray:
    """First ``count`` kernel weights of the order-``order`` sum."""
    order = to_exact(order)
    return np.array([_weight(calculus, order, d) for d in range(count)])


def _causal(x: np.ndarray, w: np.ndarray) -> np.ndarray:
    # out[i] = sum_{d<=i} w[d] x[i-d]
    return np.convolve(x, w)[: len(x)]


def _check_base(f: GridFn, base: Fraction, what: str) -> None:
    if not same_lattice(base, f.start):
        raise DomainError(
            f"{what} {format_exact(base)} is not on the lattice of the grid "
            f"starting at {format_exact(f.start)}"
        )


def _check_order(alpha: Fraction) -> None:
    if alpha < 0:
        raise DomainError(f"sum order must be >= 0, got {format_exact(alpha)}")


def delta_left_sum(f: GridFn, a: Scalar, alpha: Scalar) -> GridFn:
    a, alpha = to_exact(a), to_exact(alpha)
    _check_order(alpha)
    _check_base(f, a, "base a")
    if not (f.start <= a <= f.last):
        raise DomainError(f"base a={format_exact(a)} outside the grid of f")
    x = f.between(a, f.last).values
    return GridFn(a + alpha, _causal(x, sum_weights("delta", alpha, len(x))))


def delta_right_sum(f: GridFn, b: Scalar, alpha: Scalar) -> GridFn:
    b, alpha = to_exact(b), to_exact(alpha)
    _check_order(alpha)
    _check_base(f, b, "base b")
    if not (f.start <= b <= f.last):
        raise DomainError(f"base b={format_exact(b)} outside the grid of f")
    x = f.between(f.start, b).values[::-1]
    out = _causal(x, sum_weights("delta", alpha, len(x)))[::-1]
    return GridFn(b - alpha - (len(x) - 1), out)


def nabla_left_sum(f: GridFn, a: Scalar, alpha: Scalar) -> GridFn:
    a, alpha = to_exact(a), to_exact(alpha)
    _check_order(alpha)
    _check_base(f, a, "base a")
    if not (f.start <= a + 1 and a <= f.last):
        raise DomainError(f"nabla left sum at base {format_exact(a)} needs f from a+1")
    m = int(f.last - a) + 1
    x = np.zeros(m)
    x[1:] = f.between(a + 1, f.last).values
    return GridFn(a, _causal(x, sum_weights("nabla", alpha, m)))


def nabla_right_sum(f: GridFn, b: Scalar, alpha: Scalar) -> GridFn:
    b, alpha = to_exact(b), to_exact(alpha)
    _check_order(alpha)
    _check_base(f, b, "base b")
    if not (f.last >= b - 1 and b >= f.start):
        raise DomainError(f"nabla right sum at base {format_exact(b)} needs f up to b-1")
    m = int(b - f.start) + 1
    x = np.zeros(m)
    x[1:] = f.between(f.start, b - 1).values[::-1]
    out = _causal(x, sum_weights("nabla", alpha, m))[::-1]
    return GridFn(f.start, out)


_SUMS = {
    ("delta", "left"): delta_left_sum,
    ("delta", "right"): delta_right_sum,
    ("nabla", "left"): nabla_left_sum,
    ("nabla", "right"): nabla_right_sum,
}


def fsum(calculus: str, side: str, f: GridFn, base: Scalar, alpha: Scalar) -> GridFn:
    return _SUMS[(calculus, side)](f, base, alpha)


def frac_sum(spec: OpSpec, f: GridFn) -> GridFn:
    if spec.family != "sum":
        raise DomainError(f"frac_sum needs family='sum', got {spec.family!r}")
    return fsum(spec.calculus, spec.side, f, spec.base, spec.order)


# -- power rules -------------------------------------------------------------

def _check_mu(spec: OpSpec, mu: Fraction) -> None:
    if spec.calculus == "delta" and spec.side == "right":
        if mu <= 0:
            raise PreconditionError("delta right power rule needs mu > 0")
    elif mu <= -1:
        raise PreconditionError("power rule needs mu > -1")


def power_rule_input(spec: OpSpec, mu: Scalar, length: int) -> tuple[GridFn, Fraction]:
    """The monomial a power rule applies to, and the base of the sum applied.

    nabla left (t-a)^{mu} on N_a; nabla right (b-t)^{mu} on _bN (rising);
    delta left (t-a)^(mu) on N_{a+mu}; delta right (b-t)^(mu) on _{b-mu}N
    (falling), the sum being based at a+mu / b-mu respectively.
    """
    mu = to_exact(mu)
    _check_mu(spec, mu)
    c = spec.base
    if spec.calculus == "nabla":
        if spec.side == "left":
            return GridFn.from_function(lambda t: rising(t - c, mu), c, length), c
        return GridFn.from_function(lambda t: rising(c - t, mu), c - length + 1, length), c
    if spec.side == "left":
        return GridFn.from_function(lambda t: falling(t - c, mu), c + mu, length), c + mu
    return GridFn.from_function(lambda t: falling(c - t, mu), c - mu - length + 1, length), c - mu


def power_rule(spec: OpSpec, mu: Scalar, length: int) -> GridFn:
    """Closed form of the order-alpha sum of the monomial, on the sum's output grid.

    Gamma(mu+1)/Gamma(mu+alpha+1) times (t-a) or (b-t) raised to mu+alpha
    (rising in nabla calculus, falling in delta calculus).
    """
    mu = to_exact(mu)
    _check_mu(spec, mu)
    alpha, c = spec.order, spec.base
    coef = gamma(mu + 1) * rgamma(mu + alpha + 1)
    p = mu + alpha
    if spec.calculus == "nabla":
        if spec.side == "left":
            return GridFn.from_function(lambda t: coef * rising(t - c, p), c, length)
        return GridFn.from_function(lambda t: coef * rising(c - t, p), c - length + 1, length)
    if spec.side == "left":
        return GridFn.from_function(lambda t: coef * falling(t - c, p), c + p, length)
    return GridFn.from_function(lambda t: coef * falling(c - t, p), c - p - length + 1, length)


# -- semigroup ---------------------------------------------------------------

def semigroup_residual(calculus: str, side: str, alpha: Scalar, beta: Scalar, f: GridFn,
                       tol: float = DEFAULT_TOL, seed=None) -> IdentityReport:
    """Residual of composing sums of orders alpha, beta against order alpha+beta.

    Left sums use base a = f.start, right sums b = f.last.  A delta sum
    shifts the grid, so the outer delta sum is based where the inner one's
    output starts (a+beta, resp. b-beta).
    """
    alpha, beta = to_exact(alpha), to_exact(beta)
    if alpha <= 0 or beta <= 0:
        raise PreconditionError("semigroup law needs alpha, beta > 0")
    left = side == "left"
    c = f.start if left else f.last

    def compose(p, q):
        inner = fsum(calculus, side, f, c, q)
        if calculus == "delta":
            c2 = c + q if left else c - q
        else:
            c2 = c
        return fsum(calculus, side, inner, c2, p)

    single = fsum(calculus, side, f, c, alpha + beta)
    r1, n1 = max_residual(compose(alpha, beta), single)
    r2, n2 = max_residual(compose(beta, alpha), single)
    return IdentityReport(
        f"semigroup-{calculus}-{side}", max(r1, r2), min(n1, n2), tol,
        {"alpha": alpha, "beta": beta, "length": len(f)}, seed,
    )
