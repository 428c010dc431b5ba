"""Delta and nabla discrete Mittag-Leffler functions.

    delta:  E_(a,b)(lam, z) = sum_k lam^k (z+(k-1)(a-1))^(ka) (z+k(a-1))^(b-1) / Gamma(ak+b)
    nabla:  E_{a,b}(lam, z) = sum_k lam^k z^{ka+b-1, rising} / Gamma(ak+b)

The delta series is finite whenever z - alpha is an integer: the falling
power (x)^(ka) has denominator argument z - alpha + 2 - k, which reaches a
pole at k = z - alpha + 2 and stays on poles afterwards.  That index ends
the sum; every later term is taken as zero.  Otherwise both series are
summed until three consecutive terms fall below ``tol * (1 + |partial|)``
past ``k = ceil(|z|) + 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import DomainError, NonConvergenceError
from .scalars import PoleClass, Scalar, _gamma_sign, format_exact, gamma_ratio, rgamma, to_exact

FAMILIES = ("delta", "nabla")


@dataclass(frozen=True)
class MLSpec:
    family: str
    alpha: Fraction
    beta: Fraction = Fraction(1)
    lam: float = 0.0
    tol: float = 1e-16
    k_max: int = 20000

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"family must be delta or nabla, got {self.family!r}")
        object.__setattr__(self, "alpha", to_exact(self.alpha))
        object.__setattr__(self, "beta", to_exact(self.beta))
        object.__setattr__(self, "lam", float(self.lam))
        if self.alpha <= 0:
            raise DomainError(f"alpha must be positive, got {format_exact(self.alpha)}")
        if not self.tol > 0:
            raise DomainError("tol must be positive")
        if self.k_max < 1:
            raise DomainError("k_max must be at least 1")
        if not math.isfinite(self.lam):
            raise DomainError("lambda must be finite")


@dataclass(frozen=True)
class MLResult:
    value: float
    K: int
    reason: str  # "pole" | "tolerance" | "zero-lambda"


def _gamma_product(nums: Iterable[Fraction], dens: Iterable[Fraction]) -> float:
    """prod Gamma(nums) / prod Gamma(dens) with pole limits paired in order.

    ``dens`` may be longer than ``nums``; the extra factors enter as 1/Gamma.
    Falls back to one log-gamma sum when the paired product leaves the float
    range (large k).
    """
    nums, dens = list(nums), list(dens)
    out = 1.0
    for x, y in zip(nums, dens):
        out *= gamma_ratio(x, y)
    for y in dens[len(nums):]:
        out *= rgamma(y)
    if math.isfinite(out) and (out != 0.0 or any(PoleClass.of(y).pole for y in dens)):
        return out
    # the paired ratios over- or underflowed; regular arguments only here
    log = sum(math.lgamma(float(x)) for x in nums) - sum(math.lgamma(float(x)) for x in dens)
    sign = 1
    for x in nums + dens:
        sign *= _gamma_sign(float(x))
    return sign * math.exp(min(log, 709.0)) if log <= 709.0 else sign * math.inf


def delta_term(alpha: Fraction, beta: Fraction, z: Fraction, k: int) -> float:
    """k-th coefficient of the delta series, without the lam^k factor."""
    x = z + (k - 1) * (alpha - 1)
    y = z + k * (alpha - 1)
    return _gamma_product([x + 1, y + 1], [x + 1 - k * alpha, y + 2 - beta, alpha * k + beta])


def nabla_term(alpha: Fraction, beta: Fraction, z: Fraction, k: int) -> float:
    """k-th coefficient of the nabla series, without the lam^k factor."""
    return _gamma_product([z + k * alpha + beta - 1], [z, alpha * k + beta])


def _pole_stop(spec: MLSpec, z: Fraction) -> Optional[int]:
    """Index from which every term is exactly zero, or None."""
    if spec.family == "delta":
        w = z - spec.alpha + 2
        if w.denominator == 1:
            return max(int(w), 0)
        return None
    # nabla: 1/Gamma(z) = 0 for z in {0, -1, ...}; once the numerator argument
    # is positive the pole no longer cancels
    if z.denominator == 1 and z <= 0:
        k = 0
        while z + k * spec.alpha + spec.beta - 1 <= 0:
            k += 1
        return k
    return None


def ml_series(spec: MLSpec, z: Scalar) -> MLResult:
    """Evaluate the series and report the truncation index K.

    K is the last index included: the first vanishing index under pole
    termination, or the third consecutive small term under the tolerance rule.
    """
    z = to_exact(z)
    term = delta_term if spec.family == "delta" else nabla_term
    lam = spec.lam
    stop = _pole_stop(spec, z)
    if lam == 0.0:
        return MLResult(term(spec.alpha, spec.beta, z, 0), 0, "zero-lambda")
    if stop is None and abs(lam) >= 1:
        raise DomainError(
            f"|lambda| = {abs(lam)!r} >= 1: the {spec.family} series at z={format_exact(z)} "
            "does not terminate and is only summed for |lambda| < 1"
        )
    terms: list[float] = []
    running = 0.0
    scale = 1.0
    small = 0
    k_floor = math.ceil(abs(z)) + 2
    for k in range(spec.k_max + 1):
        if stop is not None and k >= stop:
            terms.append(0.0)
            return MLResult(math.fsum(terms), k, "pole")
        t = scale * term(spec.alpha, spec.beta, z, k)
        terms.append(t)
        running += t
        if not math.isfinite(running):
            break
        if k >= k_floor and abs(t) < spec.tol * (1 + abs(running)):
            small += 1
            if small >= 3:
                return MLResult(math.fsum(terms), k, "tolerance")
        else:
            small = 0
        scale *= lam
    partial = math.fsum(terms)
    raise NonConvergenceError(
        f"{spec.family} Mittag-Leffler series at z={format_exact(z)} did not converge "
        f"within {spec.k_max} terms (last term {abs(terms[-1]):.3e})",
        partial=partial, last_term=terms[-1], terms=len(terms),
    )


def ml_eval(spec: MLSpec, z: Scalar) -> float:
    return ml_series(spec, z).value
