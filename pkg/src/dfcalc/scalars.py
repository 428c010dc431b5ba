"""Exact rational scalars and a pole-aware gamma ratio.

Orders, base points and grid offsets are :class:`fractions.Fraction` values.
Every gamma argument that appears in the factorial powers is therefore
rational, and deciding whether it sits on a pole of Gamma is an exact test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from functools import lru_cache
from numbers import Rational, Real
from typing import Optional, Union

from .errors import DomainError, InfiniteValueError

Scalar = Union[Fraction, int, float]

# math.gamma overflows just above 171
_DIRECT_GAMMA_LIMIT = 170.0


def to_exact(value) -> Fraction:
    """Convert ``value`` to a Fraction without binary rounding.

    Strings accept ``"p/q"``, integers and decimals (``"0.25"`` is exactly
    1/4).  Floats are converted through their shortest decimal repr, so
    ``0.1`` becomes 1/10 rather than the nearest binary fraction.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError(f"not a number: {value!r}")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"non-finite scalar: {value!r}")
        return Fraction(Decimal(repr(value)))
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                return Fraction(text)
            return Fraction(Decimal(text))
        except (ValueError, ZeroDivisionError, InvalidOperation) as exc:
            raise DomainError(f"cannot parse rational literal {value!r}") from exc
    raise DomainError(f"unsupported scalar type: {type(value).__name__}")


def format_exact(value: Fraction) -> str:
    """Render a Fraction as ``p`` or ``p/q`` (inverse of :func:`to_exact`)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def is_integer(x: Scalar) -> bool:
    if isinstance(x, Rational):
        return Fraction(x).denominator == 1
    return float(x).is_integer()


def floor_order(alpha: Scalar) -> int:
    """Return ``n = [alpha] + 1`` with ``[alpha]`` the largest integer below alpha.

    With this convention an integer order maps to itself: 2 -> 2, 1/2 -> 1,
    7/3 -> 3.
    """
    alpha = to_exact(alpha)
    if alpha <= 0:
        raise DomainError(f"order must be positive, got {format_exact(alpha)}")
    return math.ceil(alpha)


@dataclass(frozen=True)
class PoleClass:
    """Classification of a gamma argument: regular, or the pole at ``-m``."""

    pole: bool
    m: Optional[int] = None

    @classmethod
    def of(cls, x: Scalar) -> "PoleClass":
        if isinstance(x, Rational):
            x = Fraction(x)
            if x.denominator == 1 and x <= 0:
                return cls(True, -x.numerator)
            return cls(False)
        x = float(x)
        if x.is_integer() and x <= 0:
            return cls(True, int(-x))
        return cls(False)


def _gamma_ratio_regular(p: float, q: float) -> float:
    if abs(p) < _DIRECT_GAMMA_LIMIT and abs(q) < _DIRECT_GAMMA_LIMIT:
        gp = math.gamma(p)
        gq = math.gamma(q)
        if gp != 0.0 and math.isfinite(gp) and math.isfinite(gq):
            return gp / gq
    # lgamma returns log|Gamma|; the sign is negative exactly when the
    # argument is negative with an odd integer part
    sign = _gamma_sign(p) * _gamma_sign(q)
    log = math.lgamma(p) - math.lgamma(q)
    if log > 709.0:
        return sign * math.inf
    return sign * math.exp(log)


def _gamma_sign(x: float) -> int:
    if x > 0:
        return 1
    return -1 if math.floor(x) % 2 else 1


@lru_cache(maxsize=1 << 16)
def _gamma_ratio_cached(p, q) -> float:
    cp, cq = PoleClass.of(p), PoleClass.of(q)
    if cq.pole:
        if not cp.pole:
            return 0.0
        # Gamma(-m+e)/Gamma(-n+e) -> (-1)^(n-m) n!/m!
        m, n = cp.m, cq.m
        sign = -1.0 if (n - m) % 2 else 1.0
        if m <= n:
            return sign * float(math.prod(range(m + 1, n + 1)))
        return sign / float(math.prod(range(n + 1, m + 1)))
    if cp.pole:
        raise InfiniteValueError(
            f"Gamma({_show(p)})/Gamma({_show(q)}) is infinite (pole in numerator)"
        )
    return _gamma_ratio_regular(float(p), float(q))


def _show(x) -> str:
    return format_exact(x) if isinstance(x, Fraction) else repr(x)


def gamma_ratio(p: Scalar, q: Scalar) -> float:
    """Gamma(p)/Gamma(q) with limit semantics at the poles.

    * both regular: the ordinary ratio;
    * pole in ``q`` only: 0 (division at a pole yields zero);
    * poles at ``p = -m`` and ``q = -n``: the limit ``(-1)^(n-m) n!/m!``;
    * pole in ``p`` only: :class:`InfiniteValueError`.

    Rational arguments are classified exactly; floats count as poles only
    when they are exactly a non-positive integer.
    """
    if isinstance(p, Rational) and not isinstance(p, Fraction):
        p = Fraction(p)
    if isinstance(q, Rational) and not isinstance(q, Fraction):
        q = Fraction(q)
    if isinstance(p, Real) and not isinstance(p, Fraction):
        p = float(p)
    if isinstance(q, Real) and not isinstance(q, Fraction):
        q = float(q)
    return _gamma_ratio_cached(p, q)


def rgamma(x: Scalar) -> float:
    """1/Gamma(x), zero at the poles."""
    return gamma_ratio(1, x) if not PoleClass.of(x).pole else 0.0


def gamma(x: Scalar) -> float:
    """Gamma(x); raises :class:`InfiniteValueError` at a pole."""
    return gamma_ratio(x, 1)
