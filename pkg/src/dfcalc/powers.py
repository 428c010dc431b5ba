"""Falling/rising factorial powers and integer difference operators."""

from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import DomainError
from .grid import GridFn
from .scalars import Scalar, gamma_ratio, to_exact


class PowerKind(str, Enum):
    FALLING = "falling"
    RISING = "rising"


def falling(t: Scalar, alpha: Scalar) -> float:
    """t^(alpha) = Gamma(t+1)/Gamma(t+1-alpha); zero when the denominator is at a pole."""
    t = to_exact(t)
    alpha = to_exact(alpha)
    return gamma_ratio(t + 1, t + 1 - alpha)


def rising(t: Scalar, alpha: Scalar) -> float:
    """t^{alpha-bar} = Gamma(t+alpha)/Gamma(t); 0^{alpha-bar} = 0 for regular alpha."""
    t = to_exact(t)
    alpha = to_exact(alpha)
    return gamma_ratio(t + alpha, t)


def power(kind: PowerKind | str, t: Scalar, alpha: Scalar) -> float:
    return falling(t, alpha) if PowerKind(kind) is PowerKind.FALLING else rising(t, alpha)


DIFF_OPS = ("delta", "nabla", "circled-delta", "circled-nabla")


def diff_n(f: GridFn, n: int, op: str = "delta") -> GridFn:
    """Iterated difference of ``f``.

    ``delta`` is forward (result loses the last n points), ``nabla`` backward
    (loses the first n).  The circled variants carry the factor (-1)^n.
    """
    if op not in DIFF_OPS:
        raise DomainError(f"unknown difference operator {op!r}")
    if n < 0:
        raise DomainError("difference order must be non-negative")
    if n == 0:
        return f
    if len(f) < n + 1:
        raise DomainError(
            f"{op}^{n} needs at least {n + 1} samples, grid has {len(f)}"
        )
    vals = np.diff(f.values, n)
    if op.startswith("circled") and n % 2:
        vals = -vals
    start = f.start if op.endswith("delta") else f.start + n
    return GridFn(start, vals)


def delta(f: GridFn, n: int = 1) -> GridFn:
    return diff_n(f, n, "delta")


def nabla(f: GridFn, n: int = 1) -> GridFn:
    return diff_n(f, n, "nabla")


def delta_at(f: GridFn, k: int, t: Scalar) -> float:
    """Delta^k f(t) evaluated at one point (uses f on t..t+k)."""
    t = to_exact(t)
    return float(np.diff([f(t + j) for j in range(k + 1)], k)[0]) if k else f(t)


def nabla_at(f: GridFn, k: int, t: Scalar) -> float:
    """Nabla^k f(t) evaluated at one point (uses f on t-k..t)."""
    t = to_exact(t)
    return float(np.diff([f(t - k + j) for j in range(k + 1)], k)[0]) if k else f(t)
