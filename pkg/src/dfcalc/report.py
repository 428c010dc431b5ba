"""Residual records for identity checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .errors import DomainError
from .grid import GridFn, common_window
from .scalars import format_exact

DEFAULT_TOL = 1e-9


@dataclass
class IdentityReport:
    suite: str
    residual: float
    points: int
    tol: float = DEFAULT_TOL
    params: dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return bool(self.points > 0 and self.residual < self.tol and np.isfinite(self.residual))

    def params_text(self) -> str:
        return ";".join(f"{k}={_fmt(v)}" for k, v in self.params.items())

    def row(self) -> list[str]:
        return [self.suite, self.params_text(), "" if self.seed is None else str(self.seed),
                f"{self.residual:.3e}", "pass" if self.passed else "FAIL"]

    def to_json(self) -> str:
        return json.dumps({
            "suite": self.suite,
            "params": {k: _fmt(v) for k, v in self.params.items()},
            "seed": self.seed,
            "residual": self.residual,
            "points": self.points,
            "tol": self.tol,
            "pass": self.passed,
        }, sort_keys=True)


REPORT_HEADER = ["suite", "params", "seed", "residual", "pass"]


def _fmt(v) -> str:
    if hasattr(v, "denominator"):
        return format_exact(v)
    return str(v)


def max_residual(lhs: GridFn, rhs: GridFn) -> tuple[float, int]:
    """Max |lhs - rhs| over the shared points and the number of shared points."""
    lo, n = common_window(lhs, rhs)
    if n == 0:
        raise DomainError(
            "the two sides share no grid points "
            f"([{format_exact(lhs.start)}..{format_exact(lhs.last)}] vs "
            f"[{format_exact(rhs.start)}..{format_exact(rhs.last)}])"
        )
    d = lhs.restrict(lo, n).values - rhs.restrict(lo, n).values
    return float(np.max(np.abs(d))), n


def compare(suite: str, lhs: GridFn, rhs: GridFn, tol: float = DEFAULT_TOL,
            params: Optional[dict] = None, seed: Optional[int] = None) -> IdentityReport:
    res, n = max_residual(lhs, rhs)
    return IdentityReport(suite, res, n, tol, dict(params or {}), seed)
