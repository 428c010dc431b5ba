"""Unit-step grids, grid functions and the jumping operators.

A :class:`GridFn` samples a function on ``start, start+1, ..., start+N-1``.
Points are exact Fractions.  Both N_a and _bN windows use this ascending
layout; which end is the base point is a property of the operator applied,
not of the data.  Samples a nabla Caputo difference needs before ``a`` (or
after ``b``) are simply part of the window.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from .errors import DomainError
from .scalars import Scalar, format_exact, to_exact


def sigma(t: Scalar) -> Fraction:
    """Forward jump t+1."""
    return to_exact(t) + 1


def rho(t: Scalar) -> Fraction:
    """Backward jump t-1."""
    return to_exact(t) - 1


def same_lattice(x: Scalar, y: Scalar) -> bool:
    """True when x and y differ by an integer."""
    return (to_exact(x) - to_exact(y)).denominator == 1


@dataclass(frozen=True)
class GridFn:
    start: Fraction
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        start = to_exact(self.start)
        vals = np.array(self.values, dtype=float)
        if vals.ndim != 1:
            raise DomainError("grid values must be one-dimensional")
        vals.setflags(write=False)
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, func: Callable[[Fraction], float], start: Scalar,
                      length: int) -> "GridFn":
        start = to_exact(start)
        return cls(start, [float(func(start + k)) for k in range(length)])

    @classmethod
    def constant(cls, c: float, start: Scalar, length: int) -> "GridFn":
        return cls(start, np.full(length, float(c)))

    @classmethod
    def empty(cls, start: Scalar) -> "GridFn":
        return cls(start, np.zeros(0))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def last(self) -> Fraction:
        return self.start + len(self) - 1

    @property
    def points(self) -> list[Fraction]:
        return [self.start + k for k in range(len(self))]

    def items(self) -> Iterator[tuple[Fraction, float]]:
        for k, v in enumerate(self.values):
            yield self.start + k, float(v)

    def index(self, t: Scalar) -> int:
        t = to_exact(t)
        d = t - self.start
        if d.denominator != 1 or not 0 <= d < len(self):
            raise DomainError(
                f"t={format_exact(t)} is not a grid point of "
                f"[{format_exact(self.start)}..{format_exact(self.last)}]"
            )
        return int(d)

    def has(self, t: Scalar) -> bool:
        d = to_exact(t) - self.start
        return d.denominator == 1 and 0 <= d < len(self)

    def __call__(self, t: Scalar) -> float:
        return float(self.values[self.index(t)])

    def on_lattice(self, t: Scalar) -> bool:
        return same_lattice(t, self.start)

    def restrict(self, offset: Scalar, length: int) -> "GridFn":
        """Sub-window of ``length`` points starting at ``offset``."""
        offset = to_exact(offset)
        if length < 0:
            raise DomainError("negative window length")
        if length == 0:
            if not self.on_lattice(offset):
                raise DomainError(f"offset {format_exact(offset)} is off the grid lattice")
            return GridFn.empty(offset)
        i = self.index(offset)
        if i + length > len(self):
            raise DomainError(
                f"window [{format_exact(offset)}..{format_exact(offset + length - 1)}] "
                f"exceeds grid end {format_exact(self.last)}"
            )
        return GridFn(offset, self.values[i:i + length])

    def between(self, lo: Scalar, hi: Scalar) -> "GridFn":
        """Clip to the closed interval [lo, hi] (lo, hi on the lattice)."""
        lo, hi = to_exact(lo), to_exact(hi)
        lo = max(lo, self.start)
        hi = min(hi, self.last)
        if hi < lo:
            return GridFn.empty(lo)
        return self.restrict(lo, int(hi - lo) + 1)

    def shift(self, h: Scalar) -> "GridFn":
        """The function t -> f(t + h), living on the window moved by -h."""
        return GridFn(self.start - to_exact(h), self.values)

    def __add__(self, other: "GridFn") -> "GridFn":
        return _combine(self, other, np.add)

    def __sub__(self, other: "GridFn") -> "GridFn":
        return _combine(self, other, np.subtract)

    def scale(self, c: float) -> "GridFn":
        return GridFn(self.start, c * self.values)

    def to_csv(self) -> str:
        buf = io.StringIO()
        write_csv(self, buf)
        return buf.getvalue()


def common_window(f: GridFn, g: GridFn) -> tuple[Fraction, int]:
    if len(f) and len(g) and not same_lattice(f.start, g.start):
        raise DomainError(
            f"grids on different lattices: {format_exact(f.start)} vs {format_exact(g.start)}"
        )
    lo = max(f.start, g.start)
    hi = min(f.last, g.last)
    return lo, max(0, int(hi - lo) + 1 if hi >= lo else 0)


def _combine(f: GridFn, g: GridFn, op) -> GridFn:
    lo, n = common_window(f, g)
    if n == 0:
        return GridFn.empty(lo)
    return GridFn(lo, op(f.restrict(lo, n).values, g.restrict(lo, n).values))


def write_csv(f: GridFn, stream) -> None:
    """Write ``t,value`` rows; ``t`` is exact, values use repr (round-trips)."""
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["t", "value"])
    for t, v in f.items():
        w.writerow([format_exact(t), repr(v)])


def read_csv(stream) -> GridFn:
    """Parse a ``t,value`` CSV (header required, unit-spaced ascending t)."""
    rows = list(csv.reader(stream))
    if not rows or [c.strip().lower() for c in rows[0][:2]] != ["t", "value"]:
        raise DomainError("CSV must start with a 't,value' header")
    body = [r for r in rows[1:] if r and any(c.strip() for c in r)]
    if not body:
        raise DomainError("CSV contains no samples")
    ts: list[Fraction] = []
    vals: list[float] = []
    for lineno, r in enumerate(body, start=2):
        if len(r) < 2:
            raise DomainError(f"line {lineno}: expected two columns")
        ts.append(to_exact(r[0]))
        try:
            vals.append(float(r[1]))
        except ValueError as exc:
            raise DomainError(f"line {lineno}: bad value {r[1]!r}") from exc
    order = sorted(range(len(ts)), key=ts.__getitem__)
    ts = [ts[i] for i in order]
    vals = [vals[i] for i in order]
    for prev, cur in zip(ts, ts[1:]):
        if cur - prev != 1:
            raise DomainError(
                f"samples must be unit-spaced: {format_exact(prev)} -> {format_exact(cur)}"
            )
    return GridFn(ts[0], vals)

