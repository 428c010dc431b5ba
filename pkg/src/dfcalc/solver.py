"""Linear Caputo fractional difference equations, 0 < alpha <= 1.

    delta:  C-Delta_a^alpha y(t) = lam y(t+alpha-1) + f(t),  t in N_0,  a = alpha-1
    nabla:  C-Nabla_a^alpha y(t) = lam y(t) + f(t),          t in N_{a+1}

with y(a) = a0 and y sampled on a, a+1, ..., a+N.  Three solvers are
provided: the Mittag-Leffler closed form, step-by-step marching (the
reference), and successive approximation.  Every report carries the
residual of the defining equation, recomputed through the operator
module rather than the solver's own recurrence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .differences import caputo_diff
from .dualities import q_transform
from .errors import DomainError
from .grid import GridFn
from .mittag_leffler import MLSpec, ml_eval
from .report import DEFAULT_TOL, IdentityReport, compare
from .scalars import format_exact, to_exact
from .sums import OpSpec, fsum, sum_weights

METHODS = ("ml-closed-form", "marching", "successive-approx")
FORCINGS = ("zero", "one", "ramp")


@dataclass(frozen=True)
class FdeProblem:
    calculus: str
    alpha: Fraction
    lam: float
    a0: float = 1.0
    N: int = 12
    forcing: Optional[GridFn] = None
    a: Optional[Fraction] = None

    def __post_init__(self):
        if self.calculus not in ("delta", "nabla"):
            raise DomainError(f"calculus must be delta or nabla, got {self.calculus!r}")
        alpha = to_exact(self.alpha)
        if not 0 < alpha <= 1:
            raise DomainError(f"solver needs 0 < alpha <= 1, got {format_exact(alpha)}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "a0", float(self.a0))
        if self.N < 0:
            raise DomainError("horizon N must be non-negative")
        if self.calculus == "delta":
            if self.a is not None and to_exact(self.a) != alpha - 1:
                raise DomainError("the delta problem is posed with a = alpha - 1")
            a = alpha - 1
        else:
            a = Fraction(0) if self.a is None else to_exact(self.a)
        object.__setattr__(self, "a", a)
        lo, hi = self.equation_window
        if self.forcing is None:
            object.__setattr__(self, "forcing", GridFn.constant(0.0, lo, max(int(hi - lo) + 1, 1)))
        elif self.N > 0 and not (self.forcing.has(lo) and self.forcing.has(hi)):
            raise DomainError(
                f"forcing must cover t = {format_exact(lo)}..{format_exact(hi)}"
            )

    @property
    def equation_window(self) -> tuple[Fraction, Fraction]:
        """First and last t at which the equation is imposed."""
        if self.calculus == "delta":
            return Fraction(0), Fraction(self.N - 1)
        return self.a + 1, self.a + self.N

    def f_values(self) -> np.ndarray:
        lo, hi = self.equation_window
        if hi < lo:
            return np.zeros(0)
        return np.array(self.forcing.restrict(lo, int(hi - lo) + 1).values, dtype=float)


def builtin_forcing(name: str, problem_calculus: str, alpha, N: int, a=None) -> GridFn:
    """``zero``, ``one`` or ``ramp`` (f(t) = t) on the equation window."""
    alpha = to_exact(alpha)
    if problem_calculus == "delta":
        lo = Fraction(0)
    else:
        lo = (Fraction(0) if a is None else to_exact(a)) + 1
    count = max(N, 1)
    if name == "zero":
        return GridFn.constant(0.0, lo, count)
    if name == "one":
        return GridFn.constant(1.0, lo, count)
    if name == "ramp":
        return GridFn.from_function(float, lo, count)
    raise DomainError(f"unknown forcing {name!r}; expected one of {', '.join(FORCINGS)}")


@dataclass
class SolveReport:
    solution: GridFn
    method: str
    residual: float
    iterations: Optional[int] = None

    @property
    def initial_value(self) -> float:
        return float(self.solution.values[0])


def equation_residual(problem: FdeProblem, y: GridFn) -> float:
    """max |Caputo difference of y - lam * y(shifted) - f| over the equation window."""
    if problem.N == 0:
        return 0.0
    lo, hi = problem.equation_window
    cap = caputo_diff(OpSpec("caputo", problem.calculus, "left", problem.alpha, problem.a), y)
    if problem.calculus == "delta":
        rhs = y.shift(problem.alpha - 1).scale(problem.lam)
    else:
        rhs = y.scale(problem.lam)
    rhs = rhs + problem.forcing
    lhs = cap.between(lo, hi)
    rhs = rhs.between(lo, hi)
    return float(np.max(np.abs(lhs.values - rhs.values)))


def _report(problem: FdeProblem, values, method: str, iterations=None) -> SolveReport:
    y = GridFn(problem.a, np.asarray(values, dtype=float))
    return SolveReport(y, method, equation_residual(problem, y), iterations)


def solve_march(problem: FdeProblem) -> SolveReport:
    """Advance one lattice point at a time.

    The Caputo difference of order alpha is a weighted sum of first
    differences with weights of order 1-alpha and leading weight 1, so each
    step is a scalar linear equation in the newest value.
    """
    N, lam, f = problem.N, problem.lam, problem.f_values()
    w = sum_weights(problem.calculus, 1 - problem.alpha, N + 1)
    y = np.empty(N + 1)
    y[0] = problem.a0
    dy = np.zeros(N + 1)  # dy[i] = y[i] - y[i-1]
    if problem.calculus == "delta":
        # equation at t = j involves y[j+1] through w[0] * (y[j+1] - y[j])
        for j in range(N):
            hist = float(np.dot(w[j:0:-1], dy[1:j + 1])) if j else 0.0
            y[j + 1] = (1 + lam) * y[j] + f[j] - hist
            dy[j + 1] = y[j + 1] - y[j]
    else:
        if lam == 1.0:
            raise DomainError("nabla marching is singular for lambda = 1")
        for j in range(1, N + 1):
            hist = float(np.dot(w[j - 1:0:-1], dy[1:j])) if j > 1 else 0.0
            y[j] = (y[j - 1] + f[j - 1] - hist) / (1 - lam)
            dy[j] = y[j] - y[j - 1]
    return _report(problem, y, "marching")


def solve_ml(problem: FdeProblem, tol: float = 1e-16) -> SolveReport:
    """Sample the Mittag-Leffler solution formula on the grid."""
    al, lam, a, N = problem.alpha, problem.lam, problem.a, problem.N
    f = problem.f_values()
    e1 = MLSpec(problem.calculus, al, 1, lam, tol)
    e2 = MLSpec(problem.calculus, al, al, lam, tol)
    y = np.empty(N + 1)
    if problem.calculus == "delta":
        # y(t) = a0 E(lam, t) + sum_{s=0}^{t-alpha} E_{alpha,alpha}(lam, t-s-1) f(s)
        kern = [0.0] + [ml_eval(e2, a + d - 1) for d in range(1, N + 1)]
        for m in range(N + 1):
            acc = [problem.a0 * ml_eval(e1, a + m)]
            acc += [kern[m - s] * f[s] for s in range(m)]
            y[m] = math.fsum(acc)
    else:
        # y(t) = a0 E(lam, t-a) + sum_{s=a+1}^{t} E_{alpha,alpha}(lam, t-s+1) f(s)
        kern = [ml_eval(e2, d + 1) for d in range(N)]
        for m in range(N + 1):
            acc = [problem.a0 * ml_eval(e1, m)]
            acc += [kern[m - i] * f[i - 1] for i in range(1, m + 1)]
            y[m] = math.fsum(acc)
    return _report(problem, y, "ml-closed-form")


def picard_step(problem: FdeProblem, y: np.ndarray) -> np.ndarray:
    """One successive-approximation step y -> a0 + (fractional sum)[lam y + f]."""
    al, a, lam, N = problem.alpha, problem.a, problem.lam, problem.N
    f = problem.f_values()
    out = np.empty(N + 1)
    out[0] = problem.a0
    if N == 0:
        return out
    if problem.calculus == "delta":
        # g(t) = lam y(t+alpha-1) + f(t) on N_0; Delta_0^{-alpha} g lands on N_alpha
        g = GridFn(0, lam * y[:N] + f)
        s = fsum("delta", "left", g, 0, al)
        out[1:] = s.values[:N]
    else:
        g = GridFn(a, np.concatenate(([0.0], lam * y[1:] + f)))
        s = fsum("nabla", "left", g, a, al)
        out[1:] = s.values[1:N + 1]
    out[1:] += problem.a0
    return out


def solve_successive(problem: FdeProblem, iterations: int = 50, stop_tol: float = 1e-12
                     ) -> SolveReport:
    """Picard iteration from y0 = a0, stopping early once iterates agree to ``stop_tol``."""
    if iterations < 0:
        raise DomainError("iterations must be non-negative")
    y = np.full(problem.N + 1, problem.a0)
    done = 0
    for done in range(1, iterations + 1):
        nxt = picard_step(problem, y)
        gap = float(np.max(np.abs(nxt - y)))
        y = nxt
        if gap < stop_tol:
            break
    else:
        done = iterations
    return _report(problem, y, "successive-approx", done)


SOLVERS = {
    "ml": solve_ml,
    "march": solve_march,
    "picard": solve_successive,
}


def solve(problem: FdeProblem, method: str = "march", **kw) -> SolveReport:
    try:
        fn = SOLVERS[method]
    except KeyError:
        raise DomainError(f"unknown method {method!r}; expected ml, march or picard") from None
    return fn(problem, **kw)


def q_transform_check(problem: FdeProblem, tol: float = DEFAULT_TOL,
                      solution: Optional[GridFn] = None) -> IdentityReport:
    """Check that Qy solves the right-sided equation obtained by reflection.

    With b = a + N and (Qy)(t) = y(a+b-t):
        (right Caputo at b of Qy)(t) = lam y(2a+b-t) + f(a+b-t),  (Qy)(b) = a0.
    """
    if problem.calculus != "delta":
        raise DomainError("q_transform_check is defined for the delta problem")
    y = solution if solution is not None else solve_ml(problem).solution
    a, N = problem.a, problem.N
    b = a + N
    qy = q_transform(y, a, b)
    params = {"alpha": problem.alpha, "lambda": problem.lam, "N": N}
    if N == 0:
        return IdentityReport("q-fde", 0.0, 1, tol, params)
    lhs = caputo_diff(OpSpec("caputo", "delta", "right", problem.alpha, b), qy)
    f = problem.forcing
    lo = a + b - (N - 1)  # a+b-t runs over the equation window 0..N-1
    rhs = GridFn.from_function(
        lambda t: problem.lam * y(2 * a + b - t) + f(a + b - t), lo, N)
    rep = compare("q-fde", lhs, rhs, tol, params)
    if qy(b) != problem.a0:
        rep.residual = max(rep.residual, abs(qy(b) - problem.a0))
    return rep
