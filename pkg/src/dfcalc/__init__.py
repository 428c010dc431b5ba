"""Discrete fractional calculus: delta and nabla fractional sums, Riemann,
Caputo and dual Caputo differences, their dual identities, discrete
Mittag-Leffler functions and linear Caputo difference equations."""

__version__ = "0.1.0"

from .errors import (
    DfcalcError,
    DomainError,
    InfiniteValueError,
    NonConvergenceError,
    PreconditionError,
)
from .scalars import floor_order, format_exact, gamma, gamma_ratio, rgamma, to_exact
from .grid import GridFn, read_csv, write_csv
from .powers import delta, diff_n, falling, nabla, power, rising
from .sums import OpSpec, frac_sum, fsum, power_rule, semigroup_residual
from .differences import (
    apply,
    boundary_data,
    caputo_diff,
    dual_caputo_diff,
    inversion_residual,
    relate_residual,
    riemann_diff,
)
from .report import IdentityReport
from .dualities import SUITE_IDS, HarnessConfig, check_identity, q_transform, run_all_suites
from .mittag_leffler import MLSpec, ml_eval, ml_series
from .solver import (
    FdeProblem,
    SolveReport,
    q_transform_check,
    solve,
    solve_march,
    solve_ml,
    solve_successive,
)

__all__ = [name for name in dir() if not name.startswith("_")]
