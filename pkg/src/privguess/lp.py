"""Dense linear programming by two-phase simplex.

Maximizes a linear objective over ``{x >= 0 : a_eq x = b_eq, a_ub x <= b_ub}``.
All variables are nonnegative by construction (the quantities optimized here
are probabilities and bounds on probabilities), so free variables are not
supported.

Method: slack variables turn inequalities into equalities. Slack columns of
inequality rows with nonnegative right-hand side form the initial basis;
remaining rows (equalities, and inequalities whose rhs had to be negated)
get artificial variables, driven to zero in phase 1 or certifying
infeasibility. Phase 2 optimizes the real objective. Pivoting uses Bland's
anti-cycling rule throughout, which makes every solve deterministic and
guarantees termination; an iteration budget is still enforced and exceeding
it raises :class:`NumericalError` rather than ever mislabeling a point
OPTIMAL. Optimal points are basic feasible solutions, i.e. vertices of the
polytope.

The pivot loop itself lives in a swappable kernel (compiled extension with a
NumPy fallback, chosen at import); see ``_backend``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._backend import STATUS_BUDGET, STATUS_UNBOUNDED, run_simplex
from .errors import DimensionMismatchError, NumericalError

__all__ = ["LinearProgram", "LpSolution", "LpStatus", "solve_lp"]

#: tableau pivot tolerance
PIVOT_TOL = 1e-10

#: feasibility / optimality certificate tolerance
FEAS_TOL = 1e-8


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    """max objective . x  subject to  a_eq x = b_eq, a_ub x <= b_ub, x >= 0."""

    objective: np.ndarray
    a_eq: np.ndarray
    b_eq: np.ndarray
    a_ub: np.ndarray
    b_ub: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.objective, dtype=np.float64))
        n = c.shape[0]
        a_eq = np.asarray(self.a_eq, dtype=np.float64).reshape(-1, n)
        a_ub = np.asarray(self.a_ub, dtype=np.float64).reshape(-1, n)
        b_eq = np.atleast_1d(np.asarray(self.b_eq, dtype=np.float64)) if np.size(self.b_eq) else np.zeros(0)
        b_ub = np.atleast_1d(np.asarray(self.b_ub, dtype=np.float64)) if np.size(self.b_ub) else np.zeros(0)
        if b_eq.shape[0] != a_eq.shape[0] or b_ub.shape[0] != a_ub.shape[0]:
            raise DimensionMismatchError("constraint matrix and rhs row counts differ")
        for arr in (c, a_eq, b_eq, a_ub, b_ub):
            if not np.all(np.isfinite(arr)):
                raise DimensionMismatchError("non-finite coefficient in linear program")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "a_eq", a_eq)
        object.__setattr__(self, "b_eq", b_eq)
        object.__setattr__(self, "a_ub", a_ub)
        object.__setattr__(self, "b_ub", b_ub)

    @property
    def n_vars(self) -> int:
        return self.objective.shape[0]

    @property
    def eq_constraints(self) -> list[tuple[np.ndarray, float]]:
        return [(self.a_eq[i], float(self.b_eq[i])) for i in range(self.a_eq.shape[0])]

    @property
    def ineq_constraints(self) -> list[tuple[np.ndarray, float]]:
        return [(self.a_ub[i], float(self.b_ub[i])) for i in range(self.a_ub.shape[0])]


@dataclass(frozen=True)
class LpSolution:
    """Certified outcome of a solve.

    ``point``/``value`` are None unless ``status`` is OPTIMAL. Optimal points
    satisfy every constraint within ``FEAS_TOL`` (verified before returning).
    """

    status: LpStatus
    value: float | None
    point: np.ndarray | None
    iterations: int


def solve_lp(prog: LinearProgram, *, kernel=None, max_iter: int | None = None) -> LpSolution:
    """Solve ``prog`` with the two-phase dense simplex.

    ``kernel`` overrides the pivot kernel (used by benchmarks); ``max_iter``
    bounds pivots per phase. Raises :class:`NumericalError` if the budget is
    exhausted or the final point fails its feasibility certificate.
    """
    pivot = kernel if kernel is not None else run_simplex
    c = prog.objective
    n = prog.n_vars
    me, mi = prog.a_eq.shape[0], prog.a_ub.shape[0]
    m = me + mi
    n_real = n + mi  # original variables plus slacks

    if m == 0:
        # only the nonnegativity box: optimum is x = 0 unless some profit is positive
        if np.any(c > PIVOT_TOL):
            return LpSolution(LpStatus.UNBOUNDED, None, None, 0)
        return LpSolution(LpStatus.OPTIMAL, 0.0, np.zeros(n), 0)

    if max_iter is None:
        max_iter = 100 * (m + n_real) + 1000

    # standard form [A | slacks], rhs made nonnegative row by row
    a = np.zeros((m, n_real))
    a[:me, :n] = prog.a_eq
    a[me:, :n] = prog.a_ub
    a[me:, n:] = np.eye(mi)
    b = np.concatenate([prog.b_eq, prog.b_ub])
    neg = b < 0.0
    a[neg] *= -1.0
    b = np.abs(b)

    # initial basis: slack where its coefficient stayed +1, artificial elsewhere
    art_rows = np.nonzero(np.concatenate([np.ones(me, dtype=bool), neg[me:]]))[0]
    n_art = art_rows.shape[0]
    basis = np.empty(m, dtype=np.int64)
    basis[me:] = np.arange(n, n_real)
    basis[art_rows] = n_real + np.arange(n_art)

    iters = 0
    if n_art:
        t = np.zeros((m + 1, n_real + n_art + 1))
        t[:m, :n_real] = a
        t[art_rows, n_real + np.arange(n_art)] = 1.0
        t[:m, -1] = b
        t[m, :n_real] = a[art_rows].sum(axis=0)
        t[m, -1] = b[art_rows].sum()

        status, it1 = pivot(t, basis, n_real, PIVOT_TOL, max_iter)
        iters += it1
        if status == STATUS_BUDGET:
            raise NumericalError(f"phase-1 pivot budget ({max_iter}) exhausted")
        if status == STATUS_UNBOUNDED:  # cannot happen: phase-1 objective is bounded by 0
            raise NumericalError("phase-1 reported unbounded")
        if t[m, -1] > FEAS_TOL:
            return LpSolution(LpStatus.INFEASIBLE, None, None, iters)
        t, basis = _purge_artificials(t, basis, n_real)
        m = basis.shape[0]
        a, b = t[:m, :n_real], t[:m, -1]

    # phase 2: price out the basis for the real objective
    t2 = np.zeros((m + 1, n_real + 1))
    t2[:m, :n_real] = a
    t2[:m, -1] = b
    row = np.zeros(n_real + 1)
    row[:n] = c
    for r in range(m):
        cb = row[basis[r]]
        if cb != 0.0:
            row = row - cb * t2[r]
    t2[m] = row

    status, it2 = pivot(t2, basis, n_real, PIVOT_TOL, max_iter)
    iters += it2
    if status == STATUS_BUDGET:
        raise NumericalError(f"phase-2 pivot budget ({max_iter}) exhausted")
    if status == STATUS_UNBOUNDED:
        return LpSolution(LpStatus.UNBOUNDED, None, None, iters)

    # optimality certificate: no improving reduced cost remains
    worst = float(t2[basis.shape[0], :n_real].max()) if n_real else 0.0
    if worst > FEAS_TOL:
        raise NumericalError(f"reduced cost {worst} above {FEAS_TOL} at claimed optimum")

    x_full = np.zeros(n_real)
    x_full[basis] = t2[:basis.shape[0], -1]
    point = x_full[:n]
    _certify(prog, point)
    point = np.maximum(point, 0.0)  # clip roundoff-negative basics
    return LpSolution(LpStatus.OPTIMAL, float(c @ point), point, iters)


def _purge_artificials(t: np.ndarray, basis: np.ndarray, n_real: int) -> tuple[np.ndarray, np.ndarray]:
    """Pivot artificials out of the basis; drop rows of redundant constraints."""
    m = basis.shape[0]
    drop = []
    for r in range(m):
        if basis[r] < n_real:
            continue
        cols = np.nonzero(np.abs(t[r, :n_real]) > PIVOT_TOL)[0]
        if cols.size == 0:
            drop.append(r)  # zero row: constraint was redundant
            continue
        j = int(cols[0])
        t[r] /= t[r, j]
        factors = t[:, j].copy()
        factors[r] = 0.0
        t -= np.outer(factors, t[r])
        t[:, j] = 0.0
        t[r, j] = 1.0
        basis[r] = j
    if drop:
        keep = np.setdiff1d(np.arange(m), np.array(drop, dtype=int))
        t = np.vstack([t[keep], t[m:]])
        basis = basis[keep]
    return t, basis


def _certify(prog: LinearProgram, x: np.ndarray) -> None:
    """Feasibility certificate for a claimed-optimal point."""
    if np.any(x < -FEAS_TOL):
        raise NumericalError("negative component in simplex solution")
    if prog.a_eq.shape[0]:
        res = float(np.abs(prog.a_eq @ x - prog.b_eq).max())
        if res > FEAS_TOL:
            raise NumericalError(f"equality residual {res} exceeds {FEAS_TOL}")
    if prog.a_ub.shape[0]:
        res = float((prog.a_ub @ x - prog.b_ub).max())
        if res > FEAS_TOL:
            raise NumericalError(f"inequality violation {res} exceeds {FEAS_TOL}")
