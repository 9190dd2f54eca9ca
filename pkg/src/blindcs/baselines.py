"""Baseline reconstructions: BIHT and the l1 linear-programming model.

BIHT needs the sparsity level as an input; the LP model (minimal l1 norm
over the sign-consistency set with the measurement mass pinned) needs no
sparsity but returns solutions that are not necessarily sparse.  The LP
route runs on a self-contained dense two-phase simplex with Bland's rule,
which doubles as the oracle for the primal-dual solver's tests.
"""

import dataclasses
import itertools
import time

import numpy as np

from ._validation import check_count, check_matrix, check_positive, check_vector
from .problem import (
    ReconResult,
    count_sign_violations,
    one_bit_measure,
    sign_constraint_matrix,
    support_indices,
)

__all__ = [
    "BihtParams",
    "SimplexError",
    "SimplexResult",
    "StandardLP",
    "biht_solve",
    "hard_threshold",
    "l1_constraint_lp",
    "pv_formulate",
    "pv_solve",
    "simplex_solve",
]


# ---------------------------------------------------------------------------
# Binary iterative hard thresholding


@dataclasses.dataclass(frozen=True)
class BihtParams:
    """Sparsity input and iteration settings.

    ``variant`` selects the one-sided loss whose subgradient drives the
    correction: "l1" (sign mismatches) or "l2" (negative residuals).
    """

    sparsity: int
    variant: str = "l1"
    step: float = 1.0
    max_iter: int = 1000


def hard_threshold(a, s):
    """Keep the s largest-magnitude entries; ties go to the lowest index."""
    a = check_vector(a, name="a")
    s = check_count(s, "s", minimum=0)
    out = np.zeros_like(a)
    if s == 0:
        return out
    order = np.argsort(-np.abs(a), kind="stable")
    keep = order[:s]
    out[keep] = a[keep]
    return out


def _biht_arrays(phi, y, params):
    """Core iteration on raw arrays; returns (unit signal, violations, iters)."""
    m, n = phi.shape
    s = check_count(params.sparsity, "sparsity")
    if s > n:
        raise ValueError(f"sparsity {s} cannot exceed n={n}")
    if params.variant not in ("l1", "l2"):
        raise ValueError(f"variant must be 'l1' or 'l2', got {params.variant!r}")
    step = check_positive(params.step, "step")
    max_iter = check_count(params.max_iter, "max_iter")

    x = np.zeros(n)
    best_x = x
    best_violations = m + 1
    iterations = 0
    for iterations in range(1, max_iter + 1):
        z = phi @ x
        measured = np.where(z >= 0.0, 1.0, -1.0)
        if params.variant == "l1":
            correction = (step / 2.0) * (phi.T @ (y - measured))
        else:
            correction = -step * (phi.T @ (y * np.minimum(y * z, 0.0)))
        x = hard_threshold(x + correction, s)
        violations = int(np.count_nonzero(np.where(phi @ x >= 0.0, 1.0, -1.0) != y))
        if violations < best_violations:
            best_violations = violations
            best_x = x
        if violations == 0:
            break
    norm = np.linalg.norm(best_x)
    if norm > 0.0:
        best_x = best_x / norm
    return best_x, best_violations, iterations


def biht_solve(instance, params, support_rel_tol=1e-5):
    """Gradient step on the one-sided loss, then keep-s-largest projection.

    Stops at the first sign-consistent iterate or after ``max_iter``
    rounds, returning the fewest-violations iterate seen, scaled to unit
    l2 norm.
    """
    started = time.perf_counter()
    x, violations, iterations = _biht_arrays(instance.phi, instance.y, params)
    return ReconResult(
        x_est=x,
        violations=violations,
        support_size=int(support_indices(x, support_rel_tol).size),
        iterations=iterations,
        wall_time=time.perf_counter() - started,
    )


# ---------------------------------------------------------------------------
# Dense two-phase simplex


@dataclasses.dataclass(frozen=True)
class StandardLP:
    """min cost.x  s.t.  eq_matrix @ x == eq_rhs, x >= 0."""

    cost: np.ndarray
    eq_matrix: np.ndarray
    eq_rhs: np.ndarray

    @property
    def n_vars(self):
        return self.cost.size


@dataclasses.dataclass
class SimplexResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray | None
    objective: float | None
    pivots: int


class SimplexError(RuntimeError):
    """Raised by callers that require an optimal basic solution."""

    def __init__(self, status):
        super().__init__(f"linear program is {status}")
        self.status = status


_PIVOT_TOL = 1e-9


def _bland_pivot_loop(tableau, basis, n_cols, max_pivots):
    """Drive the tableau to optimality with Bland's anti-cycling rule.

    The last row holds reduced costs in the (z_j - c_j) convention, so the
    tableau is optimal when every entry is <= 0 (up to tolerance).
    Returns (status, pivots).
    """
    rows = tableau.shape[0] - 1
    pivots = 0
    while True:
        reduced = tableau[-1, :n_cols]
        eligible = np.flatnonzero(reduced > _PIVOT_TOL)
        if eligible.size == 0:
            return "optimal", pivots
        col = int(eligible[0])  # Bland: smallest improving index
        column = tableau[:rows, col]
        rhs = tableau[:rows, -1]
        candidates = np.flatnonzero(column > _PIVOT_TOL)
        if candidates.size == 0:
            return "unbounded", pivots
        ratios = rhs[candidates] / column[candidates]
        best = ratios.min()
        tied = candidates[np.flatnonzero(ratios <= best + _PIVOT_TOL)]
        # Bland tie-break: leave the basic variable with the smallest index.
        row = int(tied[np.argmin([basis[r] for r in tied])])
        _pivot(tableau, row, col)
        basis[row] = col
        pivots += 1
        if pivots > max_pivots:
            return "stalled", pivots


def _pivot(tableau, row, col):
    tableau[row] /= tableau[row, col]
    factors = tableau[:, col].copy()
    factors[row] = 0.0
    tableau -= np.outer(factors, tableau[row])
    tableau[:, col] = 0.0
    tableau[row, col] = 1.0


def simplex_solve(lp, max_pivots=None):
    """Dense two-phase simplex with Bland's rule throughout.

    Sized for desk-scale problems (hundreds of variables).  Infeasible or
    unbounded programs come back as a status, never an exception.
    """
    a = check_matrix(lp.eq_matrix, "eq_matrix")
    c = check_vector(lp.cost, a.shape[1], "cost")
    b = check_vector(lp.eq_rhs, a.shape[0], "eq_rhs")
    rows, n = a.shape
    if max_pivots is None:
        max_pivots = 200 * (rows + n)

    # Phase 1: nonnegative rhs, artificial basis, minimize artificial mass.
    a = a.copy()
    b = b.copy()
    flip = b < 0.0
    a[flip] *= -1.0
    b[flip] *= -1.0

    total = n + rows
    tableau = np.zeros((rows + 1, total + 1))
    tableau[:rows, :n] = a
    tableau[:rows, n:total] = np.eye(rows)
    tableau[:rows, -1] = b
    basis = list(range(n, total))
    # Reduced costs (z_j - c_j) for the artificial objective.
    tableau[-1, :n] = a.sum(axis=0)
    tableau[-1, -1] = b.sum()

    status, pivots = _bland_pivot_loop(tableau, basis, total, max_pivots)
    if status != "optimal":
        return SimplexResult("stalled", None, None, pivots)
    if tableau[-1, -1] > 1e-7 * max(1.0, float(np.abs(b).max())):
        return SimplexResult("infeasible", None, None, pivots)

    # Drive any residual artificials out of the basis (degenerate rows).
    drop_rows = []
    for row, var in enumerate(basis):
        if var < n:
            continue
        entering = np.flatnonzero(np.abs(tableau[row, :n]) > _PIVOT_TOL)
        if entering.size:
            _pivot(tableau, row, int(entering[0]))
            basis[row] = int(entering[0])
            pivots += 1
        else:
            drop_rows.append(row)  # redundant constraint
    if drop_rows:
        keep = [r for r in range(rows) if r not in drop_rows]
        tableau = tableau[keep + [rows]]
        basis = [basis[r] for r in keep]
        rows = len(keep)

    # Phase 2 on the original cost, artificial columns removed.
    tableau = np.hstack([tableau[:, :n], tableau[:, -1:]])
    basic_cost = c[basis]
    tableau[-1, :n] = basic_cost @ tableau[:rows, :n] - c
    tableau[-1, -1] = basic_cost @ tableau[:rows, -1]

    status, more = _bland_pivot_loop(tableau, basis, n, max_pivots)
    pivots += more
    if status != "optimal":
        return SimplexResult(status, None, None, pivots)

    x = np.zeros(n)
    for row, var in enumerate(basis):
        x[var] = tableau[row, -1]
    return SimplexResult("optimal", x, float(c @ x), pivots)


# ---------------------------------------------------------------------------
# The l1 linear-programming model


def l1_constraint_lp(constraint_matrix, level=1.0):
    """Standard-form LP for min ||x||_1 over the sign-consistency set.

    ``constraint_matrix`` is the (m+1) x n stack whose first m rows must
    be nonnegative and whose last row is pinned at ``level``.  Variables
    are the positive/negative signal parts plus one slack per sign row, so
    the program has 2n + m nonnegative variables and m + 1 equality rows.
    """
    mat = check_matrix(constraint_matrix, "constraint_matrix")
    m = mat.shape[0] - 1
    n = mat.shape[1]
    top = mat[:m]
    eq = np.zeros((m + 1, 2 * n + m))
    eq[:m, :n] = top
    eq[:m, n : 2 * n] = -top
    eq[:m, 2 * n :] = -np.eye(m)
    eq[m, :n] = mat[m]
    eq[m, n : 2 * n] = -mat[m]
    rhs = np.zeros(m + 1)
    rhs[m] = level
    cost = np.concatenate([np.ones(2 * n), np.zeros(m)])
    return StandardLP(cost, eq, rhs)


def pv_formulate(instance):
    """LP for the instance's sign constraints with measurement mass one."""
    return l1_constraint_lp(
        sign_constraint_matrix(instance.phi, instance.y), level=1.0
    )


def _polish_strict_feasibility(phi, y, x, margin=1e-9):
    """Nudge an LP vertex so active sign constraints hold strictly.

    A basic solution sits exactly on several sign constraints, so
    recomputing their residuals is a coin flip at roundoff scale.
    Re-solving the active rows for a tiny positive margin (same support,
    same pinned mass) returns a strictly feasible point a negligible
    distance away.  Falls back to the raw vertex when the nudged point is
    not verifiably better.
    """
    residual = y * (phi @ x)
    active = residual <= 1e-7 * max(1.0, float(np.abs(residual).max()))
    if not active.any():
        return x
    magnitudes = np.abs(x)
    supp = magnitudes > 1e-9 * magnitudes.max()
    system = np.vstack(
        [(y[active, None] * phi[active])[:, supp], (y @ phi)[None, supp]]
    )
    target = np.concatenate([np.full(int(active.sum()), margin), [1.0]])
    solution, *_ = np.linalg.lstsq(system, target, rcond=None)
    candidate = np.zeros_like(x)
    candidate[supp] = solution
    ok = (
        float(np.min(y * (phi @ candidate))) > 0.0
        and abs(float((y @ phi) @ candidate) - 1.0) <= 1e-9
        and np.abs(candidate).sum() <= np.abs(x).sum() + 1e-6
    )
    return candidate if ok else x


def _pv_arrays(phi, y, polish):
    """LP route on raw arrays; returns (signal, simplex pivots)."""
    lp = l1_constraint_lp(sign_constraint_matrix(phi, y), level=1.0)
    result = simplex_solve(lp)
    if result.status != "optimal":
        raise SimplexError(result.status)
    n = phi.shape[1]
    x = result.x[:n] - result.x[n : 2 * n]
    if polish:
        x = _polish_strict_feasibility(phi, y, x)
    return x, result.pivots


def pv_solve(instance, polish=True, support_rel_tol=1e-5):
    """Solve the l1 model by linear programming.

    Raises :class:`SimplexError` if the program does not come back
    optimal (it always should for generated instances).
    """
    started = time.perf_counter()
    x, pivots = _pv_arrays(instance.phi, instance.y, polish)
    return ReconResult(
        x_est=x,
        violations=count_sign_violations(instance.phi, instance.y, x),
        support_size=int(support_indices(x, support_rel_tol).size),
        iterations=pivots,
        wall_time=time.perf_counter() - started,
    )


def enumerate_basic_solutions(lp, tol=1e-9):
    """Brute-force optimum over basic feasible points (test oracle only).

    Exponential in the variable count; intended for the tiny programs the
    tests build.
    """
    a = lp.eq_matrix
    rows, n = a.shape
    best = None
    for cols in itertools.combinations(range(n), rows):
        sub = a[:, cols]
        if abs(np.linalg.det(sub)) < 1e-12:
            continue
        solution = np.linalg.solve(sub, lp.eq_rhs)
        if np.any(solution < -tol):
            continue
        x = np.zeros(n)
        x[list(cols)] = solution
        value = float(lp.cost @ x)
        if best is None or value < best:
            best = value
    return best
