"""First-order primal-dual inner solver for weighted-l1 over the sign set.

Solves ``min_x sum_j w_j |x_j|  s.t.  Bx in C`` where ``C`` fixes the last
coordinate to one and keeps the rest nonnegative, by alternating the
weighted soft-threshold (primal) with the conjugate-indicator prox (dual)
on an extrapolated dual point.  Step sizes must satisfy
``alpha * beta * L < 1`` for any ``L >= ||B||^2``; callers pass the
constraint matrix already rescaled to norm at most one, so the default
``norm_sq=1`` is the right bound.
"""

import dataclasses

import numpy as np

from ._validation import check_matrix, check_positive, check_vector

__all__ = ["PDNumericalError", "PDParams", "PDState", "initial_state", "pd_solve"]


class PDNumericalError(RuntimeError):
    """An iterate stopped being finite."""


@dataclasses.dataclass(frozen=True)
class PDParams:
    """Step sizes and stopping rule for one inner solve.

    ``x_tol`` is a relative change threshold: the iteration stops once
    ``||x_new - x|| <= x_tol * max(1, ||x||)``.
    """

    alpha: float
    beta: float
    max_iter: int = 300
    x_tol: float = 1e-6


@dataclasses.dataclass
class PDState:
    """The (previous dual, current dual, primal) triple of the iteration.

    ``pd_solve`` both accepts and returns this triple, so the caller can
    warm-start the next solve by passing the returned state straight back
    in.
    """

    u_prev: np.ndarray
    u_cur: np.ndarray
    x: np.ndarray
    iterations: int = 0


def initial_state(n, m):
    """All-zero cold start for an n-signal, m-measurement problem."""
    return PDState(np.zeros(m + 1), np.zeros(m + 1), np.zeros(n))


def pd_solve(b_hat, weights, params, state=None, norm_sq=1.0):
    """Run the primal-dual iteration from ``state`` until the stop rule.

    Parameters
    ----------
    b_hat : ndarray, (m+1) x n
        Constraint matrix, rescaled so its spectral norm is at most one.
    weights : ndarray, length n
        Nonnegative l1 weights (the reweighting diagonal).
    params : PDParams
    state : PDState, optional
        Warm start; all-zero cold start when omitted.
    norm_sq : float
        Any upper bound on ``||b_hat||^2`` (1 for normalized input); the
        step-size condition is checked against it.

    Returns
    -------
    PDState with the final triple and the number of iterations performed.
    """
    b_hat = check_matrix(b_hat, "b_hat")
    rows, n = b_hat.shape
    weights = check_vector(weights, n, "weights")
    alpha = check_positive(params.alpha, "alpha")
    beta = check_positive(params.beta, "beta")
    if alpha * beta * norm_sq >= 1.0:
        raise ValueError(
            f"step sizes violate alpha*beta*L < 1: {alpha}*{beta}*{norm_sq}"
        )

    if np.any(weights < 0.0):
        raise ValueError("weights must be nonnegative")

    if state is None:
        state = initial_state(n, rows - 1)
    u_prev = state.u_prev.copy()
    u = state.u_cur.copy()
    x = state.x.copy()

    b_hat_t = np.ascontiguousarray(b_hat.T)
    thresholds = alpha * weights
    iterations = 0
    for iterations in range(1, params.max_iter + 1):
        # Primal step: weighted soft threshold at the extrapolated dual.
        step = x - alpha * (b_hat_t @ (2.0 * u - u_prev))
        x_new = np.sign(step) * np.maximum(np.abs(step) - thresholds, 0.0)
        # Dual step: prox of the conjugate constraint indicator.
        z = u + beta * (b_hat @ x_new)
        u_new = np.minimum(z, 0.0)
        u_new[-1] = z[-1] - beta
        change = float(np.linalg.norm(x_new - x))
        if not np.isfinite(change):
            raise PDNumericalError(f"nonfinite iterate at inner iteration {iterations}")
        scale = max(1.0, float(np.linalg.norm(x)))
        u_prev, u, x = u, u_new, x_new
        if change <= params.x_tol * scale:
            break
    return PDState(u_prev, u, x, iterations)
