"""Blind recovery: outer reweighting loop around the primal-dual solver.

No sparsity level is supplied.  Each outer round solves a weighted-l1
problem over the sign-consistency set, then refreshes the weights from
the surrogate's derivatives at the new iterate.  The production loop also
doubles the primal step (halving the dual step to keep their product
fixed) and shrinks the smoothing parameter on a geometric schedule, both
frozen once they hit their published caps.
"""

import dataclasses
import time

import numpy as np

from ._validation import check_count, check_positive
from .pd_solver import PDNumericalError, PDParams, PDState, pd_solve
from .problem import ReconResult, count_sign_violations, support_indices
from .surrogate import LOG_DET, MANGASARIAN, Surrogate, normalized_weights

__all__ = ["BlindConfig", "FixedEpsTrace", "blind_solve", "fixed_eps_trace"]

# Default (starting primal step, starting smoothing) per surrogate family.
_START_PARAMS = {MANGASARIAN: (500.0, 0.25), LOG_DET: (250.0, 0.125)}

# Step-size products stay just inside the convergence condition for a
# norm-one constraint matrix.
_STEP_PRODUCT = 0.999


@dataclasses.dataclass(frozen=True)
class BlindConfig:
    """Outer-loop schedule; defaults are the published operating point."""

    max_outer: int = 17
    eps_decay: float = 0.5
    alpha_max: float = 8000.0
    eps_min: float = 1e-5
    alpha0: float | None = None  # per-surrogate default when None
    eps0: float | None = None
    pd_max_iter: int = 300
    pd_x_tol: float = 1e-6
    schedules_enabled: bool = True
    support_rel_tol: float = 1e-5

    def start_params(self, kind):
        alpha0, eps0 = _START_PARAMS[kind]
        if self.alpha0 is not None:
            alpha0 = check_positive(self.alpha0, "alpha0")
        if self.eps0 is not None:
            eps0 = float(self.eps0)
        if not 0.0 < eps0 < 1.0:
            raise ValueError(f"eps0 must lie in (0, 1), got {eps0!r}")
        if not 0.0 < self.eps_decay < 1.0:
            raise ValueError(f"eps_decay must lie in (0, 1), got {self.eps_decay!r}")
        return alpha0, eps0


def matched_filter_start(phi, y, target_l1):
    """Sign-correlated warm start scaled so its measurement l1 mass is fixed."""
    x0 = phi.T @ y
    mass = float(np.sum(np.abs(phi @ x0)))
    if mass == 0.0:
        return np.zeros(phi.shape[1])
    return x0 * (target_l1 / mass)


def _blind_run(phi, y, b_hat, b_scale, kind, config):
    """Run the outer loop in solver (normalized) space.

    Returns the final solver-space signal plus a per-outer-round
    diagnostics dict (surrogate values, schedule states, inner iteration
    counts).
    """
    if kind not in _START_PARAMS:
        raise ValueError(f"kind must be one of {tuple(_START_PARAMS)}, got {kind!r}")
    alpha, eps = config.start_params(kind)
    beta = _STEP_PRODUCT / alpha
    check_count(config.max_outer, "max_outer")
    check_count(config.pd_max_iter, "pd_max_iter")

    m, n = phi.shape
    weights = np.ones(n)
    state = PDState(
        np.zeros(m + 1),
        np.zeros(m + 1),
        matched_filter_start(phi, y, b_scale),
    )

    info = {
        "surrogate_values": [],
        "alphas": [],
        "betas": [],
        "eps_values": [],
        "weight_max": [],
        "inner_iterations": 0,
    }
    for k in range(config.max_outer):
        params = PDParams(alpha, beta, config.pd_max_iter, config.pd_x_tol)
        try:
            state = pd_solve(b_hat, weights, params, state)
        except PDNumericalError as exc:
            raise PDNumericalError(f"outer round {k}: {exc}") from exc
        info["inner_iterations"] += state.iterations
        info["alphas"].append(alpha)
        info["betas"].append(beta)
        info["eps_values"].append(eps)
        surrogate = Surrogate(kind, eps)
        info["surrogate_values"].append(surrogate.value(state.x))
        weights = normalized_weights(surrogate.weights(state.x))
        info["weight_max"].append(float(weights.max()))
        if config.schedules_enabled:
            if alpha < config.alpha_max:
                alpha *= 2.0
                beta /= 2.0
            if eps > config.eps_min:
                eps *= config.eps_decay
    return state.x, info


def blind_solve(instance, kind=LOG_DET, config=None):
    """Reconstruct without knowing the sparsity.

    Parameters
    ----------
    instance : Instance
    kind : str
        Surrogate family, ``"mangasarian"`` or ``"log-det"``.
    config : BlindConfig, optional

    Returns
    -------
    ReconResult
        The de-normalized signal (measurement l1 mass equal to one) with
        sign-violation count, support size, total inner iterations, and
        the per-round surrogate-value trace.  The trace is diagnostic
        only: with schedules enabled each round uses its own smoothing
        parameter, so no monotonicity is implied.
    """
    config = config or BlindConfig()
    started = time.perf_counter()
    x_solver, info = _blind_run(
        instance.phi, instance.y, instance.b, instance.b_scale, kind, config
    )
    x_est = x_solver / instance.b_scale
    return ReconResult(
        x_est=x_est,
        violations=count_sign_violations(instance.phi, instance.y, x_est),
        support_size=int(support_indices(x_est, config.support_rel_tol).size),
        iterations=info["inner_iterations"],
        feps_trace=np.asarray(info["surrogate_values"]),
        wall_time=time.perf_counter() - started,
    )


@dataclasses.dataclass
class FixedEpsTrace:
    """Diagnostics from the fixed-smoothing outer loop.

    ``values[k]`` is the surrogate objective at iterate k (including the
    start), ``sq_increments[k]`` is the squared l2 change of the iterate
    magnitudes between rounds k and k+1, and ``sup_norms`` tracks the
    max-norm of every iterate as a boundedness witness.
    """

    values: np.ndarray
    sq_increments: np.ndarray
    sup_norms: np.ndarray
    x_final: np.ndarray
    inner_iterations: int


def fixed_eps_trace(instance, surrogate, pd_params=None, outer_iters=30):
    """Run the plain reweighting scheme: fixed smoothing, no schedules.

    Every round solves its weighted-l1 subproblem tightly (defaults:
    balanced steps, relative change 1e-12, up to 20000 inner iterations,
    warm started), which is what makes the descent diagnostics
    meaningful.
    """
    if pd_params is None:
        balanced = float(np.sqrt(_STEP_PRODUCT))
        pd_params = PDParams(balanced, balanced, max_iter=20_000, x_tol=1e-12)
    outer_iters = check_count(outer_iters, "outer_iters")

    b_hat = instance.b
    m = instance.m
    state = PDState(
        np.zeros(m + 1),
        np.zeros(m + 1),
        matched_filter_start(instance.phi, instance.y, instance.b_scale),
    )
    values = [surrogate.value(state.x)]
    sup_norms = [float(np.max(np.abs(state.x)))]
    sq_increments = []
    inner = 0
    for k in range(outer_iters):
        weights = normalized_weights(surrogate.weights(state.x))
        previous_mag = np.abs(state.x)
        try:
            state = pd_solve(b_hat, weights, pd_params, state)
        except PDNumericalError as exc:
            raise PDNumericalError(f"outer round {k}: {exc}") from exc
        inner += state.iterations
        values.append(surrogate.value(state.x))
        sup_norms.append(float(np.max(np.abs(state.x))))
        sq_increments.append(float(np.sum((np.abs(state.x) - previous_mag) ** 2)))
    return FixedEpsTrace(
        values=np.asarray(values),
        sq_increments=np.asarray(sq_increments),
        sup_norms=np.asarray(sup_norms),
        x_final=state.x,
        inner_iterations=inner,
    )
