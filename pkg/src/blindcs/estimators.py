"""Scikit-learn style estimators over the reconstruction algorithms.

``fit(X, y)`` takes the measurement matrix ``X`` (one measurement per
row) and the observed sign vector ``y`` with entries in {-1, +1}; the
reconstructed signal lands in ``coef_``.  ``predict(X)`` returns the
signs the fitted signal induces on new measurement rows, so the
estimators compose with pipelines, ``clone`` and grid search like any
linear model.
"""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from ._validation import check_matrix, check_sign_vector
from .baselines import BihtParams, _biht_arrays, _pv_arrays
from .blind import BlindConfig, _blind_run
from .problem import (
    count_sign_violations,
    normalize_constraint_matrix,
    sign_constraint_matrix,
    support_indices,
)

__all__ = ["Biht", "BlindOneBit", "PlanVershyninLP"]


def _check_fit_inputs(X, y):
    X = check_matrix(X, "X")
    y = check_sign_vector(y, X.shape[0], "y")
    return X, y


class _SignRecoveryMixin:
    """Shared prediction surface once ``coef_`` is fitted."""

    def _check_fitted(self):
        if not hasattr(self, "coef_"):
            raise NotFittedError(
                f"{type(self).__name__} must be fitted before prediction"
            )

    def decision_function(self, X):
        self._check_fitted()
        X = check_matrix(X, "X")
        return X @ self.coef_

    def predict(self, X):
        """Predicted measurement signs, zeros mapped to +1."""
        return np.where(self.decision_function(X) >= 0.0, 1.0, -1.0)

    def score(self, X, y):
        """Fraction of measurement rows whose predicted sign matches y."""
        X = check_matrix(X, "X")
        y = check_sign_vector(y, X.shape[0], "y")
        return float(np.mean(self.predict(X) == y))

    def _finalize(self, X, y, coef, iterations, support_rel_tol):
        self.coef_ = coef
        self.n_iter_ = int(iterations)
        self.violations_ = count_sign_violations(X, y, coef)
        self.support_size_ = int(support_indices(coef, support_rel_tol).size)
        return self


class BlindOneBit(_SignRecoveryMixin, BaseEstimator):
    """Sparsity-blind recovery from sign measurements.

    Parameters mirror :class:`blindcs.blind.BlindConfig`; ``surrogate``
    picks the reweighting family ("log-det" or "mangasarian") and
    ``normalize`` how the constraint matrix is rescaled ("auto" computes
    the exact norm at desk scale, the size bound beyond it).

    Attributes after fit: ``coef_`` (reconstructed signal with unit
    measurement l1 mass), ``n_iter_`` (total inner iterations),
    ``violations_``, ``support_size_``, ``objective_trace_`` and
    ``scale_`` (the constraint-matrix divisor).
    """

    def __init__(
        self,
        surrogate="log-det",
        max_outer=17,
        eps_decay=0.5,
        alpha_max=8000.0,
        eps_min=1e-5,
        alpha0=None,
        eps0=None,
        pd_max_iter=300,
        pd_x_tol=1e-6,
        schedules=True,
        normalize="auto",
        support_rel_tol=1e-5,
    ):
        self.surrogate = surrogate
        self.max_outer = max_outer
        self.eps_decay = eps_decay
        self.alpha_max = alpha_max
        self.eps_min = eps_min
        self.alpha0 = alpha0
        self.eps0 = eps0
        self.pd_max_iter = pd_max_iter
        self.pd_x_tol = pd_x_tol
        self.schedules = schedules
        self.normalize = normalize
        self.support_rel_tol = support_rel_tol

    def fit(self, X, y):
        X, y = _check_fit_inputs(X, y)
        mode = self.normalize
        if mode == "auto":
            mode = "exact" if min(X.shape) <= 2000 else "bound"
        b_hat, scale = normalize_constraint_matrix(
            sign_constraint_matrix(X, y), mode
        )
        config = BlindConfig(
            max_outer=self.max_outer,
            eps_decay=self.eps_decay,
            alpha_max=self.alpha_max,
            eps_min=self.eps_min,
            alpha0=self.alpha0,
            eps0=self.eps0,
            pd_max_iter=self.pd_max_iter,
            pd_x_tol=self.pd_x_tol,
            schedules_enabled=self.schedules,
            support_rel_tol=self.support_rel_tol,
        )
        x_solver, info = _blind_run(X, y, b_hat, scale, self.surrogate, config)
        self.objective_trace_ = np.asarray(info["surrogate_values"])
        self.scale_ = scale
        return self._finalize(
            X, y, x_solver / scale, info["inner_iterations"], self.support_rel_tol
        )


class Biht(_SignRecoveryMixin, BaseEstimator):
    """Binary iterative hard thresholding; needs the sparsity as input."""

    def __init__(self, sparsity=10, variant="l1", step=1.0, max_iter=1000,
                 support_rel_tol=1e-5):
        self.sparsity = sparsity
        self.variant = variant
        self.step = step
        self.max_iter = max_iter
        self.support_rel_tol = support_rel_tol

    def fit(self, X, y):
        X, y = _check_fit_inputs(X, y)
        params = BihtParams(
            sparsity=self.sparsity,
            variant=self.variant,
            step=self.step,
            max_iter=self.max_iter,
        )
        coef, _, iterations = _biht_arrays(X, y, params)
        return self._finalize(X, y, coef, iterations, self.support_rel_tol)


class PlanVershyninLP(_SignRecoveryMixin, BaseEstimator):
    """Minimal-l1 recovery by linear programming (no sparsity input)."""

    def __init__(self, polish=True, support_rel_tol=1e-5):
        self.polish = polish
        self.support_rel_tol = support_rel_tol

    def fit(self, X, y):
        X, y = _check_fit_inputs(X, y)
        coef, pivots = _pv_arrays(X, y, self.polish)
        return self._finalize(X, y, coef, pivots, self.support_rel_tol)
