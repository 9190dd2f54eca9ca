"""Closed-form proximity operators used by the inner solver."""

import numpy as np

from ._validation import check_positive, check_vector

__all__ = [
    "project_constraints",
    "prox_constraints_conjugate",
    "soft_threshold_weighted",
    "weighted_l1",
]


def soft_threshold_weighted(z, step, weights):
    """Componentwise ``sign(z_j) * max(|z_j| - step*w_j, 0)``.

    Exact ties land on zero, which is where the two branches meet.
    """
    z = check_vector(z, name="z")
    check_positive(step, "step")
    weights = check_vector(weights, z.size, "weights")
    if np.any(weights < 0.0):
        raise ValueError("weights must be nonnegative")
    return np.sign(z) * np.maximum(np.abs(z) - step * weights, 0.0)


def project_constraints(z):
    """Nearest point with nonnegative leading components and last entry one."""
    z = check_vector(z, name="z")
    if z.size < 2:
        raise ValueError("constraint vectors have length m+1 >= 2")
    out = np.maximum(z, 0.0)
    out[-1] = 1.0
    return out


def prox_constraints_conjugate(z, step):
    """Prox of the conjugate of the constraint-set indicator.

    Via Moreau decomposition: clips the leading components from above at
    zero and shifts the last one down by ``step``.
    """
    z = check_vector(z, name="z")
    if z.size < 2:
        raise ValueError("constraint vectors have length m+1 >= 2")
    check_positive(step, "step")
    out = np.minimum(z, 0.0)
    out[-1] = z[-1] - step
    return out


def weighted_l1(weights, x):
    """sum_j w_j |x_j|, the inner solver's primal objective."""
    weights = check_vector(weights, name="weights")
    x = check_vector(x, weights.size, "x")
    return float(np.sum(weights * np.abs(x)))
