"""Smooth concave stand-ins for the support count, and their reweighting.

Both families are separable, strictly increasing and concave in each
magnitude, and approach the number of nonzeros as the smoothing parameter
shrinks.  Linearizing one at the current iterate gives a weighted-l1
subproblem whose weights are the per-coordinate derivatives computed
here.
"""

import dataclasses

import numpy as np

from ._validation import check_vector

__all__ = ["LOG_DET", "MANGASARIAN", "Surrogate", "normalized_weights"]

MANGASARIAN = "mangasarian"
LOG_DET = "log-det"
KINDS = (MANGASARIAN, LOG_DET)


@dataclasses.dataclass(frozen=True)
class Surrogate:
    """A surrogate family member: the kind plus its smoothing parameter."""

    kind: str
    eps: float

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not 0.0 < self.eps < 1.0:
            raise ValueError(f"eps must lie in (0, 1), got {self.eps!r}")

    def value(self, x):
        """Surrogate objective at ``x``.

        Mangasarian: sum(1 - exp(-|x_i|/eps)); log-det: sum(log(|x_i| + eps)),
        the constant-free form (additive constants do not move minimizers).
        """
        a = np.abs(check_vector(x, name="x"))
        if self.kind == MANGASARIAN:
            return float(np.sum(-np.expm1(-a / self.eps)))
        return float(np.sum(np.log(a + self.eps)))

    def weights(self, x):
        """Per-coordinate derivatives at |x|; strictly positive everywhere."""
        a = np.abs(check_vector(x, name="x"))
        if self.kind == MANGASARIAN:
            return np.exp(-a / self.eps) / self.eps
        return 1.0 / (a + self.eps)


def normalized_weights(weights):
    """Scale a positive weight vector so its largest entry is exactly one.

    The scaling leaves the weighted-l1 minimizer over the constraint set
    unchanged, so it is free to apply and keeps step sizes comparable
    across reweighting rounds.
    """
    weights = check_vector(weights, name="weights")
    if not np.all(weights > 0.0):
        raise ValueError("weights must all be strictly positive")
    return weights / weights.max()
