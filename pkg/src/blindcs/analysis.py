"""Theory-facing diagnostics: range-space ratios and descent-trace checks."""

import dataclasses
import math

import numpy as np

from ._validation import check_count, check_matrix, check_vector

__all__ = [
    "DescentReport",
    "RspEstimate",
    "check_descent_properties",
    "rsp_rho_estimate",
    "worst_set_ratio",
]


@dataclasses.dataclass(frozen=True)
class RspEstimate:
    """Monte-Carlo lower bound on the range-space constant.

    ``rho_hat`` is the largest sampled ratio of the mass outside the
    worst index set to the mass inside it; the true constant can only be
    larger, so this is evidence against (never a certificate of) the
    property holding with a smaller constant.
    """

    order: int
    rho_hat: float
    samples: int


def worst_set_ratio(xi, order):
    """Worst ratio over index sets of the given size for one vector.

    The adversarial set of size ``order`` collects the smallest
    magnitudes (larger sets only move mass the favorable way), so the
    ratio is (sum of the rest) / (sum of the ``order`` smallest).
    """
    xi = check_vector(xi, name="xi")
    order = check_count(order, "order")
    if order >= xi.size:
        raise ValueError(f"order must be < dimension {xi.size}, got {order}")
    ordered = np.sort(np.abs(xi))
    small = float(ordered[:order].sum())
    large = float(ordered[order:].sum())
    if small == 0.0:
        return math.inf
    return large / small


def rsp_rho_estimate(mat, order, samples, stream):
    """Sample the range of the transpose and keep the worst ratio seen."""
    mat = check_matrix(mat, "mat")
    samples = check_count(samples, "samples")
    order = check_count(order, "order")
    if order >= mat.shape[1]:
        raise ValueError(f"order must be < n={mat.shape[1]}, got {order}")
    gen = stream.generator()
    rho = 0.0
    for _ in range(samples):
        xi = mat.T @ gen.standard_normal(mat.shape[0])
        rho = max(rho, worst_set_ratio(xi, order))
    return RspEstimate(order=order, rho_hat=rho, samples=samples)


@dataclasses.dataclass
class DescentReport:
    """Outcome of the convergence diagnostics on a fixed-smoothing trace."""

    monotone: bool
    summable_increments: bool
    bounded: bool
    final_increment: float
    max_sup_norm: float
    issues: list

    @property
    def all_passed(self):
        return self.monotone and self.summable_increments and self.bounded


def check_descent_properties(
    trace, value_slack=1e-8, increment_tol=1e-6, sup_norm_cap=1e6
):
    """Validate the three descent properties of a fixed-smoothing run.

    (1) the surrogate values never increase beyond ``value_slack``;
    (2) the squared magnitude increments die out (final term below
    ``increment_tol``, finite partial sums); (3) the iterate max-norms
    stay finite and under ``sup_norm_cap``.  Single-point traces pass
    vacuously; every failure is listed rather than raised.
    """
    values = np.asarray(trace.values, dtype=float)
    increments = np.asarray(trace.sq_increments, dtype=float)
    sup_norms = np.asarray(trace.sup_norms, dtype=float)

    issues = []
    rises = np.flatnonzero(np.diff(values) > value_slack)
    monotone = rises.size == 0
    if not monotone:
        issues.append(
            f"surrogate value rises at steps {rises.tolist()} "
            f"(max rise {np.diff(values)[rises].max():.3e})"
        )

    final_increment = float(increments[-1]) if increments.size else 0.0
    summable = bool(
        np.all(np.isfinite(increments)) and final_increment < increment_tol
    )
    if not summable:
        issues.append(f"final squared increment {final_increment:.3e} too large")

    max_sup = float(sup_norms.max()) if sup_norms.size else 0.0
    bounded = bool(np.all(np.isfinite(sup_norms)) and max_sup <= sup_norm_cap)
    if not bounded:
        issues.append(f"iterate sup-norm reached {max_sup:.3e}")

    return DescentReport(
        monotone=monotone,
        summable_increments=summable,
        bounded=bounded,
        final_increment=final_increment,
        max_sup_norm=max_sup,
        issues=issues,
    )
