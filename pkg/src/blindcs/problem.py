"""Problem construction and evaluation metrics for sign-only measurements.

An :class:`Instance` bundles a Gaussian measurement matrix, the sparse
signal that generated it, the observed signs, and the stacked constraint
matrix the solvers work with: row ``i <= m`` is the i-th measurement row
scaled by its observed sign, and the last row is the sign-weighted sum of
all measurement rows.  A reconstruction is sign-consistent exactly when
that stacked matrix maps it into ``{z : z[:m] >= 0, z[m] = fixed level}``.
"""

import dataclasses
import math

import numpy as np

from ._validation import (
    check_count,
    check_matrix,
    check_sign_vector,
    check_vector,
)
from .numerics import RngStream, gaussian, spectral_norm

__all__ = [
    "Instance",
    "ReconResult",
    "constraint_residual",
    "count_sign_violations",
    "expected_norm_bound",
    "generate_instance",
    "load_instance",
    "normalize_constraint_matrix",
    "one_bit_measure",
    "save_instance",
    "sign_constraint_matrix",
    "snr_db",
    "support_indices",
]

NORMALIZE_MODES = ("exact", "bound", "auto")

# Streams 0..2 of an instance seed: support positions, support values,
# measurement matrix.
_SUPPORT_STREAM, _VALUES_STREAM, _PHI_STREAM = 0, 1, 2


def one_bit_measure(phi, x):
    """Signs of the measurements, with exact zeros mapped to +1."""
    phi = check_matrix(phi, "phi")
    x = check_vector(x, phi.shape[1], "x")
    return np.where(phi @ x >= 0.0, 1.0, -1.0)


def sign_constraint_matrix(phi, y):
    """Stack sign-scaled measurement rows plus their sum as the last row."""
    phi = check_matrix(phi, "phi")
    y = check_sign_vector(y, phi.shape[0], "y")
    top = y[:, None] * phi
    return np.vstack([top, top.sum(axis=0)])


def expected_norm_bound(m, n):
    """Size-only bound sqrt(m+1)*(sqrt(n)+sqrt(m)) on the constraint-matrix norm."""
    m = check_count(m, "m")
    n = check_count(n, "n")
    return math.sqrt(m + 1) * (math.sqrt(n) + math.sqrt(m))


def normalize_constraint_matrix(mat, mode="exact"):
    """Rescale the stacked constraint matrix to spectral norm at most one.

    ``exact`` divides by the computed spectral norm; ``bound`` divides by
    the size-only bound, which avoids the norm computation at large sizes.
    Returns ``(scaled matrix, divisor)``.
    """
    mat = check_matrix(mat, "constraint matrix")
    if mode == "exact":
        scale = spectral_norm(mat)
    elif mode == "bound":
        m = mat.shape[0] - 1
        scale = expected_norm_bound(m, mat.shape[1])
    else:
        raise ValueError(f"mode must be 'exact' or 'bound', got {mode!r}")
    return mat / scale, float(scale)


@dataclasses.dataclass(frozen=True, eq=False)
class Instance:
    """One generated recovery problem.

    ``b`` is the normalized constraint matrix and ``b_scale`` the divisor
    that was applied, so ``b * b_scale`` reproduces the unnormalized
    stack built from ``phi`` and ``y``.
    """

    phi: np.ndarray
    x_true: np.ndarray
    y: np.ndarray
    b: np.ndarray
    b_scale: float
    seed: int
    normalize_mode: str

    @property
    def m(self):
        return self.phi.shape[0]

    @property
    def n(self):
        return self.phi.shape[1]

    @property
    def s_true(self):
        return int(np.count_nonzero(self.x_true))


def _resolve_mode(mode, m, n):
    if mode not in NORMALIZE_MODES:
        raise ValueError(f"normalize must be one of {NORMALIZE_MODES}, got {mode!r}")
    if mode == "auto":
        return "exact" if min(m, n) <= 2000 else "bound"
    return mode


def generate_instance(n, m, s, seed, normalize="auto"):
    """Draw a fresh instance: s-sparse Gaussian signal, Gaussian matrix.

    Support positions are a uniform random subset, support values are
    standard normal, and the whole construction is deterministic in
    ``seed``.
    """
    n = check_count(n, "n")
    m = check_count(m, "m")
    s = check_count(s, "s")
    if s > n:
        raise ValueError(f"sparsity s={s} cannot exceed n={n}")
    mode = _resolve_mode(normalize, m, n)

    seed = int(seed)
    support = RngStream(seed, _SUPPORT_STREAM).generator().permutation(n)[:s]
    values = RngStream(seed, _VALUES_STREAM).generator().standard_normal(s)
    phi = gaussian(RngStream(seed, _PHI_STREAM), m, n)
    x_true = np.zeros(n)
    x_true[support] = values

    y = one_bit_measure(phi, x_true)
    b_raw = sign_constraint_matrix(phi, y)
    b, scale = normalize_constraint_matrix(b_raw, mode)
    return Instance(phi, x_true, y, b, scale, seed, mode)


def count_sign_violations(phi, y, x):
    """Number of measurements whose sign disagrees with the observed one.

    A zero measurement counts as +1, so it only satisfies an observed +1.
    """
    y = check_sign_vector(y, name="y")
    return int(np.count_nonzero(one_bit_measure(phi, x) != y))


def snr_db(x_ref, x_est):
    """Reconstruction quality in dB after projecting out the lost scale.

    Both arguments are l2-normalized first; returns ``inf`` when they
    coincide up to positive scale.
    """
    x_ref = check_vector(x_ref, name="x_ref")
    x_est = check_vector(x_est, x_ref.size, "x_est")
    ref_norm = np.linalg.norm(x_ref)
    est_norm = np.linalg.norm(x_est)
    if ref_norm == 0.0 or est_norm == 0.0:
        raise ValueError("snr_db arguments must both be nonzero")
    diff = float(np.linalg.norm(x_ref / ref_norm - x_est / est_norm))
    if diff == 0.0:
        return math.inf
    return -20.0 * math.log10(diff)


def support_indices(x, rel_tol=1e-5):
    """Indices with magnitude above ``rel_tol`` times the largest magnitude."""
    x = check_vector(x, name="x")
    if rel_tol < 0:
        raise ValueError("rel_tol must be nonnegative")
    magnitudes = np.abs(x)
    return np.flatnonzero(magnitudes > rel_tol * magnitudes.max())


def constraint_residual(z):
    """Distance-like residual of membership in the solver's constraint set.

    Zero exactly when the first m components are nonnegative and the last
    equals one.
    """
    z = check_vector(z, name="z")
    if z.size < 2:
        raise ValueError("constraint vectors have length m+1 >= 2")
    worst_negative = float(max(0.0, -z[:-1].min()))
    return max(worst_negative, abs(float(z[-1]) - 1.0))


@dataclasses.dataclass
class ReconResult:
    """Reconstruction plus the diagnostics every solver reports."""

    x_est: np.ndarray
    violations: int
    support_size: int
    iterations: int
    feps_trace: np.ndarray | None = None
    wall_time: float = 0.0


_FORMAT_HEADER = "blindcs-instance 1"


def save_instance(instance, path):
    """Write an instance as a small self-contained text file.

    Stores dims, seed, normalize mode, and full-precision entries of the
    measurement matrix and true signal; everything else is rebuilt
    deterministically on load.
    """
    lines = [
        _FORMAT_HEADER,
        f"seed {instance.seed}",
        f"normalize {instance.normalize_mode}",
        f"dims {instance.m} {instance.n}",
    ]
    for row in instance.phi:
        lines.append(" ".join(repr(v) for v in row))
    lines.append(" ".join(repr(v) for v in instance.x_true))
    with open(path, "w", encoding="ascii") as handle:
        handle.write("\n".join(lines) + "\n")


def load_instance(path):
    """Read an instance written by :func:`save_instance`."""
    with open(path, encoding="ascii") as handle:
        lines = [line.rstrip("\n") for line in handle]
    if not lines or lines[0] != _FORMAT_HEADER:
        raise ValueError(f"{path}: not a blindcs instance file")
    try:
        seed = int(lines[1].split()[1])
        mode = lines[2].split()[1]
        m, n = (int(tok) for tok in lines[3].split()[1:3])
        phi = np.array(
            [[float(tok) for tok in lines[4 + i].split()] for i in range(m)]
        )
        x_true = np.array([float(tok) for tok in lines[4 + m].split()])
    except (IndexError, ValueError) as exc:
        raise ValueError(f"{path}: malformed instance file") from exc
    phi = check_matrix(phi, "phi")
    if phi.shape != (m, n) or x_true.size != n:
        raise ValueError(f"{path}: dims line disagrees with stored entries")
    y = one_bit_measure(phi, x_true)
    b, scale = normalize_constraint_matrix(
        sign_constraint_matrix(phi, y), _resolve_mode(mode, m, n)
    )
    return Instance(phi, x_true, y, b, scale, seed, mode)
