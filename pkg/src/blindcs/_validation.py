"""Input validation helpers shared across the package."""

import numpy as np


def check_matrix(a, name="matrix"):
    """Return ``a`` as a finite 2-D float64 array, raising on anything else."""
    out = np.asarray(a, dtype=float)
    if out.ndim != 2 or out.size == 0:
        raise ValueError(f"{name} must be a nonempty 2-D array, got shape {out.shape}")
    if not np.all(np.isfinite(out)):
        raise ValueError(f"{name} must have finite entries")
    return out


def check_vector(v, size=None, name="vector"):
    """Return ``v`` as a finite 1-D float64 array of the requested length."""
    out = np.asarray(v, dtype=float)
    if out.ndim != 1 or out.size == 0:
        raise ValueError(f"{name} must be a nonempty 1-D array, got shape {out.shape}")
    if size is not None and out.size != size:
        raise ValueError(f"{name} must have length {size}, got {out.size}")
    if not np.all(np.isfinite(out)):
        raise ValueError(f"{name} must have finite entries")
    return out


def check_sign_vector(y, size=None, name="signs"):
    """Return ``y`` as a float64 vector with every entry +1 or -1."""
    out = check_vector(y, size=size, name=name)
    if not np.all(np.abs(out) == 1.0):
        raise ValueError(f"{name} entries must all be +1 or -1")
    return out


def check_positive(value, name):
    value = float(value)
    if not value > 0.0:
        raise ValueError(f"{name} must be positive, got {value!r}")
    return value


def check_count(value, name, minimum=1):
    out = int(value)
    if out != value or out < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return out
