"""Dense numeric kernels: reproducible random streams and spectral norms.

Matrices and vectors throughout the package are plain row-major float64
numpy arrays.  Everything here is pure given its inputs, so concurrent
trials can share these functions freely; an :class:`RngStream` is an
immutable descriptor, never mutable shared state.
"""

import dataclasses

import numpy as np

from ._validation import check_count, check_matrix, check_positive

__all__ = [
    "PowerIterationError",
    "RngStream",
    "gaussian",
    "mix64",
    "spectral_norm",
]

_MASK64 = (1 << 64) - 1


def mix64(*parts):
    """Mix any number of integers into a single 64-bit value.

    Chained splitmix64 finalizer; used to derive per-trial seeds from
    (master seed, axis index, trial index) so results never depend on
    scheduling order.
    """
    acc = 0
    for part in parts:
        acc = (acc + (int(part) & _MASK64) + 0x9E3779B97F4A7C15) & _MASK64
        acc ^= acc >> 30
        acc = (acc * 0xBF58476D1CE4E5B9) & _MASK64
        acc ^= acc >> 27
        acc = (acc * 0x94D049BB133111EB) & _MASK64
        acc ^= acc >> 31
    return acc


@dataclasses.dataclass(frozen=True)
class RngStream:
    """Descriptor of one reproducible random stream.

    The same ``(master_seed, stream_index)`` pair yields bitwise-identical
    sequences on every platform (counter-based Philox keyed by both
    fields), and distinct indices give statistically independent streams.
    """

    master_seed: int
    stream_index: int = 0

    def generator(self):
        """Fresh numpy Generator positioned at the start of this stream."""
        key = (self.master_seed & _MASK64, self.stream_index & _MASK64)
        return np.random.Generator(np.random.Philox(key=key))

    def child(self, index):
        """Derived stream; children with distinct indices never collide."""
        return RngStream(self.master_seed, mix64(self.stream_index, index))


def gaussian(stream, rows, cols):
    """Matrix of i.i.d. standard-normal draws, deterministic per stream."""
    rows = check_count(rows, "rows")
    cols = check_count(cols, "cols")
    return stream.generator().standard_normal((rows, cols))


class PowerIterationError(RuntimeError):
    """Power iteration failed to converge; carries the last estimate."""

    def __init__(self, message, estimate):
        super().__init__(message)
        self.estimate = estimate


# Fixed stream for start vectors keeps spectral_norm deterministic.
_START_STREAM = RngStream(0x5EED0FB11D, 97)


def spectral_norm(matrix, tol=1e-10, max_iter=10_000):
    """Largest singular value of a dense matrix.

    Power iteration on the smaller of the two Gram matrices with a fixed
    seeded start vector.  Converges when the Rayleigh quotient changes by
    a relative ``tol`` or less between sweeps.

    Raises
    ------
    PowerIterationError
        After ``max_iter`` sweeps without convergence; the exception
        carries the last estimate in its ``estimate`` attribute.
    """
    a = check_matrix(matrix)
    check_positive(tol, "tol")
    max_iter = check_count(max_iter, "max_iter")
    if not a.any():
        raise ValueError("matrix must be nonzero")

    # Iterate on the k x k Gram with k = min(rows, cols); one O(k^2) sweep
    # per step after a single O(rows*cols*k) product.
    gram = a.T @ a if a.shape[0] >= a.shape[1] else a @ a.T
    k = gram.shape[0]
    v = _START_STREAM.generator().standard_normal(k)
    v /= np.linalg.norm(v)
    rayleigh = 0.0
    for attempt in range(1, 4):
        for _ in range(max_iter):
            w = gram @ v
            current = float(v @ w)
            scale = float(np.linalg.norm(w))
            if scale == 0.0:
                break  # start vector sits in the null space; reseed below
            if current > 0.0 and abs(current - rayleigh) <= tol * current:
                return float(np.sqrt(current))
            rayleigh = current
            v = w / scale
        else:
            raise PowerIterationError(
                f"no convergence after {max_iter} iterations",
                float(np.sqrt(max(rayleigh, 0.0))),
            )
        v = _START_STREAM.child(attempt).generator().standard_normal(k)
        v /= np.linalg.norm(v)
        rayleigh = 0.0
    raise PowerIterationError("start vectors exhausted in the null space", 0.0)
