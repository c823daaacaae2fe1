"""Hermite polynomials of complex argument and factorial helpers.

Scalars are plain Python ``complex`` / numpy ``complex128``; every routine
here broadcasts over array arguments.
"""

import math

import numpy as np

from .errors import DegreeLimitError, DomainError

MAX_HERMITE_DEGREE = 64
MAX_FACTORIAL = 170


def hermite_eval(z, max_degree):
    """Physicists' Hermite polynomials H_0(z) .. H_max_degree(z).

    Uses the upward recurrence H_{k+1} = 2z H_k - 2k H_{k-1}.  The result
    has shape ``(max_degree + 1,) + np.shape(z)`` so that ``values[k]`` is
    H_k evaluated at every point of ``z``.  Real input gives real output.
    """
    if max_degree < 0 or max_degree > MAX_HERMITE_DEGREE:
        raise DegreeLimitError(
            f"max_degree must lie in [0, {MAX_HERMITE_DEGREE}], got {max_degree}"
        )
    z = np.asarray(z)
    dtype = np.result_type(z.dtype, np.float64)
    values = np.empty((max_degree + 1,) + z.shape, dtype=dtype)
    values[0] = 1.0
    if max_degree >= 1:
        values[1] = 2.0 * z
    for k in range(1, max_degree):
        values[k + 1] = 2.0 * z * values[k] - 2.0 * k * values[k - 1]
    return values


def hermite_parity_check(z, k):
    """Both sides of H_k(-z) = (-1)^k H_k(z)."""
    lhs = hermite_eval(-np.asarray(z), k)[k]
    rhs = (-1) ** k * hermite_eval(z, k)[k]
    return lhs, rhs


def log_factorial(n):
    """ln(n!) as a compensated sum of ln k."""
    if n < 0 or n > MAX_FACTORIAL:
        raise DomainError(f"log_factorial needs 0 <= n <= {MAX_FACTORIAL}, got {n}")
    return math.fsum(math.log(k) for k in range(2, n + 1))


def log_binomial(n, k):
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k)
