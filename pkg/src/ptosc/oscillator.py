"""The complexified isotropic 2D oscillator in natural units (hbar = m = omega = 1).

The potential is V(x, y) = (lambda*(x + i y) + x^2 + y^2) / 2.  Completing the
square gives shifted coordinates xs = x + lambda/2 and ys = y + i lambda/2 in
which each eigenfunction is an ordinary Hermite function product, so the
spectrum n + m + 1 is real and independent of lambda.
"""

import math
from dataclasses import dataclass

import numpy as np

from .complexmath import hermite_eval, log_factorial
from .errors import DegreeLimitError, DomainError

MAX_QUANTUM_NUMBER = 24

# alpha = m * omega / hbar; fixed to one throughout
HBAR = MASS = OMEGA = ALPHA = 1.0


@dataclass(frozen=True)
class EigenState:
    n: int
    m: int
    lam: float = 0.0

    def __post_init__(self):
        for name, q in (("n", self.n), ("m", self.m)):
            if not 0 <= q <= MAX_QUANTUM_NUMBER:
                raise DegreeLimitError(
                    f"{name}={q} outside supported range [0, {MAX_QUANTUM_NUMBER}]"
                )
        if not math.isfinite(self.lam):
            raise DomainError(f"lambda must be finite, got {self.lam}")

    def __call__(self, x, y):
        return eval_eigenstate(self, x, y)


@dataclass(frozen=True)
class EnergyPair:
    ex: float
    ey: float
    total: float


def potential_cartesian(x, y, lam):
    return 0.5 * (lam * (x + 1j * y) + x * x + y * y)


def potential_polar_magnitude(r, phi, lam):
    """|lambda r e^{i phi} + r^2|, the modulus of V over m omega^2 / 2."""
    if np.any(np.asarray(r) <= 0):
        raise DomainError("radius must be positive")
    return r * np.abs(lam * np.exp(1j * np.asarray(phi)) + r)


def pit_transform(f):
    """Return g with g(x, y) = conj(f(x, -y)).

    Phase reflection phi -> 2 pi - phi is y -> -y in Cartesian form, and time
    reversal conjugates.
    """

    def g(x, y):
        return np.conj(f(x, -np.asarray(y)))

    return g


def _norm_factor(k):
    # 1 / sqrt(2^k k! sqrt(pi)), assembled in log space
    return math.exp(-0.5 * (k * math.log(2.0) + log_factorial(k) + 0.5 * math.log(math.pi)))


def x_factor(n, x, lam):
    """Normalized x-mode X_n(x) = N_n H_n(xs) exp(-xs^2 / 2), xs = x + lam/2."""
    xs = np.asarray(x) + 0.5 * lam
    return _norm_factor(n) * hermite_eval(xs, n)[n] * np.exp(-0.5 * xs * xs)


def y_factor(m, y, lam):
    """Normalized y-mode Y_m(y) with the complex shift ys = y + i lam/2.

    ``y`` may itself be complex; on the contour y = u - i lam/2 the shift
    cancels and the factor is real.
    """
    ys = np.asarray(y) + 0.5j * lam
    return _norm_factor(m) * hermite_eval(ys, m)[m] * np.exp(-0.5 * ys * ys)


def x_modes(n_max, x, lam):
    """All X_0..X_{n_max} at once, shape (n_max + 1,) + shape(x)."""
    xs = np.asarray(x) + 0.5 * lam
    h = hermite_eval(xs, n_max)
    norms = np.array([_norm_factor(k) for k in range(n_max + 1)])
    return norms.reshape((-1,) + (1,) * xs.ndim) * h * np.exp(-0.5 * xs * xs)


def y_modes(m_max, y, lam):
    ys = np.asarray(y) + 0.5j * lam
    h = hermite_eval(ys, m_max)
    norms = np.array([_norm_factor(k) for k in range(m_max + 1)])
    return norms.reshape((-1,) + (1,) * ys.ndim) * h * np.exp(-0.5 * ys * ys)


def eval_eigenstate(state, x, y):
    """psi_nm(x, y) for real x and real-or-complex y (broadcasting).

    Equal to exp(-(x^2 + y^2 + lam (x + i y)) / 2) H_n(x + lam/2) H_m(y + i lam/2)
    / sqrt(2^n 2^m n! m! pi); the exponent is evaluated in completed-square
    form so the contour value is exactly real.
    """
    return x_factor(state.n, x, state.lam) * y_factor(state.m, y, state.lam)


def energy(state):
    ex = (2 * state.n + 1) / 2
    ey = (2 * state.m + 1) / 2
    return EnergyPair(ex=ex, ey=ey, total=ex + ey)
