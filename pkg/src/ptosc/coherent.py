"""Coherent-state superpositions of the complexified oscillator.

Two constructions are provided.  The Glauber state is the product of two 1D
coherent states, with coefficients exp(-(|b|^2 + |g|^2)/2) b^n g^m / sqrt(n! m!)
on psi_nm.  Grouping its terms by the shell N = n + m gives, for each N, a
stationary state Phi_N that depends on b and g only through the ratio
b / g = A exp(i theta):

    Phi_N = (1 + A^2)^(-N/2) sum_K sqrt(binom(N, K)) (A e^{i theta})^K psi_{K, N-K}
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc

from .complexmath import log_binomial, log_factorial
from .errors import DegreeLimitError, DomainError, TruncationError
from .oscillator import MAX_QUANTUM_NUMBER, x_modes, y_modes
from .quadrature import DEFAULT_ORDER, EPS, NormReport, _check_order, _contour_grid, gauss_hermite

TAIL_MASS_LIMIT = 1e-8
DEFAULT_CUTOFF = 12
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CoherentSpec:
    n_total: int
    amplitude_ratio: float = 1.0
    phase: float = 0.0
    lam: float = 0.0

    def __post_init__(self):
        if not 0 <= self.n_total <= MAX_QUANTUM_NUMBER:
            raise DegreeLimitError(
                f"N={self.n_total} outside supported range [0, {MAX_QUANTUM_NUMBER}]"
            )
        if isinstance(self.amplitude_ratio, complex):
            raise DomainError("A must be real; carry its phase in theta")
        if not (math.isfinite(self.amplitude_ratio) and self.amplitude_ratio >= 0):
            raise DomainError(f"A must be finite and >= 0, got {self.amplitude_ratio}")
        if not (math.isfinite(self.phase) and math.isfinite(self.lam)):
            raise DomainError("theta and lambda must be finite")


@dataclass(frozen=True)
class GlauberSpec:
    beta_abs: float
    gamma_abs: float
    theta_x: float = 0.0
    theta_y: float = 0.0
    n_cutoff: int = DEFAULT_CUTOFF

    def __post_init__(self):
        if self.beta_abs < 0 or self.gamma_abs < 0:
            raise DomainError("|beta| and |gamma| must be >= 0")
        if not 0 <= self.n_cutoff <= MAX_QUANTUM_NUMBER:
            raise DegreeLimitError(
                f"cutoff {self.n_cutoff} outside [0, {MAX_QUANTUM_NUMBER}]"
            )

    @property
    def beta(self):
        return self.beta_abs * np.exp(1j * self.theta_x)

    @property
    def gamma(self):
        return self.gamma_abs * np.exp(1j * self.theta_y)

    @property
    def mean_quanta(self):
        return self.beta_abs**2 + self.gamma_abs**2

    def tail_mass(self):
        """Probability carried by the shells N > n_cutoff.

        The shell occupation is Poisson with mean |b|^2 + |g|^2, so the tail is
        the regularized lower incomplete gamma P(n_cutoff + 1, mean).
        """
        if self.mean_quanta == 0:
            return 0.0
        return float(gammainc(self.n_cutoff + 1, self.mean_quanta))


@dataclass(frozen=True)
class ClassicalTrajectory:
    times: np.ndarray
    xs: np.ndarray
    ys: np.ndarray


def coherent_coefficients(spec):
    n, a = spec.n_total, spec.amplitude_ratio
    coeffs = np.zeros(n + 1, dtype=complex)
    if a == 0:
        coeffs[0] = 1.0
        return coeffs
    log_norm = -0.5 * n * math.log1p(a * a)
    for k in range(n + 1):
        mag = math.exp(log_norm + 0.5 * log_binomial(n, k) + k * math.log(a))
        coeffs[k] = mag * np.exp(1j * k * spec.phase)
    return coeffs


def _shell_sum(coeffs, n_total, x, y, lam):
    xm = x_modes(n_total, x, lam)
    ym = y_modes(n_total, y, lam)
    total = 0
    for k, c in enumerate(coeffs):
        if c != 0:
            total = total + c * xm[k] * ym[n_total - k]
    return total


def eval_coherent(spec, x, y):
    """Phi_N at real x and real-or-complex y (broadcasting)."""
    return _shell_sum(coherent_coefficients(spec), spec.n_total, x, y, spec.lam)


def coherent_cpt_norm(spec, rule=None):
    """int dx int_C dy (CΠT Phi_N) Phi_N.

    CΠT conjugates the expansion coefficients and leaves each psi unchanged on
    the contour, where the eigenfunctions are real.
    """
    rule = rule or gauss_hermite(DEFAULT_ORDER)
    n = spec.n_total
    _check_order(rule, n + 4, "coherent_cpt_norm")
    coeffs = coherent_coefficients(spec)
    x, y, w = _contour_grid(rule, spec.lam)
    phi = _shell_sum(coeffs, n, x, y, spec.lam)
    phi_cpt = _shell_sum(np.conj(coeffs), n, x, y, spec.lam)
    terms = w * phi_cpt * phi
    total = np.sum(terms)
    return NormReport(
        real_part=float(total.real),
        imag_part=float(total.imag),
        method="contour_shift",
        order_used=rule.order,
        estimated_error=float(terms.size * EPS * np.sum(np.abs(terms))),
    )


def glauber_coefficients(spec):
    """Coefficients of psi_nm for n + m <= n_cutoff, keyed by (n, m).

    Raises TruncationError when the discarded shells hold TAIL_MASS_LIMIT or
    more of the norm.
    """
    tail = spec.tail_mass()
    if tail >= TAIL_MASS_LIMIT:
        raise TruncationError(
            f"cutoff {spec.n_cutoff} leaves tail mass {tail:.3e} >= {TAIL_MASS_LIMIT:g}; "
            f"use a cutoff of at least {minimal_cutoff(spec.beta_abs, spec.gamma_abs)}"
        )
    beta, gamma = spec.beta, spec.gamma
    prefactor = math.exp(-0.5 * spec.mean_quanta)
    coeffs = {}
    for shell in range(spec.n_cutoff + 1):
        for k in range(shell + 1):
            n, m = k, shell - k
            scale = math.exp(-0.5 * (log_factorial(n) + log_factorial(m)))
            coeffs[(n, m)] = complex(prefactor * scale * beta**n * gamma**m)
    return coeffs


def minimal_cutoff(beta_abs, gamma_abs, limit=TAIL_MASS_LIMIT):
    mean = beta_abs**2 + gamma_abs**2
    for cutoff in range(MAX_QUANTUM_NUMBER + 1):
        if mean == 0 or gammainc(cutoff + 1, mean) < limit:
            return cutoff
    raise TruncationError(f"no cutoff <= {MAX_QUANTUM_NUMBER} reaches tail mass {limit:g}")


def shell_phase(n_total, t, paper_literal_decay=False):
    """Time factor of shell N at time t.

    Default is the unitary exp(-i (N + 1) t).  The phase is reduced in units of
    full turns so that whole periods give exactly 1.  With
    ``paper_literal_decay`` the real factor exp(-(N + 1) t) is used instead.
    """
    if paper_literal_decay:
        return complex(math.exp(-(n_total + 1) * t))
    turns = ((n_total + 1) * (t / TWO_PI)) % 1.0
    if turns == 0.0:
        return 1.0 + 0.0j
    return complex(np.exp(-1j * TWO_PI * turns))


def evolve_coherent(spec, t, paper_literal_decay=False):
    coeffs = glauber_coefficients(spec)
    phases = {
        shell: shell_phase(shell, t, paper_literal_decay)
        for shell in range(spec.n_cutoff + 1)
    }
    out = {}
    for (n, m), c in coeffs.items():
        p = phases[n + m]
        out[(n, m)] = c if p == 1.0 else c * p
    return out


def eval_superposition(coeffs, x, y, lam):
    """sum c_nm psi_nm(x, y) for a coefficient map keyed by (n, m)."""
    n_max = max(n for n, _ in coeffs)
    m_max = max(m for _, m in coeffs)
    xm = x_modes(n_max, x, lam)
    ym = y_modes(m_max, y, lam)
    total = 0
    for (n, m), c in coeffs.items():
        total = total + c * xm[n] * ym[m]
    return total


def classical_trajectory(beta_abs, gamma_abs, theta_x, theta_y, t_max, steps):
    if steps < 2:
        raise DomainError(f"steps must be >= 2, got {steps}")
    t = np.linspace(0.0, t_max, steps)
    amp = math.sqrt(0.5)
    return ClassicalTrajectory(
        times=t,
        xs=beta_abs * amp * np.cos(t - theta_x),
        ys=gamma_abs * amp * np.cos(t - theta_y),
    )


def classical_position(beta_abs, gamma_abs, theta_x, theta_y, t):
    amp = math.sqrt(0.5)
    return beta_abs * amp * np.cos(t - theta_x), gamma_abs * amp * np.cos(t - theta_y)
