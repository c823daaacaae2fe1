"""Gauss-Hermite rules and the integral functionals of the model.

Three functionals are provided:

* ``pit_inner_product``: the indefinite ΠT product, int (ΠT psi_a) psi_b.
* ``cpt_norm``: the positive CΠT norm, integrated along Im(y) = -lam/2 where
  every eigenfunction is real.
* ``real_plane_density_integrals``: int psi^2 over the real plane by
  truncated composite Simpson, an independent check of the contour shift.

The contour routes use Gauss-Hermite in the shifted variables, with the
x-shift absorbed into the nodes; the integrands are then polynomial times
exp(-xs^2 - u^2) and the rule is exact once it has enough nodes.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import logsumexp

from .errors import (
    ExactnessError,
    IncompatibleStatesError,
    ResolutionError,
    RuleGenerationError,
)
from .oscillator import eval_eigenstate, x_factor, y_factor

DEFAULT_ORDER = 48
MAX_ORDER = 128
MAX_NEWTON_ITERATIONS = 100
EPS = np.finfo(float).eps


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss-Hermite rule for weight exp(-x^2); nodes ascending."""

    order: int
    nodes: np.ndarray
    weights: np.ndarray
    log_weights: np.ndarray

    @property
    def exactness_degree(self):
        return 2 * self.order - 1

    @property
    def scaled_weights(self):
        """w_i exp(x_i^2): weights for integrands that carry their own Gaussian."""
        return np.exp(self.log_weights + self.nodes**2)


@dataclass(frozen=True)
class NormReport:
    real_part: float
    imag_part: float
    method: str  # "contour_shift" or "real_plane_direct"
    order_used: int
    estimated_error: float

    def to_dict(self):
        return {
            "real_part": self.real_part,
            "imag_part": self.imag_part,
            "method": self.method,
            "order_used": self.order_used,
            "estimated_error": self.estimated_error,
        }


def _orthonormal_hermite(x, order):
    """(p_order(x), p_{order-1}(x)) for the orthonormal Hermite polynomials."""
    p1 = np.pi**-0.25
    p2 = 0.0
    for j in range(1, order + 1):
        p3 = p2
        p2 = p1
        p1 = x * math.sqrt(2.0 / j) * p2 - math.sqrt((j - 1) / j) * p3
    return p1, p2


@lru_cache(maxsize=None)
def gauss_hermite(order):
    """Nodes and weights of the ``order``-point Gauss-Hermite rule.

    Roots of H_order are found by Newton's method on the orthonormal form of
    the three-term recurrence (H_Q' = 2Q H_{Q-1}), starting from the usual
    asymptotic estimates for the largest roots and extrapolating inwards.
    Weights are 1 / (Q p_{Q-1}(x_i)^2), which equals
    2^{Q-1} Q! sqrt(pi) / (Q^2 H_{Q-1}(x_i)^2) without the overflow.
    """
    if not 1 <= order <= MAX_ORDER:
        raise ValueError(f"order must lie in [1, {MAX_ORDER}], got {order}")
    q = order
    half = (q + 1) // 2
    roots = np.zeros(half)
    log_w = np.zeros(half)
    z = 0.0
    for i in range(half):
        if i == 0:
            z = math.sqrt(2 * q + 1) - 1.85575 * (2 * q + 1) ** (-1.0 / 6.0)
        elif i == 1:
            z -= 1.14 * q**0.426 / z
        elif i == 2:
            z = 1.86 * z - 0.86 * roots[0]
        elif i == 3:
            z = 1.91 * z - 0.91 * roots[1]
        else:
            z = 2.0 * z - roots[i - 2]
        for _ in range(MAX_NEWTON_ITERATIONS):
            p, p_prev = _orthonormal_hermite(z, q)
            dp = math.sqrt(2.0 * q) * p_prev
            step = p / dp
            z -= step
            if abs(step) <= 4 * EPS * max(1.0, abs(z)):
                break
        else:
            raise RuleGenerationError(
                f"Newton iteration for root {i} of H_{q} did not converge"
            )
        if q % 2 == 1 and i == half - 1:
            z = 0.0
        _, p_prev = _orthonormal_hermite(z, q)
        roots[i] = z
        log_w[i] = -math.log(q) - 2.0 * math.log(abs(p_prev))

    # roots[] runs from the largest downwards; mirror into ascending order
    if q % 2 == 1:
        nodes = np.concatenate([-roots, roots[-2::-1]])
        log_weights = np.concatenate([log_w, log_w[-2::-1]])
    else:
        nodes = np.concatenate([-roots, roots[::-1]])
        log_weights = np.concatenate([log_w, log_w[::-1]])
    for arr in (nodes, log_weights):
        arr.flags.writeable = False
    weights = np.exp(log_weights)
    weights.flags.writeable = False
    return QuadratureRule(order=q, nodes=nodes, weights=weights, log_weights=log_weights)


def moment_errors(rule):
    """Relative errors of sum w_i x_i^d against int x^d exp(-x^2) for d <= 2Q-1.

    Even moments are compared against Gamma(k + 1/2); odd moments, which vanish
    exactly, are measured relative to sum w_i |x_i|^d.  Sums are formed in log
    space so high-degree moments of large rules do not overflow.
    """
    x = rule.nodes
    with np.errstate(divide="ignore"):
        log_abs_x = np.log(np.abs(x))
    errors = np.empty(rule.exactness_degree + 1)
    for d in range(rule.exactness_degree + 1):
        if d == 0:
            log_terms = rule.log_weights
        else:
            log_terms = rule.log_weights + d * log_abs_x
        if d % 2 == 0:
            lse = logsumexp(log_terms)
            errors[d] = abs(math.expm1(lse - math.lgamma(d / 2 + 0.5)))
        else:
            scale = logsumexp(log_terms)
            if scale == -np.inf:
                errors[d] = 0.0  # single node at the origin
                continue
            terms = np.sign(x) * np.exp(log_terms - scale)
            errors[d] = abs(math.fsum(terms))
    return errors


def _contour_grid(rule, lam):
    t = rule.nodes
    x = (t - 0.5 * lam)[:, None]
    y = (t - 0.5j * lam)[None, :]
    w = rule.scaled_weights
    return x, y, np.outer(w, w)


def _check_order(rule, needed, what):
    if rule.order < needed:
        raise ExactnessError(
            f"{what} needs a rule of order >= {needed}, got {rule.order}"
        )


def pit_sign(m):
    return -1.0 if m % 2 else 1.0


def pit_inner_product(a, b, rule=None):
    """int dx dy (ΠT psi_a) psi_b; equals delta_ab (-1)^{m_a}.

    On the real plane ΠT psi_a = (-1)^{m_a} psi_a, and psi_a psi_b is entire
    in y, so the y-integral is taken on the shifted contour.
    """
    rule = rule or gauss_hermite(DEFAULT_ORDER)
    if a.lam != b.lam:
        raise IncompatibleStatesError(
            f"states carry different lambda ({a.lam} vs {b.lam})"
        )
    _check_order(rule, max(a.n + b.n, a.m + b.m) + 4, "pit_inner_product")
    return pit_sign(a.m) * cpt_inner_product(a, b, rule)


def cpt_inner_product(a, b, rule=None):
    """int dx int_C dy (CΠT psi_a) psi_b with CΠT psi_a = psi_a on the contour."""
    rule = rule or gauss_hermite(DEFAULT_ORDER)
    if a.lam != b.lam:
        raise IncompatibleStatesError(
            f"states carry different lambda ({a.lam} vs {b.lam})"
        )
    _check_order(rule, max(a.n + b.n, a.m + b.m) + 4, "cpt_inner_product")
    x, y, w = _contour_grid(rule, a.lam)
    return complex(np.sum(w * eval_eigenstate(a, x, y) * eval_eigenstate(b, x, y)))


def cpt_norm(state, rule=None):
    rule = rule or gauss_hermite(DEFAULT_ORDER)
    _check_order(rule, state.n + state.m + 4, "cpt_norm")
    x, y, w = _contour_grid(rule, state.lam)
    psi = eval_eigenstate(state, x, y)
    terms = w * psi * psi
    return NormReport(
        real_part=float(np.sum(terms.real)),
        imag_part=float(np.sum(terms.imag)),
        method="contour_shift",
        order_used=rule.order,
        estimated_error=float(terms.size * EPS * np.sum(np.abs(terms))),
    )


def simpson_weights(samples, h):
    """Composite Simpson weights for an odd number of equally spaced points."""
    if samples < 3 or samples % 2 == 0:
        raise ResolutionError(f"Simpson needs an odd sample count >= 3, got {samples}")
    w = np.full(samples, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return w * (h / 3.0)


def simpson_2d(values, x, y):
    """Tensor-product Simpson sum of ``values[i, j]`` sampled at (x[i], y[j])."""
    wx = simpson_weights(len(x), x[1] - x[0])
    wy = simpson_weights(len(y), y[1] - y[0])
    return wx @ values @ wy


def _simpson_square(state, half_width, samples):
    # psi^2 = X_n(x)^2 Y_m(y)^2, so the tensor Simpson sum factorizes
    pts = np.linspace(-half_width, half_width, samples)
    w = simpson_weights(samples, pts[1] - pts[0])
    sx = np.sum(w * x_factor(state.n, pts, state.lam) ** 2)
    sy = np.sum(w * y_factor(state.m, pts, state.lam) ** 2)
    return complex(sx * sy)


def real_plane_density_integrals(state, half_width=None, samples=2001):
    """int int psi^2 dx dy over [-W, W]^2 of the real plane.

    Composite Simpson per axis; the estimated error is the Richardson
    difference against roughly half the resolution.
    """
    min_width = 8.0 + state.lam
    if half_width is None:
        half_width = min_width
    if half_width < min_width:
        raise ResolutionError(
            f"half_width {half_width} below the truncation minimum {min_width}"
        )
    if samples < 2001 or samples % 2 == 0:
        raise ResolutionError(f"samples must be odd and >= 2001, got {samples}")
    value = _simpson_square(state, half_width, samples)
    coarse_n = (samples + 1) // 2
    if coarse_n % 2 == 0:
        coarse_n += 1
    coarse = _simpson_square(state, half_width, coarse_n)
    return NormReport(
        real_part=value.real,
        imag_part=value.imag,
        method="real_plane_direct",
        order_used=samples,
        estimated_error=abs(value - coarse) / 15.0,
    )
