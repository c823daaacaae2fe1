"""The identity suite behind ``ptosc verify``.

Each check records the worst deviation over its cases and passes when that
deviation is within its tolerance.
"""

import itertools
import math

import numpy as np

from . import GENERATED_BY
from .coherent import CoherentSpec, coherent_cpt_norm
from .oscillator import EigenState, eval_eigenstate
from .quadrature import (
    cpt_inner_product,
    cpt_norm,
    gauss_hermite,
    pit_inner_product,
    pit_sign,
    real_plane_density_integrals,
)

TOL_EXACT = 1e-10
TOL_NORM = 1e-11
TOL_SIMPSON = 1e-7
COHERENT_N = (3, 12)
COHERENT_A = (0.5, 1.0, 2.0)
COHERENT_THETA = (0.0, math.pi / 2)


def expected_pit(a, b):
    """Closed form of the ΠT Gram matrix: delta delta (-1)^m."""
    return pit_sign(a.m) if (a.n, a.m) == (b.n, b.m) else 0.0


def binomial_norm(n_total, amplitude_ratio):
    """sum_K C(N, K) A^{2K} / (1 + A^2)^N with exact integer binomials."""
    a2 = amplitude_ratio**2
    return math.fsum(math.comb(n_total, k) * a2**k for k in range(n_total + 1)) / (1 + a2) ** n_total


class _Check:
    def __init__(self, name, tolerance):
        self.name = name
        self.tolerance = tolerance
        self.cases = 0
        self.worst = 0.0
        self.worst_case = None

    def add(self, deviation, case):
        self.cases += 1
        if not deviation <= self.worst:  # also catches nan
            self.worst = deviation
            self.worst_case = case

    def result(self):
        return {
            "name": self.name,
            "passed": bool(self.worst <= self.tolerance),
            "max_deviation": float(self.worst),
            "tolerance": self.tolerance,
            "cases": self.cases,
            "worst_case": self.worst_case,
        }


def _hermitian_gram(a, b, rule):
    # ordinary L2 product on the real plane; exact under Gauss-Hermite when lambda = 0
    t = rule.nodes
    w = rule.scaled_weights
    x, y = t[:, None], t[None, :]
    integrand = np.conj(eval_eigenstate(a, x, y)) * eval_eigenstate(b, x, y)
    return complex(np.sum(np.outer(w, w) * integrand))


def run_verification(max_index=4, lambdas=(0.0, 1.0, 2.5), quad_order=48,
                     simpson_samples=2001):
    rule = gauss_hermite(quad_order)
    idx = range(max_index + 1)
    pit = _Check("pit_biorthogonality", TOL_EXACT)
    cpt = _Check("cpt_normalization", TOL_NORM)
    coh = _Check("coherent_normalization", TOL_EXACT)
    coh_closed = _Check("coherent_closed_form", TOL_EXACT)
    re_plane = _Check("real_plane_re", TOL_SIMPSON)
    im_plane = _Check("real_plane_im", TOL_SIMPSON)
    agree = _Check("contour_agreement", TOL_SIMPSON)
    herm = _Check("hermitian_limit", TOL_EXACT)
    checks = [pit, cpt, coh, coh_closed, re_plane, im_plane, agree]

    for lam in lambdas:
        states = [EigenState(n, m, lam) for n, m in itertools.product(idx, idx)]
        for a, b in itertools.product(states, states):
            value = pit_inner_product(a, b, rule)
            pit.add(abs(value - expected_pit(a, b)), [a.n, a.m, b.n, b.m, lam])
            if lam == 0:
                c = cpt_inner_product(a, b, rule)
                dev = max(abs(c - _hermitian_gram(a, b, rule)),
                          abs(value - pit_sign(a.m) * c))
                herm.add(dev, [a.n, a.m, b.n, b.m])
        for s in states:
            contour = cpt_norm(s, rule)
            cpt.add(max(abs(contour.real_part - 1), abs(contour.imag_part)), [s.n, s.m, lam])
            direct = real_plane_density_integrals(s, 8.0 + lam, simpson_samples)
            re_plane.add(abs(direct.real_part - 1), [s.n, s.m, lam])
            im_plane.add(abs(direct.imag_part), [s.n, s.m, lam])
            agree.add(abs(direct.real_part - contour.real_part), [s.n, s.m, lam])
        for n_total, a_ratio, theta in itertools.product(COHERENT_N, COHERENT_A, COHERENT_THETA):
            spec = CoherentSpec(n_total, a_ratio, theta, lam)
            report = coherent_cpt_norm(spec, rule)
            case = [n_total, a_ratio, theta, lam]
            coh.add(max(abs(report.real_part - 1), abs(report.imag_part)), case)
            coh_closed.add(abs(report.real_part - binomial_norm(n_total, a_ratio)), case)
    if herm.cases:
        checks.append(herm)

    results = [c.result() for c in checks]
    return {
        "generated_by": GENERATED_BY,
        "parameters": {
            "max_index": max_index,
            "lambdas": list(lambdas),
            "quad_order": quad_order,
            "simpson_samples": simpson_samples,
        },
        "passed": all(r["passed"] for r in results),
        "checks": results,
    }
