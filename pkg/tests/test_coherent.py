import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.special import eval_hermite

from ptosc.coherent import (
    CoherentSpec,
    GlauberSpec,
    classical_position,
    classical_trajectory,
    coherent_coefficients,
    coherent_cpt_norm,
    eval_coherent,
    evolve_coherent,
    glauber_coefficients,
    minimal_cutoff,
)
from ptosc.errors import DomainError, TruncationError
from ptosc.oscillator import EigenState, eval_eigenstate, pit_transform

GRID = np.meshgrid(np.linspace(-3, 3, 21), np.linspace(-3, 3, 21), indexing="ij")


def closed_form_norm(n_total, a):
    return sum(math.comb(n_total, k) * a ** (2 * k) for k in range(n_total + 1)) / (1 + a * a) ** n_total


def poisson_tail_double_sum(b2, g2, cutoff, extra=60):
    """exp(-(b2+g2)) sum_{n+m>cutoff} b2^n g2^m / (n! m!), summed term by term."""
    total = Fraction(0)
    fb, fg = Fraction(b2), Fraction(g2)
    for shell in range(cutoff + 1, cutoff + extra):
        for n in range(shell + 1):
            m = shell - n
            total += fb**n * fg**m / (math.factorial(n) * math.factorial(m))
    return float(total) * math.exp(-(b2 + g2))


def test_coefficients_examples():
    np.testing.assert_array_equal(coherent_coefficients(CoherentSpec(0, 1.0, 0.3)), [1.0])
    np.testing.assert_allclose(
        coherent_coefficients(CoherentSpec(1, 1.0, 0.0)), [1 / math.sqrt(2)] * 2, rtol=1e-15
    )
    np.testing.assert_array_equal(coherent_coefficients(CoherentSpec(2, 0.0, 1.0)), [1, 0, 0])


@pytest.mark.parametrize("a", [0.0, 0.5, 1.0, 2.0, 10.0])
def test_coefficients_are_normalized(a):
    for n_total in range(25):
        c = coherent_coefficients(CoherentSpec(n_total, a, 0.7))
        assert abs(math.fsum(np.abs(c) ** 2) - 1) <= 1e-13


def test_coefficients_against_direct_expansion():
    spec = CoherentSpec(7, 1.3, 0.4)
    c = coherent_coefficients(spec)
    for k in range(8):
        expected = (1 + 1.3**2) ** (-3.5) * math.sqrt(math.comb(7, k)) * (1.3 * np.exp(0.4j)) ** k
        assert c[k] == pytest.approx(expected, rel=1e-13)


def test_complex_amplitude_rejected():
    with pytest.raises(DomainError):
        CoherentSpec(3, 1 + 1j, 0.0)
    with pytest.raises(DomainError):
        CoherentSpec(3, -1.0, 0.0)


def test_eval_coherent_n0_is_ground_state():
    x, y = GRID
    np.testing.assert_allclose(
        eval_coherent(CoherentSpec(0, 2.0, 1.0, 0.9), x, y),
        eval_eigenstate(EigenState(0, 0, 0.9), x, y), rtol=1e-15,
    )


def test_eval_coherent_hand_expanded():
    spec = CoherentSpec(3, 1.0, math.pi / 2, 0.0)
    x, y = 0.4, -0.3
    # (1/sqrt2)^3 [psi_03 + sqrt3 i psi_12 + sqrt3 i^2 psi_21 + i^3 psi_30]
    terms = [1, math.sqrt(3) * 1j, -math.sqrt(3), -1j]
    expected = sum(t * eval_eigenstate(EigenState(k, 3 - k), x, y) for k, t in enumerate(terms))
    assert eval_coherent(spec, x, y) == pytest.approx(expected / 2**1.5, rel=1e-14)
    assert eval_coherent(spec, 0.0, 0.0) == pytest.approx(0.0, abs=1e-16)


def test_eval_coherent_hermitian_limit_real_eigenfunctions():
    x, y = GRID
    for n_total, a, theta in [(3, 1.0, math.pi / 2), (6, 0.5, 1.0), (12, 2.0, 0.0)]:
        spec = CoherentSpec(n_total, a, theta, 0.0)

        def phi(k, t):
            return eval_hermite(k, t) * np.exp(-t * t / 2) / math.sqrt(
                2.0**k * math.factorial(k) * math.sqrt(math.pi))

        ref = sum(
            (1 + a * a) ** (-n_total / 2) * math.sqrt(math.comb(n_total, k))
            * (a * np.exp(1j * theta)) ** k * phi(k, x) * phi(n_total - k, y)
            for k in range(n_total + 1)
        )
        got = eval_coherent(spec, x, y)
        assert np.max(np.abs(got - ref)) <= 1e-12 * max(1.0, np.max(np.abs(ref)))


def test_pit_action_on_coherent_state():
    x, y = GRID
    for spec in [CoherentSpec(3, 1.0, math.pi / 2, 1.5), CoherentSpec(6, 0.7, 0.4, 2.0)]:
        n = spec.n_total
        transformed = pit_transform(lambda a, b: eval_coherent(spec, a, b))(x, y)
        coeffs = coherent_coefficients(CoherentSpec(n, spec.amplitude_ratio, -spec.phase, spec.lam))
        expected = sum(
            coeffs[k] * (-1) ** (n - k) * eval_eigenstate(EigenState(k, n - k, spec.lam), x, y)
            for k in range(n + 1)
        )
        assert np.max(np.abs(transformed - expected)) <= 1e-10 * np.max(np.abs(expected))


@pytest.mark.parametrize(
    "spec, tol",
    [
        (CoherentSpec(0), 1e-12),
        (CoherentSpec(3, 2.0, 1.1, 1.5), 1e-10),
        (CoherentSpec(12, 1.0, math.pi / 2, 3.0), 1e-9),
    ],
)
def test_coherent_cpt_norm(spec, tol):
    report = coherent_cpt_norm(spec)
    assert abs(report.real_part - 1) <= tol
    assert abs(report.imag_part) <= tol
    assert abs(report.real_part - closed_form_norm(spec.n_total, spec.amplitude_ratio)) <= tol


def test_glauber_vacuum():
    assert glauber_coefficients(GlauberSpec(0.0, 0.0, n_cutoff=0)) == {(0, 0): 1.0}


def test_glauber_annihilation_recursion():
    spec = GlauberSpec(0.7, 0.5, 0.3, -1.2, n_cutoff=14)
    c = glauber_coefficients(spec)
    for (n, m), value in c.items():
        if (n + 1, m) in c:
            assert math.sqrt(n + 1) * c[(n + 1, m)] == pytest.approx(spec.beta * value, rel=1e-14)
        if (n, m + 1) in c:
            assert math.sqrt(m + 1) * c[(n, m + 1)] == pytest.approx(spec.gamma * value, rel=1e-14)


def test_glauber_coefficient_formula():
    spec = GlauberSpec(0.8, 0.6, 0.2, 0.9)
    c = glauber_coefficients(spec)
    assert len(c) == 13 * 14 // 2
    b, g = spec.beta, spec.gamma
    for (n, m), value in c.items():
        expected = math.exp(-0.5) * b**n * g**m / math.sqrt(math.factorial(n) * math.factorial(m))
        assert value == pytest.approx(expected, rel=1e-13)


def test_tail_mass_matches_double_sum():
    for b, g, cutoff in [(1.0, 1.0, 12), (0.8, 0.8, 12), (1.0, 1.0, 14), (0.3, 1.2, 9)]:
        spec = GlauberSpec(b, g, n_cutoff=cutoff)
        assert spec.tail_mass() == pytest.approx(poisson_tail_double_sum(b * b, g * g, cutoff), rel=1e-9)


def test_unit_amplitudes_need_more_than_twelve_shells():
    spec = GlauberSpec(1.0, 1.0, n_cutoff=12)
    assert spec.tail_mass() == pytest.approx(2.0734695813702583e-07, rel=1e-9)
    with pytest.raises(TruncationError):
        glauber_coefficients(spec)
    assert minimal_cutoff(1.0, 1.0) == 14
    assert GlauberSpec(1.0, 1.0, n_cutoff=14).tail_mass() < 1e-8
    glauber_coefficients(GlauberSpec(1.0, 1.0, n_cutoff=14))


def test_evolve_identity_and_period():
    spec = GlauberSpec(0.8, 0.8, 0.0, math.pi / 2)
    c0 = glauber_coefficients(spec)
    assert evolve_coherent(spec, 0.0) == c0
    assert evolve_coherent(spec, 2 * math.pi) == c0
    assert evolve_coherent(spec, 4 * math.pi) == c0


def test_evolve_shell_phases():
    spec = GlauberSpec(0.8, 0.5, 0.1, 0.2)
    c0 = glauber_coefficients(spec)
    t = 0.37
    ct = evolve_coherent(spec, t)
    for (n, m), value in ct.items():
        assert value == pytest.approx(c0[(n, m)] * np.exp(-1j * (n + m + 1) * t), rel=1e-13)


def test_evolve_preserves_norm():
    spec = GlauberSpec(0.8, 0.8, 0.0, 1.0)
    ref = math.fsum(abs(v) ** 2 for v in glauber_coefficients(spec).values())
    for t in np.linspace(0, 10, 23):
        norm = math.fsum(abs(v) ** 2 for v in evolve_coherent(spec, t).values())
        assert abs(norm - ref) <= 1e-14


def test_literal_decay_shrinks_norm():
    spec = GlauberSpec(0.8, 0.8)
    norms = [
        math.fsum(abs(v) ** 2 for v in evolve_coherent(spec, t, paper_literal_decay=True).values())
        for t in (0.0, 0.5, 1.0)
    ]
    assert norms[0] > norms[1] > norms[2]


def test_classical_circle():
    traj = classical_trajectory(1.4, 1.4, 0.3, 0.3 + math.pi / 2, 10.0, 500)
    r2 = traj.xs**2 + traj.ys**2
    np.testing.assert_allclose(r2, (1.4 / math.sqrt(2)) ** 2, atol=1e-12)


def test_classical_degenerate_line():
    traj = classical_trajectory(2.0, 0.5, 0.8, 0.8, 7.0, 300)
    mask = np.abs(traj.xs) > 1e-8
    np.testing.assert_allclose(traj.ys[mask] / traj.xs[mask], 0.25, rtol=1e-12)


def test_classical_period():
    t = np.linspace(0, 5, 11)
    x0, y0 = classical_position(1.1, 0.4, 0.2, -0.6, t)
    x1, y1 = classical_position(1.1, 0.4, 0.2, -0.6, t + 2 * math.pi)
    np.testing.assert_allclose(x1, x0, atol=1e-14)
    np.testing.assert_allclose(y1, y0, atol=1e-14)
    with pytest.raises(DomainError):
        classical_trajectory(1, 1, 0, 0, 1.0, 1)
