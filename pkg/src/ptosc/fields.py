"""Sampling of wavefunctions and densities onto rectangular grids."""

from dataclasses import dataclass, field

import numpy as np

from .coherent import eval_coherent, eval_superposition
from .errors import DomainError
from .oscillator import eval_eigenstate
from .quadrature import simpson_2d

QUANTITIES = ("wavefunction", "density", "coherent_density", "potential_abs")
VIEWS = ("re", "im", "abs2")


def _axis(lo, hi, count):
    pts = np.linspace(lo, hi, count)
    if lo == -hi:
        # exact mirror symmetry, so reflected grids line up bit for bit
        pts = 0.5 * (pts - pts[::-1])
    return pts


@dataclass(frozen=True)
class GridSpec:
    x_min: float = -5.0
    x_max: float = 5.0
    y_min: float = -5.0
    y_max: float = 5.0
    nx: int = 201
    ny: int = 201

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise DomainError("grid bounds must satisfy min < max")
        if self.nx < 2 or self.ny < 2:
            raise DomainError("grid needs at least two points per axis")

    @property
    def xs(self):
        return _axis(self.x_min, self.x_max, self.nx)

    @property
    def ys(self):
        return _axis(self.y_min, self.y_max, self.ny)

    def mesh(self):
        """Coordinate arrays of shape (nx, ny), indexed [i, j] -> (x_i, y_j)."""
        return np.meshgrid(self.xs, self.ys, indexing="ij")


@dataclass(eq=False)
class FieldGrid:
    spec: GridSpec
    values: np.ndarray
    quantity: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.values.shape != (self.spec.nx, self.spec.ny):
            raise ValueError(
                f"values shape {self.values.shape} does not match grid "
                f"({self.spec.nx}, {self.spec.ny})"
            )
        if self.quantity not in QUANTITIES:
            raise ValueError(f"unknown quantity {self.quantity!r}")


def sample_wavefunction(state, spec):
    x, y = spec.mesh()
    return FieldGrid(
        spec, eval_eigenstate(state, x, y).astype(complex), "wavefunction",
        {"n": state.n, "m": state.m, "lambda": state.lam},
    )


def sample_density(state, spec):
    """(psi_nm)^2 on the real grid -- the square, not the modulus squared."""
    x, y = spec.mesh()
    psi = eval_eigenstate(state, x, y).astype(complex)
    return FieldGrid(
        spec, psi * psi, "density", {"n": state.n, "m": state.m, "lambda": state.lam}
    )


def sample_coherent_density(spec_c, spec):
    x, y = spec.mesh()
    phi = np.asarray(eval_coherent(spec_c, x, y), dtype=complex)
    return FieldGrid(
        spec, phi * phi, "coherent_density",
        {"N": spec_c.n_total, "A": spec_c.amplitude_ratio,
         "theta": spec_c.phase, "lambda": spec_c.lam},
    )


def sample_superposition_density(coeffs, lam, spec, params=None):
    """Squared superposition sum_nm c_nm psi_nm on the grid (time-evolved states)."""
    x, y = spec.mesh()
    psi = np.asarray(eval_superposition(coeffs, x, y, lam), dtype=complex)
    return FieldGrid(spec, psi * psi, "coherent_density", dict(params or {}, **{"lambda": lam}))


SQUARED_QUANTITIES = ("density", "coherent_density")


def view(grid, which):
    """Real-valued view of a grid.

    ``abs2`` is the modulus squared of the underlying amplitude: |psi|^2.  For
    grids that already hold psi^2 this is |values|, which is what (psi)^2 is
    compared against in the Hermitian limit.
    """
    if which == "re":
        return grid.values.real.copy()
    if which == "im":
        return grid.values.imag.copy()
    if which == "abs2":
        if grid.quantity in SQUARED_QUANTITIES:
            return np.abs(grid.values)
        return np.abs(grid.values) ** 2
    raise ValueError(f"view must be one of {VIEWS}, got {which!r}")


def grid_integral(grid, which="re"):
    """Simpson sum of a view; both axes need an odd point count."""
    return float(simpson_2d(view(grid, which), grid.spec.xs, grid.spec.ys))


def summarize(grid):
    """Extremal structure of each view: min/max and where they occur."""
    xs, ys = grid.spec.xs, grid.spec.ys
    out = {}
    for which in VIEWS:
        v = view(grid, which)
        i_min, j_min = np.unravel_index(np.argmin(v), v.shape)
        i_max, j_max = np.unravel_index(np.argmax(v), v.shape)
        out[which] = {
            "min": float(v[i_min, j_min]),
            "argmin": [float(xs[i_min]), float(ys[j_min])],
            "max": float(v[i_max, j_max]),
            "argmax": [float(xs[i_max]), float(ys[j_max])],
        }
    return out


def sample_potential_abs(lam, spec):
    """|V(x, y)| on the grid, stored with zero imaginary part."""
    from .oscillator import potential_cartesian

    x, y = spec.mesh()
    return FieldGrid(
        spec, np.abs(potential_cartesian(x, y, lam)).astype(complex), "potential_abs",
        {"lambda": lam},
    )
