"""ΠT-symmetric complexified 2D harmonic oscillator: eigenfunctions, norms,
coherent states and exportable density grids."""

__version__ = "0.1.0"
GENERATED_BY = f"ptosc {__version__}"

from .coherent import (  # noqa: E402
    ClassicalTrajectory,
    CoherentSpec,
    GlauberSpec,
    classical_trajectory,
    coherent_coefficients,
    coherent_cpt_norm,
    eval_coherent,
    evolve_coherent,
    glauber_coefficients,
)
from .complexmath import hermite_eval, hermite_parity_check, log_factorial  # noqa: E402
from .fields import FieldGrid, GridSpec, sample_coherent_density, sample_density, view  # noqa: E402
from .oscillator import (  # noqa: E402
    EigenState,
    EnergyPair,
    energy,
    eval_eigenstate,
    pit_transform,
    potential_cartesian,
    potential_polar_magnitude,
)
from .quadrature import (  # noqa: E402
    NormReport,
    QuadratureRule,
    cpt_norm,
    gauss_hermite,
    pit_inner_product,
    real_plane_density_integrals,
)

__all__ = [
    "ClassicalTrajectory",
    "CoherentSpec",
    "EigenState",
    "EnergyPair",
    "FieldGrid",
    "GlauberSpec",
    "GridSpec",
    "NormReport",
    "QuadratureRule",
    "classical_trajectory",
    "coherent_coefficients",
    "coherent_cpt_norm",
    "cpt_norm",
    "energy",
    "eval_coherent",
    "eval_eigenstate",
    "evolve_coherent",
    "gauss_hermite",
    "glauber_coefficients",
    "hermite_eval",
    "hermite_parity_check",
    "log_factorial",
    "pit_inner_product",
    "pit_transform",
    "potential_cartesian",
    "potential_polar_magnitude",
    "real_plane_density_integrals",
    "sample_coherent_density",
    "sample_density",
    "view",
]
