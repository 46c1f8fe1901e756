"""Exact and Monte Carlo distributions of a kinetically adsorbed
random-walk plume.

The heavy lifting lives in the C++ extension ``_kplume``; this package
re-exports its public surface.
"""

from ._kplume import (  # noqa: F401
    AllMassAtomicError,
    AsymmetricWalkParams,
    DegenerateChainError,
    EmpiricalSummary,
    GaussianModel,
    InvalidDispersionError,
    InvalidXiError,
    LatticePmf,
    SupportOverflowError,
    __version__,
    asym_joint_pmf,
    check_conditional_symmetry,
    condvar_curve,
    count_modes,
    gaussian_atom_mass,
    gaussian_condvar,
    gaussian_condvar_curve,
    gaussian_default_x_range,
    gaussian_density,
    gaussian_marginal_density_x,
    joint_pmf,
    occupation_mean,
    occupation_pmf,
    simulate,
    stationary,
    total_variation,
    verify,
)

__all__ = [
    "AllMassAtomicError",
    "AsymmetricWalkParams",
    "DegenerateChainError",
    "EmpiricalSummary",
    "GaussianModel",
    "InvalidDispersionError",
    "InvalidXiError",
    "LatticePmf",
    "SupportOverflowError",
    "__version__",
    "asym_joint_pmf",
    "check_conditional_symmetry",
    "condvar_curve",
    "count_modes",
    "gaussian_atom_mass",
    "gaussian_condvar",
    "gaussian_condvar_curve",
    "gaussian_default_x_range",
    "gaussian_density",
    "gaussian_marginal_density_x",
    "joint_pmf",
    "occupation_mean",
    "occupation_pmf",
    "simulate",
    "stationary",
    "total_variation",
    "verify",
]
