"""Numerical laboratory for circle-invariant potentials on the round
three-sphere: regularized geodesics, path-length distances, an exact
Legendre-dual oracle, and comparison-geometry audits.

Everything reduces through the Hopf chart s = log|z|^2 to functions of
one space variable; see `geometry` for the chart conventions.
"""

from .errors import (
    DegenerateTriangle,
    GridMismatch,
    HopflabError,
    NewtonDivergence,
    NonConvexInput,
    NotDecreasing,
    PositivityLoss,
    PositivityViolation,
    TruncationWarning,
)
from .geometry import (
    InvariantPotential,
    SGrid,
    SymplecticPotential,
    TangentField,
    default_xgrid,
    f0,
    f0_prime,
    f0_second,
    inverse_legendre,
    legendre,
    ma_density,
    total_mass,
    u0,
)
from .mabuchi import (
    covariant_derivative,
    inner_product,
    path_length,
    path_speeds,
)
from .metricspace import (
    Cat0Report,
    DistanceReport,
    MassReport,
    TildeReport,
    cat0_check,
    distance,
    energy_E,
    full_mass_test,
    tilde_distance,
)
from .oracle import (
    affine_remainder,
    oracle_distance,
    oracle_geodesic,
    oracle_path,
    remainder_l2_distance,
)
from .sampling import (
    conformal_path,
    conformal_potential,
    conformal_remainder,
    conformal_velocity,
    random_pair,
    random_potential,
    random_remainder,
    slope_model,
    unbounded_full_mass_model,
)
from .sasaki import (
    cone_residual,
    contact_volume,
    sasaki_distance,
    sasaki_inner_product,
)
from .solver import (
    DEFAULT_EPS_SCHEDULE,
    GeodesicSolution,
    SolverConfig,
    SpacetimePath,
    geodesic_residual,
    solve_eps_geodesic,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateTriangle",
    "GridMismatch",
    "HopflabError",
    "NewtonDivergence",
    "NonConvexInput",
    "NotDecreasing",
    "PositivityLoss",
    "PositivityViolation",
    "TruncationWarning",
    "InvariantPotential",
    "SGrid",
    "SymplecticPotential",
    "TangentField",
    "default_xgrid",
    "f0",
    "f0_prime",
    "f0_second",
    "inverse_legendre",
    "legendre",
    "ma_density",
    "total_mass",
    "u0",
    "covariant_derivative",
    "inner_product",
    "path_length",
    "path_speeds",
    "Cat0Report",
    "DistanceReport",
    "MassReport",
    "TildeReport",
    "cat0_check",
    "distance",
    "energy_E",
    "full_mass_test",
    "tilde_distance",
    "affine_remainder",
    "oracle_distance",
    "oracle_geodesic",
    "oracle_path",
    "remainder_l2_distance",
    "conformal_path",
    "conformal_potential",
    "conformal_remainder",
    "conformal_velocity",
    "random_pair",
    "random_potential",
    "random_remainder",
    "slope_model",
    "unbounded_full_mass_model",
    "cone_residual",
    "contact_volume",
    "sasaki_distance",
    "sasaki_inner_product",
    "DEFAULT_EPS_SCHEDULE",
    "GeodesicSolution",
    "SolverConfig",
    "SpacetimePath",
    "geodesic_residual",
    "solve_eps_geodesic",
]
