"""Reference families and seeded random members.

The conformal family

    phi_t(s) = log(1 + e^{2t+s}) - log(1 + e^s),  t in [0, 1],

is the package's calibration witness: it is a unit-time geodesic whose
symplectic remainder is the affine family v_t(x) = -2 t x, whose speed is
constant with squared value 8*pi/3, and whose endpoint distance is
sqrt(8*pi/3).

Random smooth-class members are drawn in the symplectic picture, where
admissibility is a convexity check: v(x) = sum a_m sin(m pi x) with
coefficients shrunk until u0 + v stays discretely convex, then pulled
back through the inverse Legendre transform.  This keeps every sample
exactly admissible and reproducible from a seed.
"""

from __future__ import annotations

import numpy as np
from scipy.special import expit

from .geometry import (
    InvariantPotential,
    SGrid,
    SymplecticPotential,
    default_xgrid,
    f0,
    inverse_legendre,
    u0,
)
from .solver import SpacetimePath

__all__ = [
    "conformal_potential",
    "conformal_velocity",
    "conformal_path",
    "conformal_remainder",
    "slope_model",
    "unbounded_full_mass_model",
    "random_remainder",
    "random_potential",
    "random_pair",
]


def conformal_potential(grid: SGrid, t: float = 1.0) -> InvariantPotential:
    """Conformal-family member phi_t = log(1+e^{2t+s}) - log(1+e^s)."""
    s = grid.nodes
    return InvariantPotential(grid, f0(s + 2.0 * t) - f0(s))


def conformal_velocity(grid: SGrid, t: float = 0.0) -> np.ndarray:
    """Time derivative of the conformal family: 2 e^{2t+s}/(1+e^{2t+s})."""
    return 2.0 * expit(grid.nodes + 2.0 * t)


def conformal_path(grid: SGrid, tcount: int = 65) -> SpacetimePath:
    """The closed-form conformal geodesic sampled on a (tcount, N) grid."""
    times = np.linspace(0.0, 1.0, tcount)
    s = grid.nodes
    values = f0(s[None, :] + 2.0 * times[:, None]) - f0(s)[None, :]
    return SpacetimePath(grid, tcount, values)


def conformal_remainder(xgrid=None, t: float = 1.0) -> SymplecticPotential:
    """Exact symplectic remainder of the conformal member: v(x) = -2 t x."""
    if xgrid is None:
        xgrid = default_xgrid()
    return SymplecticPotential(xgrid, -2.0 * t * np.asarray(xgrid, dtype=float))


def slope_model(grid: SGrid, alpha: float) -> InvariantPotential:
    """Singular model phi_alpha = alpha*(s - f0(s)) with a log pole at z=0.

    Carries left slope alpha in (0,1) and right slope 0; its density is
    (1-alpha) f0'' and its mass is 2*pi*(1-alpha) exactly.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("slope must sit in (0,1), got %g" % alpha)
    s = grid.nodes
    return InvariantPotential(grid, alpha * (s - f0(s)), left_slope=alpha)


def unbounded_full_mass_model(grid: SGrid, beta: float = 0.5,
                              offset: float = 30.0) -> InvariantPotential:
    """Unbounded potential with zero slope limits (hence full mass).

    phi(s) = -beta * log(1 + log(1 + e^{-s-offset})) decays like
    -beta*log(-s) as s -> -inf: unbounded below, yet both slope limits
    vanish, so the model keeps total mass 2*pi and witnesses that the
    finite-mass class is a slope condition rather than a boundedness one.
    The offset pushes the slow tail beyond the window so quadrature sees
    an exponentially flat function.
    """
    s = grid.nodes
    w = np.logaddexp(0.0, -s - offset)
    return InvariantPotential(grid, -beta * np.log1p(w))


def random_remainder(rng: np.random.Generator, K: int = 4097, modes: int = 6,
                     amplitude: float = 0.25, max_tries: int = 200,
                     margin: float = 0.3) -> SymplecticPotential:
    """Seeded sine-series remainder, resampled until u0 + v is convex.

    v(x) = sum_{m=1..modes} a_m sin(m pi x) with a_m ~ N(0, (amplitude/m^2)^2).
    The background contributes u0'' >= 4, so moderate coefficients pass;
    draws that do not are rejected and retried.

    Convexity is required with a margin: the second difference of u0 + v
    must keep at least `margin` times the background's at every node.
    Bare positivity would admit members whose dual curvature spikes,
    which ruins transform accuracy downstream; the margin keeps the
    duality uniformly well conditioned.
    """
    x = default_xgrid(K)
    bg = np.diff(np.diff(u0(x)))
    for _ in range(max_tries):
        coeffs = rng.normal(0.0, amplitude / np.arange(1, modes + 1) ** 2)
        v = np.zeros_like(x)
        for m, a in enumerate(coeffs, start=1):
            v += a * np.sin(m * np.pi * x)
        if np.any(np.diff(np.diff(v)) < (margin - 1.0) * bg):
            continue
        return SymplecticPotential(x, v)
    raise RuntimeError("could not draw a convex remainder in %d tries" % max_tries)


def random_potential(rng: np.random.Generator, grid: SGrid, K: int = 4097,
                     modes: int = 6, amplitude: float = 0.25) -> InvariantPotential:
    """A random smooth-class member: inverse transform of a random remainder."""
    return inverse_legendre(random_remainder(rng, K, modes, amplitude), grid)


def random_pair(rng: np.random.Generator, grid: SGrid, K: int = 4097,
                modes: int = 6, amplitude: float = 0.25):
    """Two independent random smooth-class members on the same grid."""
    return (
        random_potential(rng, grid, K, modes, amplitude),
        random_potential(rng, grid, K, modes, amplitude),
    )
