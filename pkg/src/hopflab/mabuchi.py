"""Riemannian layer: the invariant Mabuchi-type metric and its connection.

At a potential phi the metric pairs two tangent fields against the moving
transverse density,

    <psi1, psi2>_phi = 2*pi * Integral(psi1 * psi2 * rho_phi ds),

with rho_phi = f0'' + phi'' from `ma_density`.  Path lengths integrate
the nodal speeds sqrt(<phidot, phidot>) with the trapezoid rule in time;
time derivatives are central inside and second-order one-sided at t = 0
and t = 1.

The Levi-Civita connection of this metric, restricted to invariant data,
is

    nabla_{phidot} psi = psidot - (d_s psi)(d_s phidot) / f_phi'' ,

the denominator being the full transverse density.  The factor is pinned
by two independent requirements checked in the tests: nabla of the
velocity along a geodesic must vanish exactly when F_tt F_ss - F_ts^2
does, and d/dt <psi, psi> must equal 2 <nabla psi, psi> (metric
compatibility via integration by parts of the density's time derivative).
"""

from __future__ import annotations

import numpy as np

from .errors import GridMismatch
from .geometry import (InvariantPotential, TangentField, f0_prime,
                       ma_density, second_differences)
from .solver import SpacetimePath

__all__ = [
    "inner_product",
    "path_speeds",
    "path_length",
    "covariant_derivative",
    "time_derivative",
    "space_derivative",
]

TWO_PI = 2.0 * np.pi


def _field_values(field, grid):
    if isinstance(field, TangentField):
        grid.require_same(field.grid)
        return field.values
    values = np.asarray(field, dtype=float)
    if values.shape != (grid.N,):
        raise GridMismatch(
            "tangent data has shape %s, grid wants (%d,)" % (values.shape, grid.N)
        )
    return values


def inner_product(phi: InvariantPotential, psi1, psi2) -> float:
    """Metric pairing 2*pi * Integral(psi1 psi2 rho_phi ds) by trapezoid.

    psi1 and psi2 may be TangentFields on phi's grid or bare value arrays.
    The density mass outside the window is known exactly from the slope
    limits (same telescoping as `total_mass`) and is added back weighted
    by the boundary values of psi1 psi2, i.e. the fields are extended as
    constants past the window edges.  Raises GridMismatch when grids
    disagree and PositivityViolation when phi's density fails.
    """
    g = phi.grid
    a = _field_values(psi1, g)
    b = _field_values(psi2, g)
    rho = ma_density(phi)
    w = a * b * rho
    h = g.h
    window = h * (np.sum(w) - 0.5 * (w[0] + w[-1]))
    v = phi.values
    dleft = (v[1] - v[0]) / h
    dright = (v[-1] - v[-2]) / h
    tail_right = (1.0 + phi.right_slope) - (f0_prime(g.L) + dright)
    tail_left = (f0_prime(-g.L) + dleft) - phi.left_slope
    return float(TWO_PI * (window
                           + a[-1] * b[-1] * tail_right
                           + a[0] * b[0] * tail_left))


def time_derivative(values: np.ndarray, dt: float) -> np.ndarray:
    """d/dt along axis 0: central inside, second-order one-sided at the ends."""
    values = np.asarray(values, dtype=float)
    out = np.empty_like(values)
    out[1:-1] = (values[2:] - values[:-2]) / (2.0 * dt)
    out[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * dt)
    out[-1] = (3.0 * values[-1] - 4.0 * values[-2] + values[-3]) / (2.0 * dt)
    return out


def space_derivative(values: np.ndarray, h: float) -> np.ndarray:
    """d/ds along the last axis, same stencils as `time_derivative`."""
    values = np.asarray(values, dtype=float)
    out = np.empty_like(values)
    out[..., 1:-1] = (values[..., 2:] - values[..., :-2]) / (2.0 * h)
    out[..., 0] = (-3.0 * values[..., 0] + 4.0 * values[..., 1] - values[..., 2]) / (2.0 * h)
    out[..., -1] = (3.0 * values[..., -1] - 4.0 * values[..., -2] + values[..., -3]) / (2.0 * h)
    return out


def path_speeds(path: SpacetimePath) -> np.ndarray:
    """Squared metric speed <phidot, phidot> at every time node."""
    phidot = time_derivative(path.values, path.dt)
    e = np.empty(path.tcount)
    for j in range(path.tcount):
        e[j] = inner_product(path.slice(j), phidot[j], phidot[j])
    return e


def path_length(path: SpacetimePath) -> float:
    """Metric length: trapezoid-in-time integral of the nodal speeds."""
    e = path_speeds(path)
    speeds = np.sqrt(np.maximum(e, 0.0))
    return float(path.dt * (np.sum(speeds) - 0.5 * (speeds[0] + speeds[-1])))


def covariant_derivative(path: SpacetimePath, field) -> np.ndarray:
    """nabla_{phidot} psi along a path, nodewise.

    Parameters
    ----------
    path : SpacetimePath
    field : ndarray of shape (tcount, N)
        The tangent field psi(t_j, s_i) along the path.

    Returns
    -------
    ndarray of shape (tcount, N)
        psidot - (d_s psi)(d_s phidot) / rho, with rho the slicewise
        transverse density.
    """
    psi = np.asarray(field, dtype=float)
    if psi.shape != path.values.shape:
        raise GridMismatch(
            "field shape %s does not match path shape %s"
            % (psi.shape, path.values.shape)
        )
    h = path.grid.h
    phidot = time_derivative(path.values, path.dt)
    psidot = time_derivative(psi, path.dt)
    f2 = np.vstack([ma_density(path.slice(j)) for j in range(path.tcount)])
    return psidot - space_derivative(psi, h) * space_derivative(phidot, h) / f2
