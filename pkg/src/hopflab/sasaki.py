"""Lift to the five-dimensional picture: volumes, distances, cone audit.

The invariant reduction sits inside a contact five-manifold fibered in
circles over the base.  Fiber integration multiplies every base integral
by the fiber length 2*pi, so all lifted quantities are exact rescalings:

    <a, b>_lift = 2*pi <a, b>_base      => lengths scale by sqrt(2*pi),
    contact volume = 2*pi * total transverse mass  (background: 4*pi^2).

`cone_residual` performs an independent audit of the solver through the
metric cone.  Writing r = 1 + t/2 and psi = phi + 4 log r turns the
strip problem into a cone problem whose defect is

    E_cone = r^2 * (F_tt F_ss - F_ts^2 - eps f0''),

i.e. the strip defect reappears weighted by r^2 in [1, 9/4].  The audit
recomputes F = f0 + phi from psi by subtracting the log factor at the
nodes and rebuilding the strip defect from the recovered field; the two
residual maxima must agree within the factor 9/4 (equality of fields is
exact, so the ratio reflects only the r^2 weight).
"""

from __future__ import annotations

import numpy as np

from .geometry import InvariantPotential, f0_second, total_mass
from .mabuchi import inner_product
from .solver import SpacetimePath, _defect

__all__ = [
    "sasaki_inner_product",
    "sasaki_distance",
    "contact_volume",
    "cone_residual",
]

TWO_PI = 2.0 * np.pi


def sasaki_inner_product(phi: InvariantPotential, psi1, psi2) -> float:
    """Lifted tangent inner product: 2*pi times the base inner product."""
    return TWO_PI * inner_product(phi, psi1, psi2)


def sasaki_distance(base_distance: float) -> float:
    """Lifted distance: sqrt(2*pi) times the base distance."""
    if base_distance < 0.0:
        raise ValueError("distance cannot be negative")
    return float(np.sqrt(TWO_PI) * base_distance)


def contact_volume(phi: InvariantPotential) -> float:
    """Total contact volume of the lift: 2*pi times the transverse mass."""
    return TWO_PI * total_mass(phi)


def cone_residual(path: SpacetimePath, eps: float) -> dict:
    """Audit a solved path through the cone change of variables.

    Returns a dict with the strip residual maximum, the cone residual
    maximum, their ratio, and the max node-wise discrepancy between the
    direct strip defect and the defect rebuilt from the cone field.
    """
    g = path.grid
    dt = path.dt
    times = path.times
    r = 1.0 + 0.5 * times
    logfac = 4.0 * np.log(r)

    f2 = f0_second(g.nodes)

    # direct strip defect
    strip, _, _, _ = _defect(path.values, f2, dt, g.h, eps)

    # cone field and recovery: psi = phi + 4 log r, phi = psi - 4 log r
    psi = path.values + logfac[:, None]
    recovered = psi - logfac[:, None]
    rebuilt, _, _, _ = _defect(recovered, f2, dt, g.h, eps)

    interior = np.s_[:, 1:-1]
    strip_max = float(np.max(np.abs(strip[interior])))
    cone = (r[1:-1] ** 2)[:, None] * rebuilt
    cone_max = float(np.max(np.abs(cone[interior])))
    mismatch = float(np.max(np.abs(rebuilt[interior] - strip[interior])))
    ratio = cone_max / strip_max if strip_max > 0 else float("nan")
    return {
        "strip_max": strip_max,
        "cone_max": cone_max,
        "ratio": ratio,
        "field_mismatch": mismatch,
    }
