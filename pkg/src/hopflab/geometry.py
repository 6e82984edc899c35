"""Invariant chart reduction for circle-invariant Kaehler potentials.

The round three-sphere fibers over the projective line; circle-invariant
Sasaki potentials upstairs are exactly functions of the base modulus, and
everything in this package works on the log-modulus chart

    s = log|z|^2,   s in (-inf, inf), truncated to [-L, L].

The background full potential on the chart is

    f0(s) = log(1 + e^s),

whose derivative f0'(s) = e^s/(1+e^s) is the moment coordinate x in (0,1)
and whose second derivative f0''(s) = e^s/(1+e^s)^2 is the background
transverse density.  With the angular factor 2*pi, the background area is
2*pi * (f0'(+inf) - f0'(-inf)) = 2*pi, which lifts to total contact volume
4*pi^2 on the sphere.

A relative potential phi (values on the grid, plus slope limits at the two
ends for singular models) is admissible when the full potential
f = f0 + phi is discretely convex:

    rho_i = f0''(s_i) + (D^2 phi)_i > 0.

The Legendre transform of f is the symplectic potential u on (0,1); the
background transforms to u0(x) = x log x + (1-x) log(1-x), and only the
bounded remainder v = u - u0 is stored.  The transforms in this module are
the package's independent oracle route: they use chord-slope bisection,
cubic splines, and a Newton refinement, none of which the PDE solver
touches.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import expit, xlogy

from .errors import (
    GridMismatch,
    NonConvexInput,
    PositivityViolation,
    TruncationWarning,
)

__all__ = [
    "SGrid",
    "InvariantPotential",
    "TangentField",
    "SymplecticPotential",
    "f0",
    "f0_prime",
    "f0_second",
    "u0",
    "default_xgrid",
    "second_differences",
    "ma_density",
    "total_mass",
    "legendre",
    "inverse_legendre",
]

TWO_PI = 2.0 * np.pi


def f0(s):
    """Background full potential log(1 + e^s), evaluated stably."""
    return np.logaddexp(0.0, s)


def f0_prime(s):
    """First derivative of the background: the logistic function."""
    return expit(s)


def f0_second(s):
    """Background transverse density e^s / (1 + e^s)^2."""
    return expit(s) * expit(-s)


def u0(x):
    """Symplectic background x log x + (1-x) log(1-x) on (0,1)."""
    x = np.asarray(x, dtype=float)
    return xlogy(x, x) + xlogy(1.0 - x, 1.0 - x)


def _readonly(a):
    out = np.array(a, dtype=float)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class SGrid:
    """Uniform grid on the truncated chart [-L, L].

    Parameters
    ----------
    L : float
        Half-width of the window, L > 0.  Default 15: the background
        density at the edge is about 3e-7, below quadrature tolerance.
    N : int
        Number of nodes, N >= 3.  Spacing is h = 2L/(N-1).
    """

    L: float = 15.0
    N: int = 2049

    def __post_init__(self):
        if not (self.L > 0.0):
            raise ValueError("grid half-width must be positive, got %r" % (self.L,))
        if int(self.N) != self.N or self.N < 3:
            raise ValueError("grid needs at least 3 nodes, got %r" % (self.N,))
        object.__setattr__(self, "N", int(self.N))

    @property
    def h(self) -> float:
        return 2.0 * self.L / (self.N - 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(-self.L, self.L, self.N)

    def require_same(self, other: "SGrid"):
        if self.L != other.L or self.N != other.N:
            raise GridMismatch(
                "grids differ: (L=%g, N=%d) vs (L=%g, N=%d)"
                % (self.L, self.N, other.L, other.N)
            )


@dataclass(frozen=True)
class InvariantPotential:
    """A relative potential on the chart, with slope limits at the ends.

    `values` holds phi(s_i) on the grid.  `left_slope` and `right_slope`
    are the asymptotic slopes of phi at -inf and +inf; smooth-class
    members have both equal to zero, while a left slope alpha in (0,1)
    models a logarithmic pole at z = 0.  Values are frozen after
    construction.
    """

    grid: SGrid
    values: np.ndarray
    left_slope: float = 0.0
    right_slope: float = 0.0

    def __post_init__(self):
        v = _readonly(self.values)
        if v.shape != (self.grid.N,):
            raise ValueError(
                "potential needs %d values, got shape %s" % (self.grid.N, v.shape)
            )
        if not np.all(np.isfinite(v)):
            raise ValueError("potential values must be finite")
        object.__setattr__(self, "values", v)

    @property
    def is_smooth_class(self) -> bool:
        """True when both slope limits vanish (the smooth class H)."""
        return self.left_slope == 0.0 and self.right_slope == 0.0

    def full_values(self) -> np.ndarray:
        """Full potential f0 + phi at the nodes."""
        return f0(self.grid.nodes) + self.values

    def shifted(self, c: float) -> "InvariantPotential":
        """The potential phi + c (same slopes)."""
        return InvariantPotential(
            self.grid, self.values + c, self.left_slope, self.right_slope
        )


@dataclass(frozen=True)
class TangentField:
    """A tangent vector at a potential: a function psi on the same grid."""

    grid: SGrid
    values: np.ndarray

    def __post_init__(self):
        v = _readonly(self.values)
        if v.shape != (self.grid.N,):
            raise ValueError(
                "tangent field needs %d values, got shape %s" % (self.grid.N, v.shape)
            )
        object.__setattr__(self, "values", v)


def second_differences(values: np.ndarray, h: float) -> np.ndarray:
    """Discrete second derivative: central inside, one-sided at the ends.

    The one-sided stencils (2, -5, 4, -1)/h^2 are second-order accurate
    and vanish exactly on affine data, which the mass bookkeeping relies
    on.
    """
    values = np.asarray(values, dtype=float)
    if values.shape[-1] < 4:
        raise ValueError("need at least 4 nodes for one-sided second differences")
    out = np.empty_like(values)
    out[..., 1:-1] = values[..., 2:] - 2.0 * values[..., 1:-1] + values[..., :-2]
    out[..., 0] = (
        2.0 * values[..., 0] - 5.0 * values[..., 1] + 4.0 * values[..., 2] - values[..., 3]
    )
    out[..., -1] = (
        2.0 * values[..., -1]
        - 5.0 * values[..., -2]
        + 4.0 * values[..., -3]
        - values[..., -4]
    )
    return out / (h * h)


def ma_density(phi: InvariantPotential) -> np.ndarray:
    """Transverse Monge-Ampere density rho_i = f0''(s_i) + (D^2 phi)_i.

    Parameters
    ----------
    phi : InvariantPotential

    Returns
    -------
    ndarray
        Strictly positive density at every node.

    Raises
    ------
    PositivityViolation
        If rho_i <= 0 anywhere; carries the first offending index.
    """
    rho = f0_second(phi.grid.nodes) + second_differences(phi.values, phi.grid.h)
    if np.any(rho <= 0.0):
        i = int(np.argmin(rho))
        raise PositivityViolation(i, float(rho[i]))
    return rho


def _trapz(values: np.ndarray, h: float) -> float:
    v = np.asarray(values, dtype=float)
    return float(h * (np.sum(v) - 0.5 * (v[0] + v[-1])))


def total_mass(phi: InvariantPotential) -> float:
    """Total transverse mass 2*pi * Integral(rho), tails included.

    The window integral is a trapezoid sum of `ma_density`.  Outside the
    window the density is integrated analytically from the slope limits:
    the full potential's derivative tends to left_slope at -inf and to
    1 + right_slope at +inf, while at the window edge it is
    f0'(+-L) + (one-sided discrete slope of phi).  Those one-sided slopes
    telescope exactly against the trapezoid sum of the second
    differences, so potentials with affine tails are integrated exactly.

    For any smooth-class member the result is 2*pi up to roughly
    e^{-L} + O(h^2) boundary terms; a left slope alpha removes 2*pi*alpha
    of mass.
    """
    g = phi.grid
    rho = ma_density(phi)
    window = _trapz(rho, g.h)
    v = phi.values
    dleft = (v[1] - v[0]) / g.h
    dright = (v[-1] - v[-2]) / g.h
    tail_right = (1.0 + phi.right_slope) - (f0_prime(g.L) + dright)
    tail_left = (f0_prime(-g.L) + dleft) - phi.left_slope
    return TWO_PI * (window + tail_right + tail_left)


def default_xgrid(K: int = 4097) -> np.ndarray:
    """K uniform moment-coordinate samples k/(K+1), k = 1..K, in (0,1)."""
    if K < 3:
        raise ValueError("need at least 3 moment nodes")
    return np.arange(1, K + 1, dtype=float) / (K + 1)


@dataclass(frozen=True)
class SymplecticPotential:
    """Legendre dual data: bounded remainder v = u - u0 on a moment grid.

    The full symplectic potential u(x) = u0(x) + v(x) is convex on (0,1);
    the unbounded background u0 is kept analytic and only the remainder
    is tabulated, on uniform interior nodes.
    """

    xgrid: np.ndarray
    remainder: np.ndarray

    def __post_init__(self):
        x = _readonly(self.xgrid)
        v = _readonly(self.remainder)
        if x.ndim != 1 or x.shape != v.shape:
            raise ValueError("moment grid and remainder must be equal-length 1-D")
        if x[0] <= 0.0 or x[-1] >= 1.0:
            raise ValueError("moment nodes must lie strictly inside (0,1)")
        d = np.diff(x)
        if np.any(d <= 0) or abs(d.max() - d.min()) > 1e-12 * d.mean():
            raise ValueError("moment nodes must be uniform and increasing")
        if not np.all(np.isfinite(v)):
            raise ValueError("remainder must be finite (it is bounded by design)")
        object.__setattr__(self, "xgrid", x)
        object.__setattr__(self, "remainder", v)

    def full_values(self) -> np.ndarray:
        return u0(self.xgrid) + self.remainder

    def check_convex(self):
        """Raise NonConvexInput unless u0 + v is discretely convex."""
        full = self.full_values()
        d2 = full[2:] - 2.0 * full[1:-1] + full[:-2]
        if np.any(d2 < 0.0):
            k = int(np.argmin(d2)) + 1
            raise NonConvexInput(
                "u0 + v has negative second difference at moment node %d" % k
            )


def _remainder_spline(u: SymplecticPotential) -> CubicSpline:
    return CubicSpline(u.xgrid, u.remainder, bc_type="natural")


def _extended_eval(spline, lo, hi, x, order):
    """Evaluate a spline with linear extension beyond [lo, hi].

    order 0 extends the value linearly, order 1 holds the end derivative,
    order 2 returns zero outside.  The remainder is bounded with bounded
    slope, so this is the right closure for moment values that fall off
    the tabulated range.
    """
    xc = np.clip(x, lo, hi)
    out = spline(xc, order) if order else spline(xc)
    below = x < lo
    above = x > hi
    if order == 0:
        if np.any(below):
            out = np.where(below, spline(lo) + spline(lo, 1) * (x - lo), out)
        if np.any(above):
            out = np.where(above, spline(hi) + spline(hi, 1) * (x - hi), out)
    elif order == 1:
        out = np.where(below, spline(lo, 1), out)
        out = np.where(above, spline(hi, 1), out)
    else:
        out = np.where(below | above, 0.0, out)
    return out


def legendre(phi: InvariantPotential, xgrid=None) -> SymplecticPotential:
    """Legendre transform u(x) = sup_s [x s - (f0 + phi)(s)], as a remainder.

    The supremum over the grid is located by bisection on the chord
    slopes of f = f0 + phi (discrete convexity makes x s_i - f_i
    unimodal, so this is the grid scan's argmax) and then polished by a
    few Newton steps on x = f'(s) using a cubic spline of f, confined
    to the bracketing neighbourhood.

    Parameters
    ----------
    phi : InvariantPotential
        Smooth-class member (both slopes zero) with positive density.
    xgrid : ndarray or int, optional
        Moment nodes, or a node count for `default_xgrid`.

    Returns
    -------
    SymplecticPotential

    Raises
    ------
    NonConvexInput
        If the discrete density of phi is not positive.

    Warns
    -----
    TruncationWarning
        If the supremum lands on s = -L or s = +L for some moment node.
    """
    if not phi.is_smooth_class:
        raise ValueError("legendre needs zero slope limits; got (%g, %g)"
                         % (phi.left_slope, phi.right_slope))
    try:
        ma_density(phi)
    except PositivityViolation as exc:
        raise NonConvexInput(
            "full potential is not convex: " + str(exc)
        ) from exc
    if xgrid is None:
        xgrid = default_xgrid()
    elif np.isscalar(xgrid):
        xgrid = default_xgrid(int(xgrid))
    else:
        xgrid = np.asarray(xgrid, dtype=float)

    g = phi.grid
    s = g.nodes
    fvals = f0(s) + phi.values
    chords = np.diff(fvals) / g.h
    j = np.searchsorted(chords, xgrid)
    if j[0] == 0 or j[-1] == len(fvals) - 1:
        warnings.warn(
            "Legendre supremum clipped by the window [-%g, %g]; increase L"
            % (g.L, g.L),
            TruncationWarning,
            stacklevel=2,
        )
    spline = CubicSpline(s, fvals)
    s_best = s[j].astype(float)
    # Newton on spline'(s) = x; the start is within one spacing of the
    # optimum, and the iterates stay confined to that neighbourhood
    s_ref = s_best
    lo = np.clip(s_best - 2.0 * g.h, -g.L, g.L)
    hi = np.clip(s_best + 2.0 * g.h, -g.L, g.L)
    for _ in range(5):
        d1 = spline(s_ref, 1)
        d2 = np.maximum(spline(s_ref, 2), 1e-14)
        s_ref = np.clip(s_ref - (d1 - xgrid) / d2, lo, hi)
    u = xgrid * s_ref - spline(s_ref)
    return SymplecticPotential(xgrid, u - u0(xgrid))


def inverse_legendre(u: SymplecticPotential, grid: SGrid) -> InvariantPotential:
    """Inverse transform phi(s) = sup_x [x s - u(x)] - f0(s) on a grid.

    The supremum is interior for every s because u0' blows up at both
    endpoints.  Its argmax over the tabulated nodes is found by bisection
    on the chord slopes of u0 + v, then polished with two Newton steps on
    u'(x) = s in the logit coordinate y = log(x/(1-x)), where the
    background part of the equation is the identity map and the iteration
    is unconditionally tame.

    Raises
    ------
    NonConvexInput
        If u0 + v has a negative discrete second difference.
    """
    u.check_convex()
    x = u.xgrid
    full = u.full_values()
    chords = np.diff(full) / np.diff(x)
    s = grid.nodes
    k = np.searchsorted(chords, s)
    spline = _remainder_spline(u)
    lo, hi = x[0], x[-1]

    y = np.log(x[k]) - np.log1p(-x[k])
    for _ in range(2):
        xx = expit(y)
        up = y + _extended_eval(spline, lo, hi, xx, 1)
        w = xx * (1.0 - xx)
        dq = 1.0 + _extended_eval(spline, lo, hi, xx, 2) * w
        dq = np.where(dq > 0.1, dq, 1.0)
        y = y - (up - s) / dq
    xstar = expit(y)
    uval = u0(xstar) + _extended_eval(spline, lo, hi, xstar, 0)
    phi = xstar * s - uval - f0(s)
    return InvariantPotential(grid, phi)
