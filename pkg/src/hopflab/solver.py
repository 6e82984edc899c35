"""Damped-Newton continuation solver for epsilon-geodesics.

Writing F(t,s) = f0(s) + phi(t,s) for a path of invariant potentials, the
path energy is Integral over t of 2*pi*Integral(phidot^2 * F_ss ds), and
its stationarity condition complexifies in the time variable: for
circle-invariant data the (2,2) Monge-Ampere determinant of F on the
strip collapses to a 2x2 Hessian determinant in (t, s).  The
epsilon-regularized Dirichlet problem solved here is therefore

    F_tt * F_ss - F_ts^2 = eps * f0''(s)      on (0,1) x (-L, L),
    phi(0,.) = phi_0,  phi(1,.) = phi_1,      d_s phi = 0 at s = +-L,

with F_ss > 0 and F_tt > 0 enforced at every iterate.  (Re-derivation of
the reduction: with w = t + i*tau the complex Hessian of F(Re w, log|z|^2)
in (w, z) has entries F_tt/4, F_ts/(2 z-bar), F_ts/(2 z), F_ss/|z|^2, so
its determinant vanishes exactly when F_tt F_ss - F_ts^2 does; the
background measure f0'' ds is the reduced form of the reference volume,
which fixes the right-hand side's normalization.)

Discretization: second-order central differences in both variables, with
the homogeneous Neumann condition imposed by ghost-node mirroring at the
two s-edges (which also kills the mixed derivative there).  The defect is
quadratic in phi, so Newton converges quadratically once positivity
holds; a damped backtracking line search (never projection) keeps
F_ss > 0 on interior columns and F_tt > 0 everywhere and insists on
monotone residual decrease (at the two edge columns the defect equation
itself forces F_tt * F_ss = eps * f0'' > 0 at convergence, while
interpolated starting data may dip slightly negative there).  The
epsilon schedule is walked downward with warm starts; the first stage
starts from the affine interpolation convexified by -c * t(1-t) with
c = 2*max(0, -min D_tt(affine)) + eps, so the initial iterate is interior.

Solutions for a larger eps lie pointwise below those for a smaller eps
(more Monge-Ampere mass makes the potential dip lower at fixed boundary
data), and the whole family increases toward the weak geodesic as
eps -> 0; `monotone_flag` records that ordering against the next stage.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import spsolve

from .errors import (
    GridMismatch,
    NewtonDivergence,
    PositivityLoss,
    PositivityViolation,
)
from .geometry import InvariantPotential, SGrid, f0_second, ma_density, second_differences

__all__ = [
    "SpacetimePath",
    "SolverConfig",
    "GeodesicSolution",
    "geodesic_residual",
    "solve_eps_geodesic",
]

DEFAULT_EPS_SCHEDULE = (1.0, 1e-1, 1e-2, 1e-3, 1e-4)


@dataclass(frozen=True)
class SpacetimePath:
    """A discrete path of potentials: values[j, i] = phi(t_j, s_i).

    Time nodes are uniform, t_j = j/(tcount-1).  Every time slice must
    satisfy discrete transverse positivity; construction checks this.
    """

    grid: SGrid
    tcount: int
    values: np.ndarray

    def __post_init__(self):
        if self.tcount < 3:
            raise ValueError("a path needs at least 3 time slices")
        v = np.array(self.values, dtype=float)
        if v.shape != (self.tcount, self.grid.N):
            raise ValueError(
                "path values must have shape (%d, %d), got %s"
                % (self.tcount, self.grid.N, v.shape)
            )
        rho = f0_second(self.grid.nodes)[None, :] + second_differences(v, self.grid.h)
        if np.any(rho <= 0.0):
            j, i = np.unravel_index(int(np.argmin(rho)), rho.shape)
            raise PositivityViolation((int(j), int(i)), float(rho[j, i]))
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def dt(self) -> float:
        return 1.0 / (self.tcount - 1)

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.tcount)

    def slice(self, j: int) -> InvariantPotential:
        """Time slice j as a smooth-class potential."""
        return InvariantPotential(self.grid, self.values[j])


@dataclass(frozen=True)
class SolverConfig:
    """Continuation and Newton controls for `solve_eps_geodesic`."""

    grid: SGrid
    tcount: int = 65
    eps_schedule: tuple = DEFAULT_EPS_SCHEDULE
    newton_tol: float = 1e-10
    max_newton_iters: int = 50
    damping: float = 0.5

    def __post_init__(self):
        eps = tuple(float(e) for e in self.eps_schedule)
        if not eps or any(e <= 0.0 for e in eps):
            raise ValueError("eps schedule must be non-empty and positive")
        if any(b >= a for a, b in zip(eps, eps[1:])):
            raise ValueError("eps schedule must be strictly decreasing")
        if self.tcount < 3:
            raise ValueError("need at least 3 time slices")
        if not (self.newton_tol > 0.0):
            raise ValueError("newton_tol must be positive")
        if not (0.0 < self.damping < 1.0):
            raise ValueError("damping must sit in (0, 1)")
        if self.max_newton_iters < 1:
            raise ValueError("max_newton_iters must be at least 1")
        object.__setattr__(self, "eps_schedule", eps)


@dataclass(frozen=True)
class GeodesicSolution:
    """One continuation stage: the path, its eps, and convergence data."""

    path: SpacetimePath
    eps: float
    residual: float
    newton_iters: int
    monotone_flag: bool


def _defect(values, f2, dt, h, eps):
    """Nodal defect and its factors on the interior time slices.

    Returns (R, T, S, X) with shapes (tcount-2, N): T = F_tt, S = F_ss
    (ghost-mirrored at the s-edges), X = F_ts (zero at the s-edges), and
    R = T*S - X^2 - eps*f0''.
    """
    T = (values[2:] - 2.0 * values[1:-1] + values[:-2]) / (dt * dt)
    ext = np.empty((values.shape[0], values.shape[1] + 2))
    ext[:, 1:-1] = values
    ext[:, 0] = values[:, 1]
    ext[:, -1] = values[:, -2]
    mid = ext[1:-1]
    S = f2[None, :] + (mid[:, 2:] - 2.0 * values[1:-1] + mid[:, :-2]) / (h * h)
    X = (ext[2:, 2:] - ext[2:, :-2] - ext[:-2, 2:] + ext[:-2, :-2]) / (4.0 * dt * h)
    R = T * S - X * X - eps * f2[None, :]
    return R, T, S, X


def geodesic_residual(path: SpacetimePath, eps: float) -> float:
    """Max interior defect |F_tt F_ss - F_ts^2 - eps f0''| of a path.

    All second and mixed differences are central, so only nodes interior
    in both t and s are evaluated.
    """
    f2 = f0_second(path.grid.nodes)
    R, _, _, _ = _defect(path.values, f2, path.dt, path.grid.h, eps)
    return float(np.abs(R[:, 1:-1]).max())


def _assemble(T, S, X, dt, h, N):
    """Sparse Jacobian of the defect with respect to the interior slices."""
    m = T.shape[0]
    n = m * N
    inv_dt2 = 1.0 / (dt * dt)
    inv_h2 = 1.0 / (h * h)
    inv_x = 1.0 / (4.0 * dt * h)
    J = np.repeat(np.arange(m), N)
    I = np.tile(np.arange(N), m)
    base = np.arange(n)
    Tf, Sf, Xf = T.ravel(), S.ravel(), X.ravel()

    rows = [base]
    cols = [base]
    vals = [-2.0 * inv_dt2 * Sf - 2.0 * inv_h2 * Tf]

    up = J < m - 1
    rows.append(base[up])
    cols.append(base[up] + N)
    vals.append(inv_dt2 * Sf[up])
    dn = J > 0
    rows.append(base[dn])
    cols.append(base[dn] - N)
    vals.append(inv_dt2 * Sf[dn])

    # s-neighbors; the ghost mirror doubles the inward weight at the edges
    wplus = np.ones(N)
    wplus[0] = 2.0
    wminus = np.ones(N)
    wminus[-1] = 2.0
    right = I < N - 1
    rows.append(base[right])
    cols.append(base[right] + 1)
    vals.append(inv_h2 * Tf[right] * wplus[I[right]])
    left = I > 0
    rows.append(base[left])
    cols.append(base[left] - 1)
    vals.append(inv_h2 * Tf[left] * wminus[I[left]])

    # mixed term: corners of interior-in-s nodes only (X vanishes on the edges)
    core = (I >= 1) & (I <= N - 2)
    for joff, ioff, sign in ((1, 1, -1.0), (1, -1, 1.0), (-1, 1, 1.0), (-1, -1, -1.0)):
        ok = core & ((J < m - 1) if joff == 1 else (J > 0))
        rows.append(base[ok])
        cols.append(base[ok] + joff * N + ioff)
        vals.append(sign * 2.0 * inv_x * Xf[ok])

    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    vals = np.concatenate(vals)
    return sparse.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()


def _newton_stage(values, f2, dt, h, eps, cfg):
    """Run Newton at one eps from the given full (tcount, N) iterate."""
    R, T, S, X = _defect(values, f2, dt, h, eps)
    res = float(np.abs(R).max())
    iters = 0
    while res > cfg.newton_tol:
        if iters >= cfg.max_newton_iters:
            raise NewtonDivergence(eps, "residual %.3e after %d Newton iterations at eps=%g"
                                   % (res, iters, eps))
        N_cols = values.shape[1]
        delta = spsolve(_assemble(T, S, X, dt, h, N_cols), -R.ravel())
        delta = delta.reshape(R.shape)
        alpha = 1.0
        blocked_by_positivity = True
        while True:
            trial = values.copy()
            trial[1:-1] += alpha * delta
            R2, T2, S2, X2 = _defect(trial, f2, dt, h, eps)
            # ellipticity is enforced on interior-s columns; at the two
            # edge columns the mixed term vanishes and the defect
            # equation itself pins T*S = eps*f0'' > 0 at convergence,
            # while interpolated starting data may dip there
            if S2[:, 1:-1].min() > 0.0 and T2.min() > 0.0:
                blocked_by_positivity = False
                res2 = float(np.abs(R2).max())
                if res2 <= res * (1.0 - 1e-4 * alpha) or res2 <= cfg.newton_tol:
                    values, R, T, S, X, res = trial, R2, T2, S2, X2, res2
                    break
            alpha *= cfg.damping
            if alpha < 1e-12:
                if blocked_by_positivity:
                    raise PositivityLoss(eps)
                raise NewtonDivergence(
                    eps, "line search stalled at residual %.3e for eps=%g" % (res, eps)
                )
        iters += 1
    return values, res, iters


def solve_eps_geodesic(phi0: InvariantPotential, phi1: InvariantPotential,
                       config: SolverConfig) -> list:
    """Solve the Dirichlet problem along the descending eps schedule.

    Parameters
    ----------
    phi0, phi1 : InvariantPotential
        Smooth-class endpoints on config.grid with positive densities.
    config : SolverConfig

    Returns
    -------
    list of GeodesicSolution
        One entry per eps, in schedule order.  Each solution's residual
        is at most config.newton_tol over the solver's equation set, and
        each path keeps every slice positive with F_tt > 0 nodewise.

    Raises
    ------
    GridMismatch, PositivityViolation, NewtonDivergence, PositivityLoss
    """
    config.grid.require_same(phi0.grid)
    config.grid.require_same(phi1.grid)
    if not (phi0.is_smooth_class and phi1.is_smooth_class):
        raise ValueError("geodesic endpoints must have zero slope limits")
    ma_density(phi0)
    ma_density(phi1)

    g = config.grid
    M = config.tcount - 1
    dt = 1.0 / M
    t = np.linspace(0.0, 1.0, config.tcount)
    f2 = f0_second(g.nodes)

    affine = np.outer(1.0 - t, phi0.values) + np.outer(t, phi1.values)
    eps0 = config.eps_schedule[0]
    dtt_affine = (affine[2:] - 2.0 * affine[1:-1] + affine[:-2]) / (dt * dt)
    c = 2.0 * max(0.0, -float(dtt_affine.min())) + eps0
    values = affine - c * np.outer(t * (1.0 - t), np.ones(g.N))

    raw = []
    for eps in config.eps_schedule:
        values, res, iters = _newton_stage(values, f2, dt, g.h, eps, config)
        raw.append((values.copy(), eps, res, iters))

    solutions = []
    for k, (vals, eps, res, iters) in enumerate(raw):
        if k + 1 < len(raw):
            monotone = bool(np.all(vals <= raw[k + 1][0] + 1e-8))
        else:
            monotone = True
        solutions.append(
            GeodesicSolution(
                path=SpacetimePath(g, config.tcount, vals),
                eps=eps,
                residual=res,
                newton_iters=iters,
                monotone_flag=monotone,
            )
        )
    return solutions
