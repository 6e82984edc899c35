"""Metric-space layer: distances, energies, and comparison geometry.

Two independent routes compute the geodesic distance: the Legendre
oracle's flat dual norm, and the epsilon-limit of path lengths of solver
output along the descending schedule.  `distance` dispatches between
them and reports the trace.

The energy functional E(phi) = 2*pi * Integral(phi^2 rho_phi ds) and the
mass-deficit test delimit the completion classes: full transverse mass
(deficit below 1e-6 of 2*pi) marks the finite-energy class, and the
extension d-tilde evaluates limits along pointwise-decreasing
approximating sequences, reporting a Cauchy trace.

`cat0_check` audits the comparison inequality

    d(p, a)^2 <= lam d(p,r)^2 + (1-lam) d(p,q)^2 - lam(1-lam) d(q,r)^2

with a the oracle geodesic point between q and r at parameter lam; the
reported slack is the right side minus the left.  On invariant data the
dual picture is flat, so the slack should vanish to quadrature accuracy:
the audit checks nonnegativity up to tolerance, not strict positivity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import DegenerateTriangle, NotDecreasing
from .geometry import InvariantPotential, ma_density, total_mass
from .mabuchi import path_length
from .oracle import oracle_distance, oracle_geodesic
from .solver import SolverConfig, solve_eps_geodesic

__all__ = [
    "DistanceReport",
    "distance",
    "energy_E",
    "MassReport",
    "full_mass_test",
    "TildeReport",
    "tilde_distance",
    "Cat0Report",
    "cat0_check",
]

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class DistanceReport:
    """Distance value plus the route that produced it.

    For the eps_limit method, eps_trace lists (eps, path length) down the
    schedule and value is the smallest-eps entry; the oracle method has
    an empty trace.
    """

    value: float
    method: str
    eps_trace: tuple
    L: float
    N: int
    tcount: int

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "method": self.method,
            "eps_trace": [[e, l] for (e, l) in self.eps_trace],
            "grid": {"L": self.L, "N": self.N, "tcount": self.tcount},
        }


def distance(phi0: InvariantPotential, phi1: InvariantPotential,
             method: str = "oracle", config: Optional[SolverConfig] = None,
             xcount: int = 4097) -> DistanceReport:
    """Geodesic distance between two smooth-class potentials.

    method "oracle" uses the flat dual norm; "eps_limit" solves the
    continuation problem (config defaults to 65 time slices on the
    potentials' grid) and reports the path length at every eps.
    """
    phi0.grid.require_same(phi1.grid)
    g = phi0.grid
    if method == "oracle":
        value = oracle_distance(phi0, phi1, xcount)
        return DistanceReport(value, "oracle", (), g.L, g.N, 0)
    if method == "eps_limit":
        cfg = config or SolverConfig(grid=g)
        solutions = solve_eps_geodesic(phi0, phi1, cfg)
        trace = tuple((sol.eps, path_length(sol.path)) for sol in solutions)
        return DistanceReport(trace[-1][1], "eps_limit", trace, g.L, g.N, cfg.tcount)
    raise ValueError("unknown distance method %r" % (method,))


def energy_E(phi: InvariantPotential) -> float:
    """Energy functional 2*pi * Integral(phi^2 rho_phi ds), by trapezoid."""
    rho = ma_density(phi)
    w = phi.values * phi.values * rho
    h = phi.grid.h
    return float(TWO_PI * h * (np.sum(w) - 0.5 * (w[0] + w[-1])))


class MassReport(NamedTuple):
    """Outcome of the full-mass membership test."""

    full: bool
    deficit: float


def full_mass_test(phi: InvariantPotential, tol: float = 1e-6) -> MassReport:
    """Check whether phi keeps the full transverse mass 2*pi.

    Returns the boolean verdict together with the deficit
    2*pi - total_mass(phi); the verdict is true when |deficit| <=
    tol * 2*pi.
    """
    deficit = TWO_PI - total_mass(phi)
    return MassReport(bool(abs(deficit) <= tol * TWO_PI), deficit)


class TildeReport(NamedTuple):
    """Limit distance along decreasing approximants, with its Cauchy trace."""

    value: float
    trace: tuple
    converged: bool


def tilde_distance(seq0: Sequence[InvariantPotential],
                   seq1: Sequence[InvariantPotential],
                   xcount: int = 4097,
                   cauchy_tol: float = 1e-6) -> TildeReport:
    """Extension of the distance to limits of decreasing sequences.

    Both sequences must decrease pointwise (members of the smooth class
    approximating the target from above).  The reported value is the
    distance at the deepest pair; the trace lists |d_k - d_{k+1}| and the
    convergence flag requires the trace to be nonincreasing and to end
    below cauchy_tol.

    Raises
    ------
    NotDecreasing
        With the pair index and node where monotonicity first fails.
    """
    if len(seq0) != len(seq1) or len(seq0) < 1:
        raise ValueError("need two equal-length non-empty sequences")
    for name, seq in (("first", seq0), ("second", seq1)):
        for k in range(len(seq) - 1):
            gap = seq[k + 1].values - seq[k].values
            bad = np.flatnonzero(gap > 1e-12)
            if bad.size:
                raise NotDecreasing(k, int(bad[0]))
    dists = [oracle_distance(a, b, xcount) for a, b in zip(seq0, seq1)]
    trace = tuple(abs(dists[k] - dists[k + 1]) for k in range(len(dists) - 1))
    if trace:
        nonincreasing = all(trace[k + 1] <= trace[k] + 1e-12 for k in range(len(trace) - 1))
        converged = nonincreasing and trace[-1] <= cauchy_tol
    else:
        converged = True
    return TildeReport(dists[-1], trace, converged)


@dataclass(frozen=True)
class Cat0Report:
    """Comparison-inequality audit for one triangle and one parameter."""

    p: str
    q: str
    r: str
    lam: float
    lam_actual: float
    d_pq: float
    d_pr: float
    d_qr: float
    d_qa: float
    d_pa: float
    slack: float
    tol: float
    passes: bool

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "r": self.r,
            "lam": self.lam,
            "lam_actual": self.lam_actual,
            "d_pq": self.d_pq,
            "d_pr": self.d_pr,
            "d_qr": self.d_qr,
            "d_qa": self.d_qa,
            "d_pa": self.d_pa,
            "slack": self.slack,
            "tol": self.tol,
            "passes": self.passes,
        }


def _dist_value(a, b, method, config, xcount):
    return distance(a, b, method=method, config=config, xcount=xcount).value


def cat0_check(p: InvariantPotential, q: InvariantPotential,
               r: InvariantPotential, lam: float,
               method: str = "oracle", config: Optional[SolverConfig] = None,
               xcount: int = 4097, tol: Optional[float] = None,
               labels=("p", "q", "r")) -> Cat0Report:
    """Audit the comparison inequality at one interior parameter.

    The comparison point a is always the oracle geodesic between q and r
    at parameter lam; distances follow the requested method.  The slack

        lam d_pr^2 + (1-lam) d_pq^2 - lam (1-lam) d_qr^2 - d_pa^2

    passes when it is at least -tol, with tol defaulting to
    1e-3 * d(q,r)^2.

    Raises
    ------
    DegenerateTriangle
        When d(q, r) is numerically zero.
    ValueError
        For lam outside [0, 1].
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError("comparison parameter must sit in [0,1], got %g" % lam)
    p.grid.require_same(q.grid)
    p.grid.require_same(r.grid)
    d_qr = _dist_value(q, r, method, config, xcount)
    if d_qr <= 1e-9:
        raise DegenerateTriangle("d(q,r) = %.3e is numerically zero" % d_qr)
    a = oracle_geodesic(q, r, lam, xcount)
    d_pq = _dist_value(p, q, method, config, xcount)
    d_pr = _dist_value(p, r, method, config, xcount)
    d_pa = _dist_value(p, a, method, config, xcount)
    d_qa = _dist_value(q, a, method, config, xcount)
    slack = (
        lam * d_pr ** 2
        + (1.0 - lam) * d_pq ** 2
        - lam * (1.0 - lam) * d_qr ** 2
        - d_pa ** 2
    )
    tol_val = 1e-3 * d_qr ** 2 if tol is None else float(tol)
    return Cat0Report(
        p=labels[0], q=labels[1], r=labels[2],
        lam=float(lam), lam_actual=float(d_qa / d_qr),
        d_pq=float(d_pq), d_pr=float(d_pr), d_qr=float(d_qr),
        d_qa=float(d_qa), d_pa=float(d_pa),
        slack=float(slack), tol=float(tol_val),
        passes=bool(slack >= -tol_val),
    )
