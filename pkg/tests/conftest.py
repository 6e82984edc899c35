"""Shared fixtures: grids, the conformal calibration pair, one solved
continuation run reused by the solver, lift, and acceptance tests."""

import time

import numpy as np
import pytest

import hopflab as H


@pytest.fixture(scope="session")
def grid():
    return H.SGrid()


@pytest.fixture(scope="session")
def zero(grid):
    return H.InvariantPotential(grid=grid, values=np.zeros(grid.N))


@pytest.fixture(scope="session")
def conformal1(grid):
    return H.conformal_potential(grid, 1.0)


@pytest.fixture(scope="session")
def solver_grid():
    # coarse enough for fast solves, fine enough for the gap tolerances
    return H.SGrid(L=15.0, N=257)


@pytest.fixture(scope="session")
def solver_endpoints(solver_grid):
    z = H.InvariantPotential(grid=solver_grid, values=np.zeros(solver_grid.N))
    return z, H.conformal_potential(solver_grid, 1.0)


@pytest.fixture(scope="session")
def continuation(solver_grid, solver_endpoints):
    """Full default-schedule solve on 65 x 257, with its wall time."""
    z, p1 = solver_endpoints
    cfg = H.SolverConfig(grid=solver_grid, tcount=65)
    t0 = time.perf_counter()
    sols = H.solve_eps_geodesic(z, p1, cfg)
    elapsed = time.perf_counter() - t0
    return sols, elapsed
