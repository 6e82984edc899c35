"""Chart background, density, mass, and the Legendre transform pair."""

import numpy as np
import pytest

import hopflab as H
from hopflab.geometry import second_differences, u0


TWO_PI = 2.0 * np.pi


def test_background_identities():
    s = np.linspace(-30.0, 30.0, 1001)
    assert np.allclose(H.f0_prime(s), 1.0 / (1.0 + np.exp(-s)), atol=1e-15)
    assert np.allclose(H.f0_second(s), H.f0_prime(s) * (1.0 - H.f0_prime(s)),
                       atol=1e-15)
    # density peaks at the equator with value 1/4
    assert abs(H.f0_second(0.0) - 0.25) < 1e-15
    assert H.f0(0.0) == pytest.approx(np.log(2.0), abs=1e-15)


def test_u0_endpoint_values():
    # x log x + (1-x) log(1-x) extends by 0 at both endpoints
    assert u0(np.array([0.0]))[0] == 0.0
    assert u0(np.array([1.0]))[0] == 0.0
    assert u0(np.array([0.5]))[0] == pytest.approx(-np.log(2.0), abs=1e-15)


def test_grid_basics():
    g = H.SGrid(L=2.0, N=5)
    assert g.h == 1.0
    assert np.allclose(g.nodes, [-2.0, -1.0, 0.0, 1.0, 2.0])
    with pytest.raises(ValueError):
        H.SGrid(L=-1.0, N=5)
    with pytest.raises(ValueError):
        H.SGrid(L=1.0, N=2)
    with pytest.raises(H.GridMismatch):
        g.require_same(H.SGrid(L=2.0, N=7))


def test_second_differences_exact_on_quadratics():
    g = H.SGrid(L=3.0, N=31)
    q = 0.5 * g.nodes ** 2 - 2.0 * g.nodes + 1.0
    d2 = second_differences(q, g.h)
    assert np.max(np.abs(d2 - 1.0)) < 1e-11


def test_ma_density_background(grid, zero):
    rho = H.ma_density(zero)
    assert np.allclose(rho, H.f0_second(grid.nodes), atol=1e-12)


def test_ma_density_rejects_nonconvex(grid):
    # a violent concave bump drives the density negative
    bump = -10.0 * np.exp(-grid.nodes ** 2)
    phi = H.InvariantPotential(grid=grid, values=bump)
    with pytest.raises(H.PositivityViolation) as info:
        H.ma_density(phi)
    assert info.value.value < 0.0


def test_total_mass_background(zero):
    assert H.total_mass(zero) == pytest.approx(TWO_PI, rel=1e-9)


def test_total_mass_shift_invariant(grid, conformal1):
    shifted = conformal1.shifted(3.7)
    assert H.total_mass(shifted) == pytest.approx(H.total_mass(conformal1),
                                                  rel=1e-14)


def test_total_mass_conformal(conformal1):
    # the conformal push preserves the full mass
    assert H.total_mass(conformal1) == pytest.approx(TWO_PI, rel=1e-7)


def test_legendre_background_remainder(grid, zero):
    u = H.legendre(zero)
    assert np.max(np.abs(u.remainder)) < 1e-9


def test_legendre_conformal_affine(grid):
    # the conformal family has remainder exactly -2 t x
    for t in (0.3, 1.0):
        phi = H.conformal_potential(grid, t)
        u = H.legendre(phi)
        target = H.conformal_remainder(u.xgrid, t)
        assert np.max(np.abs(u.remainder - target.remainder)) < 1e-8


def test_legendre_rejects_sloped_input(grid):
    m = H.slope_model(grid, 0.3)
    with pytest.raises(ValueError):
        H.legendre(m)


def test_legendre_warns_on_tight_window():
    g = H.SGrid(L=4.0, N=257)
    phi = H.InvariantPotential(grid=g, values=np.zeros(g.N))
    with pytest.warns(H.TruncationWarning):
        H.legendre(phi, xgrid=4097)


def test_round_trip_background(grid, zero):
    back = H.inverse_legendre(H.legendre(zero), grid)
    assert np.max(np.abs(back.values)) < 1e-8


def test_round_trip_random_members(grid):
    for seed in range(6):
        rng = np.random.default_rng(seed)
        phi = H.random_potential(rng, grid)
        back = H.inverse_legendre(H.legendre(phi), grid)
        assert np.max(np.abs(back.values - phi.values)) < 1e-6


def test_inverse_rejects_nonconvex(grid):
    x = H.default_xgrid(513)
    v = 2.0 * np.sin(np.pi * x)  # v'' = -2 pi^2 sin overwhelms u0'' near x = 1/2
    u = H.SymplecticPotential(x, v)
    with pytest.raises(H.NonConvexInput):
        H.inverse_legendre(u, grid)


def test_potential_immutability(grid, conformal1):
    with pytest.raises(ValueError):
        conformal1.values[0] = 1.0
    t = H.TangentField(grid, np.ones(grid.N))
    with pytest.raises(ValueError):
        t.values[0] = 2.0


def test_full_values_includes_background(grid, conformal1):
    fv = conformal1.full_values()
    assert np.allclose(fv, H.f0(grid.nodes) + conformal1.values, atol=1e-14)
