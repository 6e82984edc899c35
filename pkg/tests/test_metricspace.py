"""Distances, energy, mass classes, the extension, and comparison audits."""

import numpy as np
import pytest

import hopflab as H


TWO_PI = 2.0 * np.pi
SQRT_8PI3 = np.sqrt(8.0 * np.pi / 3.0)


def test_distance_oracle_report(zero, conformal1):
    rep = H.distance(zero, conformal1)
    assert rep.method == "oracle"
    assert rep.eps_trace == ()
    assert rep.value == pytest.approx(SQRT_8PI3, rel=1e-6)
    assert rep.as_dict()["grid"]["N"] == zero.grid.N


def test_distance_eps_limit_report(solver_grid, solver_endpoints):
    z, p1 = solver_endpoints
    cfg = H.SolverConfig(grid=solver_grid, tcount=17,
                         eps_schedule=(1.0, 1e-1, 1e-2))
    rep = H.distance(z, p1, method="eps_limit", config=cfg)
    assert rep.method == "eps_limit"
    assert len(rep.eps_trace) == 3
    assert rep.value == rep.eps_trace[-1][1]
    # lengths approach the flat value from above as eps falls
    lengths = [l for _, l in rep.eps_trace]
    assert lengths[0] >= lengths[-1]
    assert rep.value == pytest.approx(SQRT_8PI3, rel=1e-2)


def test_distance_unknown_method(zero, conformal1):
    with pytest.raises(ValueError):
        H.distance(zero, conformal1, method="guess")


def test_energy_zero_and_closed_form(grid, zero, conformal1):
    assert H.energy_E(zero) == 0.0
    # in moment coordinates E(phi_1) = 2*pi Integral over the moment
    # interval of (log((1-x(1-e^-2))/e^-2))^2 dx = 2*pi (2 - 10 e^-2)/(1 - e^-2)
    target = TWO_PI * (2.0 - 10.0 * np.exp(-2.0)) / (1.0 - np.exp(-2.0))
    assert H.energy_E(conformal1) == pytest.approx(target, rel=1e-4)


def test_full_mass_smooth_members(grid, zero, conformal1):
    for phi in (zero, conformal1):
        rep = H.full_mass_test(phi)
        assert rep.full
        assert abs(rep.deficit) <= 1e-6 * TWO_PI


def test_full_mass_unbounded_member(grid):
    # unbounded below yet full mass: membership is a slope condition
    phi = H.unbounded_full_mass_model(grid)
    rep = H.full_mass_test(phi)
    assert rep.full
    assert np.isfinite(H.energy_E(phi))


def test_slope_family_deficit(grid):
    for alpha in (0.1, 0.3, 0.5):
        rep = H.full_mass_test(H.slope_model(grid, alpha))
        assert not rep.full
        assert rep.deficit == pytest.approx(TWO_PI * alpha, abs=1e-4)


def test_tilde_distance_constant_shift(grid, conformal1):
    c = 0.7
    drops = [2.0 ** -k for k in range(1, 9)]
    seq0 = [conformal1.shifted(a) for a in drops]
    seq1 = [conformal1.shifted(c + a) for a in drops]
    rep = H.tilde_distance(seq0, seq1)
    assert rep.converged
    assert rep.value == pytest.approx(c * np.sqrt(TWO_PI), abs=1e-6)


def test_tilde_distance_requires_decreasing(grid, zero, conformal1):
    seq_bad = [zero, zero.shifted(0.1)]
    seq_ok = [conformal1.shifted(0.2), conformal1]
    with pytest.raises(H.NotDecreasing) as info:
        H.tilde_distance(seq_bad, seq_ok)
    assert info.value.k == 0


def test_tilde_distance_two_routes_agree(grid, zero, conformal1):
    w = 1.0 + 0.1 * H.f0(grid.nodes)
    a_drops = [2.0 ** -k for k in range(1, 21)]
    seqA0 = [zero.shifted(a) for a in a_drops]
    seqA1 = [conformal1.shifted(a) for a in a_drops]
    seqB0 = [H.InvariantPotential(grid=grid, values=zero.values + a * w)
             for a in a_drops]
    seqB1 = [H.InvariantPotential(grid=grid, values=conformal1.values + a * w)
             for a in a_drops]
    repA = H.tilde_distance(seqA0, seqA1)
    repB = H.tilde_distance(seqB0, seqB1)
    assert abs(repA.value - repB.value) < 1e-3
    assert repA.converged and repB.converged
    # Cauchy trace of the shaped route decays monotonically
    tb = repB.trace
    assert all(b <= a + 1e-12 for a, b in zip(tb, tb[1:]))


def test_cat0_report_fields(grid):
    rng = np.random.default_rng(100)
    p = H.random_potential(rng, grid)
    q = H.random_potential(rng, grid)
    r = H.random_potential(rng, grid)
    rep = H.cat0_check(p, q, r, 0.5)
    assert rep.passes
    assert abs(rep.slack) <= 1e-2 * rep.d_qr ** 2
    assert rep.lam_actual == pytest.approx(0.5, abs=1e-6)
    d = rep.as_dict()
    assert set(d) >= {"slack", "d_pq", "d_pr", "d_qr", "d_pa", "tol", "passes"}


def test_cat0_endpoint_lambdas_exact(grid):
    rng = np.random.default_rng(101)
    p, q = H.random_pair(rng, grid)
    r = H.random_potential(rng, grid)
    assert H.cat0_check(p, q, r, 0.0).slack == 0.0
    assert H.cat0_check(p, q, r, 1.0).slack == 0.0


def test_cat0_rejects_bad_lambda_and_degenerate(grid, zero, conformal1):
    with pytest.raises(ValueError):
        H.cat0_check(zero, conformal1, zero, -0.1)
    with pytest.raises(H.DegenerateTriangle):
        H.cat0_check(conformal1, zero, zero, 0.5)
