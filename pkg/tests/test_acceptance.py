"""Acceptance gate: ten desk-scale criteria, one verdict line each.

Run with `pytest -v -s tests/test_acceptance.py` to see the lines; each
criterion is one test so the pytest report carries the same verdicts.
"""

import time

import numpy as np

import hopflab as H
from hopflab.mabuchi import path_speeds, time_derivative


SQRT_8PI3 = np.sqrt(8.0 * np.pi / 3.0)
TWO_PI = 2.0 * np.pi


def _verdict(num, ok, detail):
    print("criterion %02d %s: %s" % (num, "PASS" if ok else "FAIL", detail))
    assert ok, detail


def test_criterion_01_conformal_distance_both_methods(
        zero, conformal1, solver_grid, solver_endpoints):
    t0 = time.perf_counter()
    oracle = H.distance(zero, conformal1, method="oracle")
    t_oracle = time.perf_counter() - t0
    z, p1 = solver_endpoints
    t0 = time.perf_counter()
    limit = H.distance(z, p1, method="eps_limit",
                       config=H.SolverConfig(grid=solver_grid, tcount=65))
    t_limit = time.perf_counter() - t0
    rel_o = abs(oracle.value - SQRT_8PI3) / SQRT_8PI3
    rel_l = abs(limit.value - SQRT_8PI3) / SQRT_8PI3
    ok = rel_o <= 1e-3 and rel_l <= 1e-3 and t_oracle < 0.1 and t_limit < 60.0
    _verdict(1, ok,
             "conformal distance: oracle rel err %.2e in %.3fs, "
             "eps-limit rel err %.2e in %.1fs (tol 1e-3, 0.1s/60s)"
             % (rel_o, t_oracle, rel_l, t_limit))


def test_criterion_02_lift_distance_and_volume(grid, zero, conformal1):
    lifted = H.sasaki_distance(H.oracle_distance(zero, conformal1))
    target = 4.0 * np.pi / np.sqrt(3.0)
    rel_d = abs(lifted - target) / target
    worst = 0.0
    for seed in range(20):
        rng = np.random.default_rng([202, seed])
        vol = H.contact_volume(H.random_potential(rng, grid))
        worst = max(worst, abs(vol - 4.0 * np.pi ** 2) / (4.0 * np.pi ** 2))
    ok = rel_d <= 1e-3 and worst <= 1e-5
    _verdict(2, ok,
             "lift: distance rel err %.2e (tol 1e-3), worst volume rel err "
             "%.2e over 20 members (tol 1e-5)" % (rel_d, worst))


def test_criterion_03_solver_gap_and_monotonicity(
        continuation, solver_endpoints):
    sols, _ = continuation
    z, p1 = solver_endpoints
    oracle = H.oracle_path(z, p1, tcount=65)
    gaps = [float(np.max(np.abs(s.path.values - oracle.values)))
            for s in sols]
    violation = max(
        max(0.0, float(np.max(a.path.values - b.path.values)))
        for a, b in zip(sols, sols[1:]))
    ok = (gaps[-1] <= 1e-2
          and all(b < a for a, b in zip(gaps, gaps[1:]))
          and violation <= 1e-8)
    _verdict(3, ok,
             "solver-vs-flat-route gap %s, final %.2e (tol 1e-2), "
             "worst ordering violation %.1e (tol 1e-8)"
             % (["%.1e" % gv for gv in gaps], gaps[-1], violation))


def test_criterion_04_residual_refinement_order():
    residuals = []
    for nt, ns in ((17, 65), (33, 129), (65, 257), (129, 513)):
        g = H.SGrid(L=15.0, N=ns)
        z = H.InvariantPotential(grid=g, values=np.zeros(ns))
        p1 = H.conformal_potential(g, 1.0)
        residuals.append(H.geodesic_residual(H.oracle_path(z, p1, tcount=nt),
                                             0.0))
    ratios = [a / b for a, b in zip(residuals, residuals[1:])]
    ok = all(3.2 <= r <= 4.8 for r in ratios)
    _verdict(4, ok,
             "defect refinement ratios %s over three halvings "
             "(window 4 +- 20%%)" % (["%.3f" % r for r in ratios]))


def test_criterion_05_speed_constancy(continuation, solver_endpoints,
                                      solver_grid):
    z, p1 = solver_endpoints
    dt = 1.0 / 64
    oracle = H.oracle_path(z, p1, tcount=65)
    e = path_speeds(oracle)
    drift_o = float(np.max(np.abs(e - e[0])))
    bound_o = 5.0 * (solver_grid.h ** 2 + dt * dt) * e[0]
    checks = [("flat-route path", drift_o, bound_o)]
    sols, _ = continuation
    for sol in sols:
        es = path_speeds(sol.path)
        drift = float(np.max(np.abs(es - es[0])))
        phidot = time_derivative(sol.path.values, sol.path.dt)
        bound = (2.0 * sol.eps * float(np.max(np.abs(phidot))) * TWO_PI
                 + 5.0 * dt * dt * es[0])
        checks.append(("eps=%g" % sol.eps, drift, bound))
    ok = all(drift <= bound for _, drift, bound in checks)
    _verdict(5, ok,
             "speed drift within bounds: "
             + ", ".join("%s %.1e<=%.1e" % c for c in checks))


def test_criterion_06_comparison_inequality_random_triples(grid):
    t0 = time.perf_counter()
    worst_low = np.inf
    worst_abs = 0.0
    for trial in range(100):
        rng = np.random.default_rng([606, trial])
        p = H.random_potential(rng, grid)
        q = H.random_potential(rng, grid)
        r = H.random_potential(rng, grid)
        for lam in (0.25, 0.5, 0.75):
            rep = H.cat0_check(p, q, r, lam)
            scaled = rep.slack / rep.d_qr ** 2
            worst_low = min(worst_low, scaled)
            worst_abs = max(worst_abs, abs(scaled))
    elapsed = time.perf_counter() - t0
    ok = worst_low >= -1e-3 and worst_abs <= 1e-2 and elapsed < 30.0
    _verdict(6, ok,
             "comparison audit over 300 checks: min scaled slack %.1e "
             "(tol -1e-3), max |scaled slack| %.1e (tol 1e-2), %.1fs (<30s)"
             % (worst_low, worst_abs, elapsed))


def test_criterion_07_metric_axioms(grid):
    worst_geo = 0.0
    worst_tri = 0.0
    symmetric = True
    for trial in range(50):
        rng = np.random.default_rng([707, trial])
        p = H.random_potential(rng, grid)
        q = H.random_potential(rng, grid)
        r = H.random_potential(rng, grid)
        d_pq = H.oracle_distance(p, q)
        d_qr = H.oracle_distance(q, r)
        d_pr = H.oracle_distance(p, r)
        symmetric = symmetric and (d_pq == H.oracle_distance(q, p))
        worst_tri = max(worst_tri, d_pr - d_pq - d_qr)
        lam = float(rng.uniform(0.1, 0.9))
        a = H.oracle_geodesic(q, r, lam)
        worst_geo = max(worst_geo,
                        abs(H.oracle_distance(q, a) - lam * d_qr) / d_qr)
    ok = symmetric and worst_tri <= 1e-10 and worst_geo <= 1e-6
    _verdict(7, ok,
             "metric axioms over 50 triples: symmetry exact %s, max "
             "triangle excess %.1e (tol 1e-10), geodesy rel err %.1e "
             "(tol 1e-6)" % (symmetric, worst_tri, worst_geo))


def test_criterion_08_transform_round_trips(grid, zero):
    back = H.inverse_legendre(H.legendre(zero), grid)
    bg_err = float(np.max(np.abs(back.values)))
    worst = 0.0
    for seed in range(20):
        rng = np.random.default_rng([808, seed])
        phi = H.random_potential(rng, grid)
        again = H.inverse_legendre(H.legendre(phi), grid)
        worst = max(worst, float(np.max(np.abs(again.values - phi.values))))
    ok = bg_err <= 1e-8 and worst <= 1e-6
    _verdict(8, ok,
             "round trips: background sup %.1e (tol 1e-8), worst of 20 "
             "random members %.1e (tol 1e-6)" % (bg_err, worst))


def test_criterion_09_energy_classes(grid, zero, conformal1):
    samples = [zero, conformal1, H.unbounded_full_mass_model(grid)]
    for seed in range(10):
        rng = np.random.default_rng([909, seed])
        samples.append(H.random_potential(rng, grid))
    full_ok = all(H.full_mass_test(phi).full for phi in samples)
    worst_def = max(abs(H.full_mass_test(phi).deficit) for phi in samples)
    worst_alpha = 0.0
    for alpha in (0.1, 0.3, 0.5):
        deficit = H.full_mass_test(H.slope_model(grid, alpha)).deficit
        worst_alpha = max(worst_alpha, abs(deficit - TWO_PI * alpha))
    ok = full_ok and worst_alpha <= 1e-4
    _verdict(9, ok,
             "mass classes: %d full-mass members (worst deficit %.1e, tol "
             "1e-6*2pi), slope-family deficit err %.1e (tol 1e-4)"
             % (len(samples), worst_def, worst_alpha))


def test_criterion_10_extension_by_decreasing_limits(grid, zero, conformal1):
    c = 0.7
    drops = [2.0 ** -k for k in range(1, 9)]
    seq0 = [conformal1.shifted(a) for a in drops]
    seq1 = [conformal1.shifted(c + a) for a in drops]
    shift_rep = H.tilde_distance(seq0, seq1)
    shift_err = abs(shift_rep.value - c * np.sqrt(TWO_PI))

    w = 1.0 + 0.1 * H.f0(grid.nodes)
    a_drops = [2.0 ** -k for k in range(1, 21)]
    repA = H.tilde_distance([zero.shifted(a) for a in a_drops],
                            [conformal1.shifted(a) for a in a_drops])
    repB = H.tilde_distance(
        [H.InvariantPotential(grid=grid, values=zero.values + a * w)
         for a in a_drops],
        [H.InvariantPotential(grid=grid, values=conformal1.values + a * w)
         for a in a_drops])
    agree = abs(repA.value - repB.value)
    traces_ok = all(
        all(b <= a + 1e-12 for a, b in zip(rep.trace, rep.trace[1:]))
        for rep in (shift_rep, repA, repB))
    ok = (shift_err <= 1e-6 and agree <= 1e-3 and traces_ok
          and shift_rep.converged and repA.converged and repB.converged)
    _verdict(10, ok,
             "extension: shift value err %.1e (tol 1e-6), two decreasing "
             "routes differ %.1e (tol 1e-3), Cauchy traces decreasing %s"
             % (shift_err, agree, traces_ok))
