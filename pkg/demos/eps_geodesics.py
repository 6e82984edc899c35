"""Epsilon-regularized geodesics by damped Newton continuation.

The degenerate boundary-value problem F_tt F_ss - F_ts^2 = 0 joining two
members is regularized to = eps * f0''(s) and solved on a decreasing eps
schedule, warm-starting each stage from the previous one.  The solutions
increase pointwise toward the degenerate limit, and the limit is checked
here against the independent moment-picture route, which transports the
problem to straight lines in the dual variables.
"""

import time

import numpy as np

import hopflab as H


def main():
    g = H.SGrid(L=15.0, N=257)
    zero = H.InvariantPotential(grid=g, values=np.zeros(g.N))
    phi1 = H.conformal_potential(g, 1.0)

    config = H.SolverConfig(grid=g, tcount=65)
    print("continuation schedule:", config.eps_schedule)

    t0 = time.perf_counter()
    sols = H.solve_eps_geodesic(zero, phi1, config)
    print("solved %d stages in %.2f s" % (len(sols), time.perf_counter() - t0))

    flat = H.oracle_path(zero, phi1, tcount=65)
    print("%10s %12s %8s %12s %s" % ("eps", "residual", "newton", "gap", "increasing"))
    for sol in sols:
        gap = float(np.max(np.abs(sol.path.values - flat.values)))
        print("%10.0e %12.3e %8d %12.3e %s"
              % (sol.eps, sol.residual, sol.newton_iters, gap,
                 sol.monotone_flag))

    # With constant endpoints the solution is the explicit parabola
    # phi(t) = eps * t (t - 1) / 2, independent of s:
    eps = 1e-2
    c = H.InvariantPotential(grid=g, values=0.8 * np.ones(g.N))
    sol = H.solve_eps_geodesic(c, c, H.SolverConfig(
        grid=g, tcount=17, eps_schedule=(eps,)))[0]
    t = sol.path.times
    exact = 0.8 + eps * t * (t - 1.0) / 2.0
    err = np.max(np.abs(sol.path.values - exact[:, None]))
    print("constant endpoints vs parabola: sup error = %.3e" % err)


if __name__ == "__main__":
    main()
