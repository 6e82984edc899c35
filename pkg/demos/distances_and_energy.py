"""Path-length distance, two ways, plus the energy functional.

The distance between two members is the length of the joining geodesic
in the L^2-type path metric.  The moment-picture route evaluates it from
the affine dual segment; the eps-limit route integrates nodal speeds of
the regularized solver paths.  The conformal pair calibrates both
against the closed form sqrt(8 pi / 3).
"""

import numpy as np

import hopflab as H


def main():
    g = H.SGrid()
    zero = H.InvariantPotential(grid=g, values=np.zeros(g.N))
    phi1 = H.conformal_potential(g, 1.0)
    target = np.sqrt(8.0 * np.pi / 3.0)

    rep = H.distance(zero, phi1)  # moment-picture route
    print("oracle distance   = %.12f" % rep.value)
    print("closed form       = %.12f" % target)
    print("relative error    = %.2e" % (abs(rep.value - target) / target))

    gs = H.SGrid(L=15.0, N=257)
    z = H.InvariantPotential(grid=gs, values=np.zeros(gs.N))
    p1 = H.conformal_potential(gs, 1.0)
    rep2 = H.distance(z, p1, method="eps_limit",
                      config=H.SolverConfig(grid=gs, tcount=65))
    print("eps-limit trace:")
    for eps, length in rep2.eps_trace:
        print("  eps = %7.0e  length = %.8f" % (eps, length))
    print("eps-limit value   = %.8f (rel err %.2e)"
          % (rep2.value, abs(rep2.value - target) / target))

    # Energy functional E along the family, with the closed form at t = 1:
    e1 = H.energy_E(phi1)
    exact = 2.0 * np.pi * (2.0 - 10.0 * np.exp(-2.0)) / (1.0 - np.exp(-2.0))
    print("E(phi_1) = %.8f  vs closed form %.8f (rel err %.2e)"
          % (e1, exact, abs(e1 - exact) / exact))

    # Distance extension to decreasing limits: a constant drop c is a
    # translation, and the extended distance is exactly c * sqrt(2 pi).
    c = 0.7
    drops = [2.0 ** -k for k in range(1, 9)]
    rep3 = H.tilde_distance([phi1.shifted(a) for a in drops],
                            [phi1.shifted(c + a) for a in drops])
    print("extended distance for constant drop %.1f: %.12f (c sqrt(2 pi) "
          "= %.12f)" % (c, rep3.value, c * np.sqrt(2.0 * np.pi)))
    print("Cauchy trace converged:", rep3.converged)


if __name__ == "__main__":
    main()
