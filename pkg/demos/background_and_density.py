"""Background geometry on the log-modulus chart.

The circle-invariant round metric is carried by the full potential
f0(s) = log(1 + e^s) on the chart s = log|z|^2.  Everything downstream
(densities, masses, distances) is phrased relative to this background,
so this script checks its basic identities and then perturbs it.
"""

import numpy as np

import hopflab as H


def main():
    g = H.SGrid()  # window [-15, 15], 2049 nodes
    s = g.nodes
    print("grid: L = %g, N = %d, h = %.4e" % (g.L, g.N, g.h))

    # f0' is the moment coordinate x = e^s/(1+e^s) in (0,1); f0'' <= 1/4.
    print("f0'(0) = %.12f  (exactly 1/2)" % H.f0_prime(0.0))
    print("max f0'' = %.12f  (exactly 1/4 at s = 0)"
          % np.max(H.f0_second(s)))

    # The background member phi = 0 has density rho = f0'' and full mass:
    zero = H.InvariantPotential(grid=g, values=np.zeros(g.N))
    print("background mass / 2 pi = %.12f" % (H.total_mass(zero) / (2 * np.pi)))

    # A smooth perturbation keeps the mass (it only moves density around):
    phi = H.InvariantPotential(grid=g, values=0.3 * np.cos(s) * H.f0_second(s))
    rho = H.ma_density(phi)
    print("perturbed member: min rho = %.3e (must stay positive)" % rho.min())
    print("perturbed mass / 2 pi = %.12f" % (H.total_mass(phi) / (2 * np.pi)))

    # Nonpositive density is rejected, with the offending node reported:
    bad = H.InvariantPotential(grid=g, values=-2.0 * H.f0(s))
    try:
        H.ma_density(bad)
    except H.PositivityViolation as exc:
        print("rejected nonpositive density at node %d (value %.3e)"
              % (exc.index, exc.value))

    # A slope at -infinity removes mass in proportion to the slope:
    for alpha in (0.1, 0.3, 0.5):
        rep = H.full_mass_test(H.slope_model(g, alpha))
        print("slope %.1f: deficit / 2 pi = %.6f, full mass: %s"
              % (alpha, rep.deficit / (2 * np.pi), rep.full))

    # ... while an unbounded member can still carry full mass:
    rep = H.full_mass_test(H.unbounded_full_mass_model(g))
    print("unbounded model: deficit = %.3e, full mass: %s"
          % (rep.deficit, rep.full))


if __name__ == "__main__":
    main()
