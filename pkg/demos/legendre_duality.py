"""Legendre duality between the chart and moment pictures.

Every member f = f0 + phi with positive density has a convex conjugate
u(x) = sup_s (x s - f(s)) on the moment interval (0,1).  The package
tabulates only the bounded remainder v = u - u0 against the background
conjugate u0(x) = x log x + (1-x) log(1-x), and the two transforms are
exact inverses of each other up to quadrature noise.
"""

import numpy as np

import hopflab as H


def main():
    g = H.SGrid()

    # Background round trip: phi = 0 must come back as 0.
    zero = H.InvariantPotential(grid=g, values=np.zeros(g.N))
    dual = H.legendre(zero)
    print("background dual remainder sup = %.3e (0 in exact arithmetic)"
          % np.max(np.abs(dual.remainder)))
    back = H.inverse_legendre(dual, g)
    print("background round trip sup = %.3e" % np.max(np.abs(back.values)))

    # The conformal family has the closed-form dual remainder -2 t x:
    t = 0.7
    phi_t = H.conformal_potential(g, t)
    v = H.legendre(phi_t)
    exact = -2.0 * t * v.xgrid
    print("conformal t=%.1f dual error sup = %.3e  (v(x) = -2 t x)"
          % (t, np.max(np.abs(v.remainder - exact))))

    # Random smooth members round trip at quadrature level:
    worst = 0.0
    for seed in range(5):
        rng = np.random.default_rng(seed)
        phi = H.random_potential(rng, g)
        again = H.inverse_legendre(H.legendre(phi), g)
        worst = max(worst, float(np.max(np.abs(again.values - phi.values))))
    print("worst of 5 random round trips = %.3e" % worst)

    # Adding a constant to f subtracts it from u:
    c = 1.25
    v0 = H.legendre(phi_t)
    v1 = H.legendre(phi_t.shifted(c))
    print("shift transport error = %.3e  (u(f + c) = u(f) - c)"
          % np.max(np.abs((v0.remainder - c) - v1.remainder)))

    # A non-convex symplectic potential is rejected on the way back:
    x = H.default_xgrid(513)
    bad = H.SymplecticPotential(x, 2.0 * np.sin(np.pi * x))
    try:
        H.inverse_legendre(bad, g)
    except H.NonConvexInput as exc:
        print("rejected non-convex dual input: %s" % exc)


if __name__ == "__main__":
    main()
