"""Non-positive curvature audit on random geodesic triangles.

A geodesic metric space has non-positive curvature in the comparison
sense when, for p and a point a sitting a fraction lam along the
geodesic from q to r,

    d(p, a)^2 <= (1-lam) d(p, q)^2 + lam d(p, r)^2 - lam (1-lam) d(q, r)^2.

The script samples random triangles, evaluates the slack of this
inequality at several lam, and checks the plain metric axioms along the
way.  Slacks should be nonnegative up to quadrature noise.
"""

import numpy as np

import hopflab as H


def main():
    g = H.SGrid()
    rng = np.random.default_rng(7)

    print("%6s %6s %14s %14s" % ("trial", "lam", "slack", "slack/d_qr^2"))
    worst = np.inf
    for trial in range(8):
        p = H.random_potential(rng, g)
        q = H.random_potential(rng, g)
        r = H.random_potential(rng, g)
        for lam in (0.25, 0.5, 0.75):
            rep = H.cat0_check(p, q, r, lam)
            scaled = rep.slack / rep.d_qr ** 2
            worst = min(worst, scaled)
            print("%6d %6.2f %14.3e %14.3e"
                  % (trial, lam, rep.slack, scaled))
    print("worst scaled slack = %.3e (audit tolerance -1e-3)" % worst)

    # Metric axioms on one triple:
    p = H.random_potential(rng, g)
    q = H.random_potential(rng, g)
    r = H.random_potential(rng, g)
    d_pq = H.oracle_distance(p, q)
    print("symmetry: d(p,q) - d(q,p) = %.1e" % (d_pq - H.oracle_distance(q, p)))
    print("identity: d(p,p) = %.1e" % H.oracle_distance(p, p))
    print("triangle excess: %.3e (nonpositive up to noise)"
          % (H.oracle_distance(p, r) - d_pq - H.oracle_distance(q, r)))

    # Geodesy of the interpolating point: d(q, a) = lam * d(q, r).
    lam = 0.3
    a = H.oracle_geodesic(q, r, lam)
    d_qr = H.oracle_distance(q, r)
    print("geodesy rel err at lam=%.1f: %.3e"
          % (lam, abs(H.oracle_distance(q, a) - lam * d_qr) / d_qr))


if __name__ == "__main__":
    main()
