"""The L^2-type path metric: speeds, lengths, and the connection.

A path of members carries a squared speed <phidot, phidot> at every time
node, its length is the time integral of the root speed, and the
Levi-Civita connection of the metric acts on tangent fields psi as
nabla_{phidot} psi = psidot - (d_s psi)(d_s phidot) / rho.  Geodesics
are exactly the self-parallel paths, and differentiating the pairing
along any path commutes with the connection.
"""

import numpy as np

import hopflab as H
from hopflab.mabuchi import (covariant_derivative, inner_product,
                             path_length, path_speeds, time_derivative)


def main():
    g = H.SGrid(L=15.0, N=513)
    zero = H.InvariantPotential(grid=g, values=np.zeros(g.N))
    phi1 = H.conformal_potential(g, 1.0)

    # The conformal family is a constant-speed geodesic with
    # |phidot|^2 = 8 pi / 3 at every t:
    path = H.conformal_path(g, tcount=129)
    e = path_speeds(path)
    print("speeds along the conformal family: min %.8f, max %.8f"
          % (e.min(), e.max()))
    print("8 pi / 3 = %.8f" % (8.0 * np.pi / 3.0))
    print("length   = %.8f  (sqrt(8 pi / 3) = %.8f)"
          % (path_length(path), np.sqrt(8.0 * np.pi / 3.0)))

    # The same path is self-parallel: nabla_{phidot} phidot ~ 0 at
    # discretization order h^2 + dt^2.
    flat = H.oracle_path(zero, phi1, tcount=129)
    phidot = time_derivative(flat.values, flat.dt)
    acc = covariant_derivative(flat, phidot)
    dt = 1.0 / 128
    print("self-transport residual sup = %.3e  (budget ~ %.1e)"
          % (np.max(np.abs(acc[1:-1])), 5 * (g.h ** 2 + dt ** 2)))

    # Metric compatibility: d/dt <psi, psi> = 2 <nabla psi, psi> along
    # the path, for a t-independent test field psi.
    psi = np.tile(np.tanh(g.nodes / 3.0), (flat.tcount, 1))
    pair = np.array([inner_product(flat.slice(j), psi[j], psi[j])
                     for j in range(flat.tcount)])
    lhs = time_derivative(pair, flat.dt)
    nab = covariant_derivative(flat, psi)
    rhs = 2.0 * np.array([inner_product(flat.slice(j), nab[j], psi[j])
                          for j in range(flat.tcount)])
    print("metric compatibility defect sup = %.3e"
          % np.max(np.abs(lhs[1:-1] - rhs[1:-1])))


if __name__ == "__main__":
    main()
