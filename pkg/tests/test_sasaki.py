"""Fiberwise lift: scaled products, volumes, and the cone-variable audit."""

import numpy as np
import pytest

import hopflab as H
from hopflab.mabuchi import inner_product


TWO_PI = 2.0 * np.pi
FOUR_PI2 = 4.0 * np.pi ** 2


def test_lifted_inner_product_factor(grid, conformal1):
    a = np.sin(grid.nodes / 5.0)
    b = np.cos(grid.nodes / 7.0)
    assert H.sasaki_inner_product(conformal1, a, b) == pytest.approx(
        TWO_PI * inner_product(conformal1, a, b), rel=1e-14)


def test_lifted_distance_factor():
    assert H.sasaki_distance(2.0) == pytest.approx(2.0 * np.sqrt(TWO_PI),
                                                   rel=1e-15)
    assert H.sasaki_distance(0.0) == 0.0
    with pytest.raises(ValueError):
        H.sasaki_distance(-1.0)


def test_conformal_lifted_distance(zero, conformal1):
    # sqrt(2*pi) * sqrt(8*pi/3) = 4*pi/sqrt(3)
    d = H.sasaki_distance(H.oracle_distance(zero, conformal1))
    assert d == pytest.approx(4.0 * np.pi / np.sqrt(3.0), rel=1e-6)


def test_contact_volume_background(zero, conformal1):
    assert H.contact_volume(zero) == pytest.approx(FOUR_PI2, rel=1e-9)
    assert H.contact_volume(conformal1) == pytest.approx(FOUR_PI2, rel=1e-7)


def test_contact_volume_slope_family(grid):
    # a slope alpha removes the fraction alpha of the contact volume
    vol = H.contact_volume(H.slope_model(grid, 0.25))
    assert vol == pytest.approx(0.75 * FOUR_PI2, rel=1e-6)


def test_cone_residual_weight_window(continuation):
    sols, _ = continuation
    sol = sols[-1]
    audit = H.cone_residual(sol.path, sol.eps)
    # on a converged path both defects sit at rounding level, so the
    # factor-9/4 window only holds up to the recovery mismatch
    assert audit["strip_max"] <= 1e-9
    assert audit["field_mismatch"] <= 1e-11
    slack = audit["field_mismatch"] / audit["strip_max"]
    assert (1.0 - slack) * (1.0 - 1e-9) <= audit["ratio"]
    assert audit["ratio"] <= 2.25 * (1.0 + slack) + 1e-9


def test_cone_residual_on_closed_form_path(grid):
    path = H.conformal_path(H.SGrid(L=15.0, N=257), tcount=33)
    audit = H.cone_residual(path, 0.0)
    # the sampled continuum geodesic has only discretization defect, and
    # the two routes see it through the same nodes
    assert audit["cone_max"] <= 2.25 * audit["strip_max"] * (1.0 + 1e-9)
    assert audit["cone_max"] >= audit["strip_max"] * (1.0 - 1e-9)
