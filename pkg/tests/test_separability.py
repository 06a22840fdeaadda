"""Separability function and symplectic diagnostics."""

import math

import numpy as np
import pytest

import twinbeam as tb
from twinbeam import separability
from twinbeam.gaussian import CovarianceMatrix, twb_covariance


def _product_state(n1: float, n2: float) -> CovarianceMatrix:
    return CovarianceMatrix(np.eye(2) * (n1 + 0.5), np.eye(2) * (n2 + 0.5),
                            np.zeros((2, 2)))


def test_vacuum_sits_on_the_boundary():
    assert separability.simon_separability(_product_state(0.0, 0.0)) == 0.0


def test_thermal_product_is_separable():
    s = separability.simon_separability(_product_state(0.5, 0.5))
    assert s == pytest.approx(0.5625, abs=1e-15)
    assert s > 0.0


@pytest.mark.parametrize("r", [0.0, 0.04, 0.1, 0.5, 1.0])
def test_twin_beam_initial_law(r):
    s = separability.simon_separability(twb_covariance(r))
    assert s == pytest.approx((1.0 - math.cosh(4.0 * r)) / 8.0, abs=1e-12)
    if r > 0.0:
        assert s < 0.0


def test_dense_route_matches_blockwise():
    cfg = tb.validate(tb.PhysicalConfig(r=0.7, x1=0.3, x2=2.0),
                      tb.GridConfig())
    for tau in (0.0, 0.4, 1.9, 6.3):
        sigma = tb.propagate(cfg, tau)
        a = separability.simon_separability(sigma)
        b = separability.simon_from_dense(sigma.matrix)
        assert a == pytest.approx(b, abs=1e-14)


def test_dense_route_validates_shape():
    with pytest.raises(ValueError):
        separability.simon_from_dense(np.eye(3))


def test_symplectic_eigenvalues_of_vacuum():
    nu = separability.symplectic_eigenvalues(_product_state(0.0, 0.0))
    assert nu.nu_minus == 0.5 and nu.nu_plus == 0.5
    assert nu.physical and nu.real


@pytest.mark.parametrize("r", [0.0, 0.3, 1.0])
def test_twin_beam_is_pure_and_physical(r):
    nu = separability.symplectic_eigenvalues(twb_covariance(r))
    assert nu.nu_minus == pytest.approx(0.5, abs=1e-12)
    assert nu.nu_plus == pytest.approx(0.5, abs=1e-12)
    assert nu.physical and nu.real


def test_thermal_product_eigenvalues():
    nu = separability.symplectic_eigenvalues(_product_state(0.5, 0.5))
    assert nu.nu_minus == pytest.approx(1.0, abs=1e-13)
    assert nu.nu_plus == pytest.approx(1.0, abs=1e-13)
    nu = separability.symplectic_eigenvalues(_product_state(0.5, 2.0))
    assert nu.nu_minus == pytest.approx(1.0, abs=1e-13)
    assert nu.nu_plus == pytest.approx(2.5, abs=1e-13)


def test_uncertainty_violation_is_flagged_not_raised():
    below = CovarianceMatrix(np.eye(2) * 0.4, np.eye(2) * 0.9,
                             np.zeros((2, 2)))
    nu = separability.symplectic_eigenvalues(below)
    assert nu.nu_minus == pytest.approx(0.4, abs=1e-13)
    assert not nu.physical
    assert nu.real


def test_evolved_state_eigenvalues_stay_ordered():
    cfg = tb.validate(tb.PhysicalConfig(r=1.0), tb.GridConfig())
    for tau in (0.0, 0.5, 2.0, 8.0):
        nu = separability.symplectic_eigenvalues(tb.propagate(cfg, tau))
        assert nu.nu_minus <= nu.nu_plus
        assert nu.real


def test_entanglement_sign_tracks_symplectic_witness():
    # for the evolved twin beam, S < 0 must coincide with the partial
    # transpose criterion nu_tilde_minus < 1/2, checked via dense algebra
    cfg = tb.validate(tb.PhysicalConfig(r=1.0), tb.GridConfig())
    flip = np.diag([1.0, 1.0, 1.0, -1.0])
    omega = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    for tau in (0.1, 0.5, 0.83, 0.9, 2.0):
        sigma = tb.propagate(cfg, tau)
        s = separability.simon_separability(sigma)
        pt = flip @ sigma.matrix @ flip
        nus = np.abs(np.linalg.eigvals(1j * omega @ pt).real)
        nu_pt = float(np.sort(nus)[0])
        if abs(s) > 1e-6:
            assert (s < 0.0) == (nu_pt < 0.5), (tau, s, nu_pt)
