import numpy as np
import pytest

from hurwitz1 import (
    DegeneracyError,
    covering_from_branch_points,
    lambda_map,
    local_frame,
    weierstrass_p,
)

from conftest import EQUIANHARMONIC, LEMNISCATIC, random_triples


def test_lemniscatic_modulus(lemn_cov):
    assert abs(lemn_cov.mu - 1j) < 1e-10
    assert abs(lemn_cov.g2 - 4.0) < 1e-12
    assert abs(lemn_cov.g3) < 1e-12


def test_equianharmonic_modulus(equi_cov):
    assert abs(equi_cov.mu - np.exp(1j * np.pi / 3)) < 1e-10
    assert abs(equi_cov.g2) < 1e-12


def test_scaling_halves_period(lemn_cov):
    cov4 = covering_from_branch_points([4.0 * b for b in LEMNISCATIC])
    assert abs(cov4.omega - lemn_cov.omega / 2.0) < 1e-10
    assert abs(cov4.mu - lemn_cov.mu) < 1e-12


@pytest.mark.parametrize("lam", random_triples(seed=11, count=5))
def test_roundtrip_random_triples(lam):
    cov = covering_from_branch_points(lam)
    worst = max(abs(lambda_map(cov, z) - l) for z, l in zip(cov.ram_points, lam))
    assert worst < 1e-10 * max(1.0, cov.scale)


def test_simultaneous_shift_changes_only_c():
    lam = random_triples(seed=5, count=1)[0]
    cov = covering_from_branch_points(lam)
    cov_shift = covering_from_branch_points([x + 0.37 for x in lam])
    assert abs(cov_shift.omega - cov.omega) < 1e-10
    assert abs(cov_shift.omega_prime - cov.omega_prime) < 1e-10
    assert abs(cov_shift.c - cov.c - 0.37) < 1e-12


def test_mu_invariant_under_affine_maps():
    lam = random_triples(seed=7, count=1)[0]
    cov = covering_from_branch_points(lam)
    a, b = 1.3 - 0.8j, 0.4 + 2.2j
    cov2 = covering_from_branch_points([a * x + b for x in lam])
    assert abs(cov2.mu - cov.mu) < 1e-9


def test_lambda_map_values_and_parity(lemn_cov):
    cov = lemn_cov
    assert abs(lambda_map(cov, cov.omega) - 1.0) < 1e-10
    assert abs(lambda_map(cov, cov.omega + cov.omega_prime) - 0.0) < 1e-10
    z = 0.23 * cov.omega + 0.31 * cov.omega_prime
    assert abs(lambda_map(cov, z) - lambda_map(cov, -z)) < 1e-12


def test_local_frame_lemniscatic_and_defining_relation(lemn_cov):
    fr = local_frame(lemn_cov)
    assert abs(fr.dzeta_dx[0] - 1.0 / np.sqrt(2.0)) < 1e-12
    for zk, f in zip(lemn_cov.ram_points, fr.dzeta_dx):
        ppd = weierstrass_p(zk, lemn_cov.omega, lemn_cov.omega_prime, 2)
        assert abs(f**2 * ppd - 2.0) < 1e-10


def test_frame_scaling_law():
    # Under lam -> kappa*lam the x_i frame stretches like kappa^{1/2} and the
    # s coordinate shrinks like kappa^{-1/2}, so ds/dx_i scales as kappa^{-1}
    # (this is what makes E(beta) = -beta come out; the x-differential alone
    # carries the kappa^{1/2} factor).
    lam = random_triples(seed=13, count=1)[0]
    kappa = 3.0
    f1 = np.array(local_frame(covering_from_branch_points(lam)).dzeta_dx)
    f2 = np.array(local_frame(covering_from_branch_points([kappa * x for x in lam])).dzeta_dx)
    assert np.max(np.abs(f2 - f1 / kappa)) < 1e-10


def test_degenerate_inputs_rejected():
    with pytest.raises(DegeneracyError):
        covering_from_branch_points([1.0, 1.0 + 1e-12, -1.0])
    with pytest.raises(DegeneracyError):
        covering_from_branch_points([1.0, 1.0, -1.0])


def test_eta2_legendre_relation(lemn_cov):
    cov = lemn_cov
    legendre = cov.eta1 * cov.omega_prime - cov.eta2 * cov.omega
    assert abs(legendre - 0.5j * np.pi) < 1e-14
