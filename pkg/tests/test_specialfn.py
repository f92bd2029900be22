import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hurwitz1 import (
    DomainError,
    PoleError,
    PrecisionError,
    SeriesConfig,
    carlson_rf,
    dedekind_eta,
    eisenstein_e2,
    gamma_chazy,
    theta1,
    weierstrass_p,
    weierstrass_zeta_eta1,
)
from hurwitz1.kernels import cycle_integral
from hurwitz1.prepotential import DerivativeEngine, derivative

from conftest import fixture

MODULI = st.builds(
    complex,
    st.floats(-1.0, 1.0),
    st.floats(0.6, 2.5),
)
ZPOINTS = st.builds(
    complex,
    st.floats(-2.0, 2.0),
    st.floats(-0.6, 0.6),
)


def test_theta1_odd_derivative_zeros_at_origin():
    assert theta1(0.0, 1j, 0) == 0.0
    assert theta1(0.0, 1j, 2) == 0.0


def test_theta1_first_derivative_fixture(oracle):
    assert abs(theta1(0.0, 1j, 1) - oracle["T1P_I"]) < 1e-14


@settings(max_examples=40, deadline=None)
@given(z=ZPOINTS, mu=MODULI)
def test_theta1_antiperiodic_and_odd(z, mu):
    assert abs(theta1(z + np.pi, mu) + theta1(z, mu)) < 1e-10
    assert abs(theta1(-z, mu) + theta1(z, mu)) < 1e-10


def test_theta1_rejects_lower_half_plane():
    with pytest.raises(DomainError):
        theta1(0.1, 1.0 - 0.5j)


def test_theta1_reports_nonconvergence():
    with pytest.raises(PrecisionError):
        theta1(0.3, 0.5 + 1e-4j, 0, SeriesConfig(max_terms=4))


def test_eta_fixture_and_phase(oracle):
    assert abs(dedekind_eta(1j) - oracle["ETA_I"]) < 1e-14
    assert abs(abs(dedekind_eta(1j + 1.0)) - abs(dedekind_eta(1j))) < 1e-12


@settings(max_examples=25, deadline=None)
@given(mu=st.builds(complex, st.floats(-0.45, 0.45), st.floats(0.8, 1.6)))
def test_eta_modular_transformations(mu):
    assert abs(dedekind_eta(mu + 1.0) - np.exp(1j * np.pi / 12) * dedekind_eta(mu)) < 1e-9
    assert abs(dedekind_eta(-1.0 / mu) - np.sqrt(-1j * mu) * dedekind_eta(mu)) < 1e-9


def test_eta_conjugation_symmetry():
    mu = 0.3 + 1.1j
    assert abs(np.conj(dedekind_eta(mu)) - dedekind_eta(-np.conj(mu))) < 1e-12


def test_gamma_at_i_and_conjugation():
    assert abs(gamma_chazy(1j) - 1j) < 1e-10
    mu = 0.2 + 0.9j
    assert abs(np.conj(gamma_chazy(mu)) + gamma_chazy(-np.conj(mu))) < 1e-12


@settings(max_examples=20, deadline=None)
@given(mu=MODULI)
def test_gamma_periodicity(mu):
    assert abs(gamma_chazy(mu + 1.0) - gamma_chazy(mu)) < 1e-9


def _gamma_mu_derivative(mu, order):
    eng = DerivativeEngine(nodes=64)
    mi = [order]
    return derivative(lambda pts: gamma_chazy(pts[:, 0]), np.array([mu]), mi, eng, radius=0.25)


@pytest.mark.parametrize("mu", [0.1 + 1.3j] + [complex(-0.4 + 0.09 * k, 0.8 + 0.07 * k) for k in range(9)])
def test_chazy_equation_on_grid(mu):
    g = gamma_chazy(mu)
    g1 = _gamma_mu_derivative(mu, 1)
    g2 = _gamma_mu_derivative(mu, 2)
    g3 = _gamma_mu_derivative(mu, 3)
    assert abs(g3 - 6.0 * g * g2 + 9.0 * g1**2) < 1e-8


def test_gamma_equals_four_dlog_eta():
    mu = 0.17 + 1.05j
    d_log_eta = derivative(
        lambda pts: np.log(np.asarray(dedekind_eta(pts[:, 0]))),
        np.array([mu]), [1], DerivativeEngine(nodes=64), radius=0.3,
    )
    assert abs(gamma_chazy(mu) - 4.0 * d_log_eta) < 1e-10


def test_weierstrass_half_period_values(lemn_cov):
    cov = lemn_cov
    for zk, ek in zip(cov.ram_points, cov.e):
        assert abs(weierstrass_p(zk, cov.omega, cov.omega_prime) - ek) < 1e-11
    assert abs(sum(cov.e)) < 1e-12
    assert abs(weierstrass_p(cov.omega, cov.omega, cov.omega_prime, 1)) < 1e-10
    # lemniscatic: P''(w) = 6 e1^2 - g2/2 = 4
    assert abs(weierstrass_p(cov.omega, cov.omega, cov.omega_prime, 2) - 4.0) < 1e-10


def test_weierstrass_differential_equation(lemn_cov):
    cov = lemn_cov
    rng = np.random.default_rng(3)
    for _ in range(5):
        z = (0.1 + 0.8 * rng.random()) * cov.omega + (0.1 + 0.8 * rng.random()) * cov.omega_prime
        p = weierstrass_p(z, cov.omega, cov.omega_prime, 0)
        dp = weierstrass_p(z, cov.omega, cov.omega_prime, 1)
        assert abs(dp**2 - (4.0 * p**3 - cov.g2 * p - cov.g3)) < 1e-9


def test_weierstrass_homogeneity(lemn_cov):
    cov = lemn_cov
    z = 0.31 * cov.omega + 0.27 * cov.omega_prime
    lhs = weierstrass_p(2.0 * z, 2.0 * cov.omega, 2.0 * cov.omega_prime)
    assert abs(lhs - weierstrass_p(z, cov.omega, cov.omega_prime) / 4.0) < 1e-12


def test_weierstrass_pole_error(lemn_cov):
    cov = lemn_cov
    with pytest.raises(PoleError):
        weierstrass_p(2.0 * cov.omega, cov.omega, cov.omega_prime)


def test_eta1_fixture_scaling_and_gamma_identity(lemn_cov, oracle):
    cov = lemn_cov
    assert abs(cov.eta1 - oracle["ETA1_LEMN"]) < 1e-13
    kappa = 1.7 - 0.4j
    assert abs(weierstrass_zeta_eta1(kappa * cov.omega, kappa * cov.omega_prime)
               - cov.eta1 / kappa) < 1e-12
    # the two closed forms of the marked flat coordinate agree:
    lhs = cov.eta1 / cov.omega
    rhs = -1j * np.pi / (4.0 * cov.omega**2) * gamma_chazy(cov.mu)
    assert abs(lhs - rhs) < 1e-9


def test_eta1_matches_cycle_quadrature(lemn_cov):
    cov = lemn_cov
    val = cycle_integral(cov, lambda s: weierstrass_p(s, cov.omega, cov.omega_prime), "a")
    assert abs(val + 2.0 * cov.eta1) < 1e-10


def test_eisenstein_e2_consistency():
    mu = 0.21 + 1.4j
    # gamma = (i pi / 3) E2 ties the Lambert route to the theta route
    assert abs(gamma_chazy(mu) - 1j * np.pi / 3.0 * eisenstein_e2(mu)) < 1e-12


def test_carlson_trivial_and_fixture(oracle):
    assert abs(carlson_rf(1.0, 1.0, 1.0) - 1.0) < 1e-14
    assert abs(carlson_rf(4.0, 4.0, 4.0) - 0.5) < 1e-14
    assert abs(carlson_rf(0.0, 1.0, 2.0) - oracle["RF_012"]) < 1e-13


def test_carlson_symmetry_and_errors():
    vals = [carlson_rf(*p) for p in [(0.3, 1.2 + 0.4j, 2.0), (1.2 + 0.4j, 2.0, 0.3), (2.0, 0.3, 1.2 + 0.4j)]]
    assert max(abs(v - vals[0]) for v in vals) < 1e-14
    with pytest.raises(DomainError):
        carlson_rf(0.0, 0.0, 1.0)
