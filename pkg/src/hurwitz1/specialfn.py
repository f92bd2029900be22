"""Complex special functions on the upper half-plane and complex lattices.

Conventions used throughout the package:

* the modulus ``mu`` is the period ratio omega'/omega with Im(mu) > 0;
* the nome is ``q = exp(i pi mu)``;
* ``theta1`` is the odd Jacobi theta function in the convention
  ``theta1(z + pi) = -theta1(z)``, i.e.
  ``theta1(z) = 2 * sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) z)``;
* Weierstrass functions refer to the lattice spanned by ``2*omega`` and
  ``2*omega_prime``.

All series evaluators accept scalars or numpy arrays (broadcasting in the
obvious way) and truncate once the running term magnitude drops below
``SeriesConfig.tail_tolerance``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError, PrecisionError

__all__ = [
    "SeriesConfig",
    "DEFAULT_SERIES",
    "theta1",
    "dedekind_eta",
    "eisenstein_e2",
    "gamma_chazy",
    "weierstrass_p",
    "weierstrass_zeta_eta1",
    "lattice_g2",
    "carlson_rf",
]


@dataclass(frozen=True)
class SeriesConfig:
    """Truncation policy for q-series and q-products."""

    max_terms: int = 64
    tail_tolerance: float = 1e-16

    def __post_init__(self):
        if self.max_terms < 4:
            raise DomainError("SeriesConfig.max_terms must be >= 4")
        if not self.tail_tolerance > 0:
            raise DomainError("SeriesConfig.tail_tolerance must be positive")


DEFAULT_SERIES = SeriesConfig()


def _require_uhp(mu):
    mu = np.asarray(mu, dtype=complex)
    if np.any(mu.imag <= 0):
        raise DomainError("modulus must lie in the upper half-plane (Im mu > 0)")
    return mu


def _maybe_scalar(x, scalar):
    return complex(x) if scalar else x


def theta1(z, mu, deriv_order: int = 0, cfg: SeriesConfig = DEFAULT_SERIES):
    """z-derivative of order ``deriv_order`` (0..3) of theta1 at ``z``."""
    if deriv_order not in (0, 1, 2, 3):
        raise DomainError("deriv_order must be in {0, 1, 2, 3}")
    scalar = np.isscalar(z) and np.isscalar(mu)
    mu = _require_uhp(mu)
    z = np.asarray(z, dtype=complex)
    z, mu = np.broadcast_arrays(z, mu)
    total = np.zeros(z.shape, dtype=complex)
    use_cos = deriv_order % 2 == 1  # d/dz cycles sin, cos, -sin, -cos
    sign = -1.0 if deriv_order >= 2 else 1.0
    prev = np.inf
    for n in range(cfg.max_terms):
        k = 2 * n + 1
        coeff = 2.0 * (-1.0) ** n * np.exp(1j * np.pi * mu * (n + 0.5) ** 2) * k**deriv_order
        trig = np.cos(k * z) if use_cos else np.sin(k * z)
        term = sign * coeff * trig
        total += term
        last = float(np.max(np.abs(term)))
        if max(last, prev) < cfg.tail_tolerance:
            return _maybe_scalar(total, scalar)
        prev = last
    raise PrecisionError(
        f"theta1 series not converged within {cfg.max_terms} terms "
        "(modulus too close to the real axis or |Im z| too large)"
    )


def _theta_even(v, mu, which: int, dv_order: int, cfg: SeriesConfig):
    """theta2/theta3/theta4 at ``v`` with z-derivative order 0 or 1."""
    v = np.asarray(v, dtype=complex)
    v, mu = np.broadcast_arrays(v, np.asarray(mu, dtype=complex))
    total = np.zeros(v.shape, dtype=complex)
    prev = np.inf
    if which == 2:
        for n in range(cfg.max_terms):
            k = 2 * n + 1
            coeff = 2.0 * np.exp(1j * np.pi * mu * (n + 0.5) ** 2)
            term = coeff * (np.cos(k * v) if dv_order == 0 else -k * np.sin(k * v))
            total += term
            last = float(np.max(np.abs(term)))
            if max(last, prev) < cfg.tail_tolerance:
                return total
            prev = last
    else:
        alt = -1.0 if which == 4 else 1.0
        total += 1.0 if dv_order == 0 else 0.0
        for n in range(1, cfg.max_terms):
            coeff = 2.0 * alt**n * np.exp(1j * np.pi * mu * n**2)
            term = coeff * (np.cos(2 * n * v) if dv_order == 0 else -2 * n * np.sin(2 * n * v))
            total += term
            last = float(np.max(np.abs(term)))
            if max(last, prev) < cfg.tail_tolerance:
                return total
            prev = last
    raise PrecisionError(f"theta{which} series not converged within {cfg.max_terms} terms")


def dedekind_eta(mu, cfg: SeriesConfig = DEFAULT_SERIES):
    """Dedekind eta via the q-product ``q^{1/12} prod (1 - q^{2n})``.

    The ``q^{1/12}`` factor is taken as ``exp(i pi mu / 12)``, which fixes the
    cube-root branch continuously on the upper half-plane.
    """
    scalar = np.isscalar(mu)
    mu = _require_uhp(mu)
    prod = np.exp(1j * np.pi * mu / 12.0) * np.ones(mu.shape, dtype=complex)
    for n in range(1, cfg.max_terms + 1):
        q2n = np.exp(2j * np.pi * mu * n)
        prod = prod * (1.0 - q2n)
        if np.max(np.abs(q2n)) < cfg.tail_tolerance:
            return _maybe_scalar(prod, scalar)
    raise PrecisionError(f"eta product not converged within {cfg.max_terms} factors")


def eisenstein_e2(mu, cfg: SeriesConfig = DEFAULT_SERIES):
    """Weight-2 Eisenstein series ``1 - 24 sum n q^{2n}/(1-q^{2n})``."""
    scalar = np.isscalar(mu)
    mu = _require_uhp(mu)
    s = np.zeros(mu.shape, dtype=complex)
    for n in range(1, cfg.max_terms + 1):
        q2n = np.exp(2j * np.pi * mu * n)
        term = n * q2n / (1.0 - q2n)
        s += term
        if np.max(np.abs(term)) < cfg.tail_tolerance:
            return _maybe_scalar(1.0 - 24.0 * s, scalar)
    raise PrecisionError(f"E2 series not converged within {cfg.max_terms} terms")


def gamma_chazy(mu, cfg: SeriesConfig = DEFAULT_SERIES):
    """Chazy-equation solution gamma(mu), via the theta1 derivative ratio.

    With the z-convention of :func:`theta1` the ratio theta1'''(0)/theta1'(0)
    carries no pi^2 factor, so the prefactor is pi/(3i) rather than 1/(3 pi i).
    The normalization is pinned by gamma''' = 6*gamma*gamma'' - 9*gamma'^2 and
    by gamma = 4 d/dmu log(eta), which give gamma(i) = i.

    At z = 0 the odd-k series needs no trig factors, and successive powers
    q^{(n+1/2)^2} follow by two multiplications, which keeps this hot path
    cheap on large batches.
    """
    scalar = np.isscalar(mu)
    mu = _require_uhp(mu)
    q2 = np.exp(2j * np.pi * mu)
    qcur = np.exp(0.25j * np.pi * mu)  # q^{(n+1/2)^2} at n = 0
    step = q2.copy()                   # q^{2(n+1)}
    num = np.zeros(mu.shape, dtype=complex)
    den = np.zeros(mu.shape, dtype=complex)
    sign = 1.0
    for n in range(cfg.max_terms):
        k = 2 * n + 1
        num += sign * k**3 * qcur
        den += sign * k * qcur
        if float(np.max(np.abs(qcur))) * k**3 < cfg.tail_tolerance:
            # theta1'''(0)/theta1'(0) = -num/den
            return _maybe_scalar((np.pi * 1j / 3.0) * num / den, scalar)
        qcur = qcur * step
        step = step * q2
        sign = -sign
    raise PrecisionError(f"gamma series not converged within {cfg.max_terms} terms")


def _lattice_reduce(z, omega, omega_prime):
    """Reduce z modulo the lattice {2 omega, 2 omega_prime} to the centered cell."""
    w1, w2 = 2.0 * omega, 2.0 * omega_prime
    det = w1.real * w2.imag - w1.imag * w2.real
    z = np.asarray(z, dtype=complex)
    a = (z.real * w2.imag - z.imag * w2.real) / det
    b = (w1.real * z.imag - w1.imag * z.real) / det
    a = a - np.round(a)
    b = b - np.round(b)
    return a * w1 + b * w2


def _lattice_data(omega, omega_prime):
    omega = complex(omega)
    omega_prime = complex(omega_prime)
    if omega == 0 or omega_prime == 0:
        raise DomainError("half-periods must be nonzero")
    mu = omega_prime / omega
    if mu.imag <= 0:
        raise DomainError("lattice not normalized: need Im(omega_prime/omega) > 0")
    return omega, omega_prime, mu


def weierstrass_p(z, omega, omega_prime, deriv_order: int = 0, cfg: SeriesConfig = DEFAULT_SERIES):
    """Weierstrass P (order 0), P' (order 1) or P'' (order 2) on {2w, 2w'}.

    Evaluated through theta quotients after lattice reduction of ``z``; P'' is
    obtained from the differential equation as ``6 P^2 - g2/2``.  All orders
    have a pole on the lattice, so lattice-point input always raises.
    """
    if deriv_order not in (0, 1, 2):
        raise DomainError("deriv_order must be in {0, 1, 2}")
    omega, omega_prime, mu = _lattice_data(omega, omega_prime)
    scalar = np.isscalar(z)
    zr = _lattice_reduce(z, omega, omega_prime)
    scale = max(abs(omega), abs(omega_prime))
    if np.any(np.abs(zr) < 1e-12 * scale):
        raise PoleError("Weierstrass P evaluated at a lattice point")
    v = np.pi * zr / (2.0 * omega)
    t1 = theta1(v, mu, 0, cfg)
    t2 = _theta_even(v, mu, 2, 0, cfg)
    t20 = _theta_even(0.0, mu, 2, 0, cfg)
    t30 = _theta_even(0.0, mu, 3, 0, cfg)
    t40 = _theta_even(0.0, mu, 4, 0, cfg)
    t1p0 = theta1(0.0, mu, 1, cfg)
    pref = np.pi * t1p0 / (2.0 * omega * t20)
    e1 = (np.pi / (2.0 * omega)) ** 2 * (t30**4 + t40**4) / 3.0
    p = e1 + (pref * t2 / t1) ** 2
    if deriv_order == 0:
        return _maybe_scalar(p, scalar)
    if deriv_order == 2:
        g2 = lattice_g2(omega, omega_prime, cfg)
        return _maybe_scalar(6.0 * p**2 - g2 / 2.0, scalar)
    t1d = theta1(v, mu, 1, cfg)
    t2d = _theta_even(v, mu, 2, 1, cfg)
    dp = 2.0 * pref**2 * (t2 / t1) * (t2d * t1 - t2 * t1d) / t1**2 * (np.pi / (2.0 * omega))
    return _maybe_scalar(dp, scalar)


def lattice_g2(omega, omega_prime, cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """Invariant g2 of the lattice {2 omega, 2 omega_prime} from theta nulls."""
    omega, omega_prime, mu = _lattice_data(omega, omega_prime)
    t20 = _theta_even(0.0, mu, 2, 0, cfg)
    t30 = _theta_even(0.0, mu, 3, 0, cfg)
    t40 = _theta_even(0.0, mu, 4, 0, cfg)
    return complex(2.0 / 3.0 * (np.pi / (2.0 * omega)) ** 4 * (t20**8 + t30**8 + t40**8))


def weierstrass_zeta_eta1(omega, omega_prime, cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """eta1 = zeta(omega), so that int_x^{x+2w} P = -2*eta1.

    Uses the Lambert series of E2, a route independent of the theta-derivative
    ratio behind :func:`gamma_chazy`.
    """
    omega, omega_prime, mu = _lattice_data(omega, omega_prime)
    return complex(np.pi**2 * eisenstein_e2(mu, cfg) / (12.0 * omega))


_RF_MAX_ITER = 120


def carlson_rf(x, y, z) -> complex:
    """Carlson symmetric integral R_F by the duplication algorithm.

    Valid for complex arguments off the negative real axis, at most one of
    them zero.  Relative accuracy ~1e-14.
    """
    x0, y0, z0 = complex(x), complex(y), complex(z)
    if sum(1 for a in (x0, y0, z0) if a == 0) > 1:
        raise DomainError("carlson_rf: at most one argument may be zero")
    x, y, z = x0, y0, z0
    A0 = (x0 + y0 + z0) / 3.0
    A = A0
    Q = (3.0 * 1e-16) ** (-1.0 / 8.0) * max(abs(A0 - x0), abs(A0 - y0), abs(A0 - z0))
    f = 1.0
    it = 0
    while Q > f * abs(A):
        if it >= _RF_MAX_ITER:
            raise PrecisionError("carlson_rf duplication did not converge")
        lam = np.sqrt(x) * np.sqrt(y) + np.sqrt(x) * np.sqrt(z) + np.sqrt(y) * np.sqrt(z)
        x = (x + lam) / 4.0
        y = (y + lam) / 4.0
        z = (z + lam) / 4.0
        A = (A + lam) / 4.0
        f *= 4.0
        it += 1
    X = (A0 - x0) / (A * f)
    Y = (A0 - y0) / (A * f)
    Z = -X - Y
    E2 = X * Y - Z * Z
    E3 = X * Y * Z
    series = 1.0 - E2 / 10.0 + E3 / 14.0 + E2 * E2 / 24.0 - 3.0 * E2 * E3 / 44.0
    return complex(series / np.sqrt(A))
