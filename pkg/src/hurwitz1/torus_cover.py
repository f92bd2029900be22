"""Genus-1 two-sheeted coverings lambda(s) = P(s) + c.

A triple of distinct finite branch points (l1, l2, l3) determines a torus
C/{2w, 2w'} and the covering map P + c with c = (l1+l2+l3)/3.  Labels are
fixed by input order: e1 <-> l1 <-> s1 = w, e2 <-> l2 <-> w + w', e3 <-> l3
<-> w'.  Half-periods come from the complete-integral form of Carlson R_F
with k^2 = (e2-e3)/(e1-e3) and the principal square root of e1-e3, followed
by normalization into Im(w'/w) > 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneracyError, PrecisionError
from .specialfn import (
    DEFAULT_SERIES,
    SeriesConfig,
    carlson_rf,
    weierstrass_p,
    weierstrass_zeta_eta1,
)

__all__ = ["TorusCovering", "LocalFrame", "covering_from_branch_points", "lambda_map", "local_frame"]

DEGENERACY_TOLERANCE = 1e-8
ROUNDTRIP_TOLERANCE = 1e-10


def _principal_sqrt(z) -> complex:
    """Principal square root with -0.0 parts normalized to +0.0.

    Keeps branch choices deterministic and aligned with the arbitrary-
    precision oracles when a value lands exactly on the cut.
    """
    z = complex(z)
    return complex(np.sqrt(complex(z.real + 0.0, z.imag + 0.0)))


@dataclass(frozen=True)
class TorusCovering:
    """Torus data for one covering; see module docstring for labeling."""

    branch_points: tuple
    omega: complex
    omega_prime: complex
    mu: complex
    c: complex
    e: tuple
    ram_points: tuple
    g2: complex
    g3: complex
    eta1: complex

    @property
    def eta2(self) -> complex:
        """zeta(omega_prime), from the Legendre relation eta1 w' - eta2 w = i pi/2."""
        return (self.eta1 * self.omega_prime - 0.5j * np.pi) / self.omega

    @property
    def scale(self) -> float:
        return max(abs(a - b) for a, b in ((self.e[0], self.e[1]), (self.e[0], self.e[2]), (self.e[1], self.e[2])))


@dataclass(frozen=True)
class LocalFrame:
    """Frame factors ds/dx_i at the ramification points, x_i = sqrt(lambda - lambda_i)."""

    dzeta_dx: tuple


def covering_from_branch_points(
    branch_points,
    degeneracy_tolerance: float = DEGENERACY_TOLERANCE,
    cfg: SeriesConfig = DEFAULT_SERIES,
) -> TorusCovering:
    """Build the covering for three finite simple branch points."""
    lam = tuple(complex(b) for b in branch_points)
    if len(lam) != 3:
        raise DegeneracyError("exactly three finite branch points are required")
    seps = [abs(lam[0] - lam[1]), abs(lam[0] - lam[2]), abs(lam[1] - lam[2])]
    scale = max(seps)
    if scale == 0 or min(seps) <= degeneracy_tolerance * scale:
        raise DegeneracyError(f"branch points too close: separations {seps}")
    c = (lam[0] + lam[1] + lam[2]) / 3.0
    e = tuple(b - c for b in lam)
    k2 = (e[1] - e[2]) / (e[0] - e[2])
    root = _principal_sqrt(e[0] - e[2])
    omega = carlson_rf(0.0, 1.0 - k2, 1.0) / root
    omega_prime = 1j * carlson_rf(0.0, k2, 1.0) / root
    mu = omega_prime / omega
    if abs(mu.imag) < 1e-13:
        raise DegeneracyError("degenerate lattice: period ratio is real")
    if mu.imag < 0:
        omega_prime, mu = -omega_prime, -mu
    g2 = 2.0 * (e[0] ** 2 + e[1] ** 2 + e[2] ** 2)
    g3 = 4.0 * e[0] * e[1] * e[2]
    eta1 = weierstrass_zeta_eta1(omega, omega_prime, cfg)
    ram = (omega, omega + omega_prime, omega_prime)
    cov = TorusCovering(lam, complex(omega), complex(omega_prime), complex(mu), c, e, ram, g2, g3, eta1)
    worst = max(abs(lambda_map(cov, z, cfg) - l) for z, l in zip(ram, lam))
    if worst > ROUNDTRIP_TOLERANCE * max(1.0, scale):
        raise PrecisionError(f"covering roundtrip failed: max |P(s_k)+c - l_k| = {worst:.3e}")
    return cov


def lambda_map(cov: TorusCovering, zeta, cfg: SeriesConfig = DEFAULT_SERIES):
    """Covering map lambda(zeta) = P(zeta) + c."""
    return weierstrass_p(zeta, cov.omega, cov.omega_prime, 0, cfg) + cov.c


def wp_second_at_ram(cov: TorusCovering) -> tuple:
    """P''(s_i) = 6 e_i^2 - g2/2, exact at the half-periods."""
    return tuple(6.0 * ei**2 - cov.g2 / 2.0 for ei in cov.e)


def local_frame(cov: TorusCovering, degeneracy_tolerance: float = DEGENERACY_TOLERANCE) -> LocalFrame:
    """Frame factors ds/dx_i = sqrt(2/P''(s_i)), principal branch.

    From lambda - lambda_i = P(s) - e_i ~ (1/2) P''(s_i) (s - s_i)^2; P''(s_i)
    is nonzero exactly when the branch points are distinct.
    """
    ppd = wp_second_at_ram(cov)
    if min(abs(p) for p in ppd) <= degeneracy_tolerance * max(1.0, cov.scale**2):
        raise DegeneracyError("vanishing P'' at a ramification point")
    return LocalFrame(tuple(_principal_sqrt(2.0 / p) for p in ppd))
