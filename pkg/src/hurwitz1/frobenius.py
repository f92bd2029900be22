"""The four concrete Frobenius structures on the genus-1 covering space.

Kinds and their primary differentials (s is the torus coordinate, mu the
period ratio, mub its conjugate):

* ``holo-s``      : ds/(2w)                                    (3 coordinates)
* ``double-s``    : mub/(mub-mu) ds/(2w) + mu/(mu-mub) conj    (6 coordinates)
* ``double-t``    : 1/(mu-mub) ds/(2w) - 1/(mu-mub) conj       (6 coordinates)
* ``double-combo``: the s-type plus sigma times the t-type     (6 coordinates)

Flat coordinates are evaluated in closed form through eta1 = zeta(w) and
eta2 = zeta(w') (Legendre relation), using
int_x^{x+2w} (P + c) ds = -2 eta1 + 2 w c and the b-cycle analogue; this
makes the multivalued period integrals base-point independent.

For ``double-combo`` the paper-facing linear change to the marked coordinate
is applied with an extra factor 1/2,

    t1 = (s + t/sigma)/2,   t4 = (s - t/sigma)/2,

so that the unit field acts as e = -d/dt1 with unit rate, uniformly across
kinds (s and t are the a- and b-cycle coordinates of the combination
differential, in the normalization s = -oint_a (lam F10 + lamb F01)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .specialfn import DEFAULT_SERIES, SeriesConfig
from .torus_cover import TorusCovering, covering_from_branch_points

__all__ = [
    "KINDS",
    "StructureKind",
    "FlatCoords",
    "EulerData",
    "flat_coordinates",
    "constant_metric",
    "euler_data",
    "check_unit_field",
]

KINDS = ("holo-s", "double-s", "double-t", "double-combo")
_MIN_SIGMA = 1e-6


@dataclass(frozen=True)
class StructureKind:
    """Choice of primary differential; ``sigma`` is used only by double-combo."""

    kind: str
    sigma: complex = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown structure kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "double-combo" and abs(self.sigma) < _MIN_SIGMA:
            raise DomainError("double-combo requires |sigma| >= 1e-6 (the sigma -> 0 limit is singular)")

    @property
    def dim(self) -> int:
        return 3 if self.kind == "holo-s" else 6


@dataclass(frozen=True)
class FlatCoords:
    """Flat coordinates t_1..t_n of the chosen structure at one covering."""

    t: np.ndarray
    kind: StructureKind


@dataclass(frozen=True)
class EulerData:
    """Quasihomogeneity weights; nu_F = 3 - charge holds for all four kinds."""

    nu: np.ndarray
    nu_f: float
    charge: float


def _period_integrals(cov: TorusCovering):
    """(I_a, I_b) with I_a = int_x^{x+2w} (P+c) ds = -2 eta1 + 2 w c, etc."""
    i_a = -2.0 * cov.eta1 + 2.0 * cov.omega * cov.c
    i_b = -2.0 * cov.eta2 + 2.0 * cov.omega_prime * cov.c
    return i_a, i_b


def flat_coordinates(cov: TorusCovering, skind: StructureKind,
                     cfg: SeriesConfig = DEFAULT_SERIES) -> FlatCoords:
    """Closed-form flat coordinates of the chosen structure at ``cov``."""
    mu = cov.mu
    mub = np.conj(mu)
    om = cov.omega
    omb = np.conj(om)
    two_pi_i = 2j * np.pi
    i_a, i_b = _period_integrals(cov)
    if skind.kind == "holo-s":
        t = np.array([cov.eta1 / om - cov.c, 1.0 / om, mu / two_pi_i])
        return FlatCoords(t, skind)
    if skind.kind == "double-s":
        t1 = 2.0 * np.real(mub / (mu - mub) * i_a / (2.0 * om))
        t4 = 2.0 * np.real(mub / (mu - mub) * i_b / (2.0 * om))
        t2 = mub / (mub - mu) / om
        t = np.array([t1, t2, mu * mub / (mub - mu) / two_pi_i, t4, np.conj(t2), mub / (mub - mu) / two_pi_i])
        return FlatCoords(t, skind)
    if skind.kind == "double-t":
        t1 = 2.0 * np.real(1.0 / (mub - mu) * i_b / (2.0 * om))
        t4 = 2.0 * np.real(1.0 / (mub - mu) * i_a / (2.0 * om))
        t2 = 1.0 / (mu - mub) / om
        t = np.array([t1, t2, mu / (mu - mub) / two_pi_i, t4, np.conj(t2), 1.0 / (mu - mub) / two_pi_i])
        return FlatCoords(t, skind)
    sg = skind.sigma
    ch = (mub - sg) / (mub - mu)
    cb = (sg - mu) / (mub - mu)
    s_coord = -(ch * i_a / (2.0 * om) + cb * np.conj(i_a) / (2.0 * omb))
    t_coord = -(ch * i_b / (2.0 * om) + cb * np.conj(i_b) / (2.0 * omb))
    t1 = (s_coord + t_coord / sg) / 2.0
    t4 = (s_coord - t_coord / sg) / 2.0
    t = np.array([t1, ch / om, ch * mu / two_pi_i, t4, cb / omb, ch / two_pi_i])
    return FlatCoords(t, skind)


def constant_metric(skind: StructureKind) -> np.ndarray:
    """Constant flat-coordinate metric of the structure (symmetric matrix)."""
    if skind.kind == "holo-s":
        # (1/2) dt2^2 - 2 dt1 dt3
        eta = np.zeros((3, 3), dtype=complex)
        eta[1, 1] = 0.5
        eta[0, 2] = eta[2, 0] = -1.0
        return eta
    eta = np.zeros((6, 6), dtype=complex)
    eta[1, 1] = eta[4, 4] = 0.5
    if skind.kind == "double-s":
        # (1/2) dt2^2 + (1/2) dt5^2 - 2 dt1 dt3 + 2 dt4 dt6
        eta[0, 2] = eta[2, 0] = -1.0
        eta[3, 5] = eta[5, 3] = 1.0
    elif skind.kind == "double-t":
        # (1/2) dt2^2 + (1/2) dt5^2 + 2 dt1 dt6 - 2 dt3 dt4
        eta[0, 5] = eta[5, 0] = 1.0
        eta[2, 3] = eta[3, 2] = -1.0
    else:
        # (1/2) dt2^2 + (1/2) dt5^2 - dt1 dt3 + sigma dt1 dt6 - dt3 dt4 - sigma dt4 dt6
        sg = skind.sigma
        eta[0, 2] = eta[2, 0] = -0.5
        eta[0, 5] = eta[5, 0] = sg / 2.0
        eta[2, 3] = eta[3, 2] = -0.5
        eta[3, 5] = eta[5, 3] = -sg / 2.0
    return eta


def euler_data(skind: StructureKind) -> EulerData:
    """Quasihomogeneity weights nu_A, degree nu_F = 2, charge nu = 1."""
    nu = np.array([1.0, 0.5, 0.0] * (skind.dim // 3))
    return EulerData(nu, 2.0, 1.0)


def check_unit_field(branch_points, skind: StructureKind, delta: float = 1e-5,
                     cfg: SeriesConfig = DEFAULT_SERIES) -> dict:
    """Finite-difference responses of the flat coordinates.

    ``unit_shift``: under the simultaneous real shift lam -> lam + delta the
    marked coordinate decreases at unit rate and all others stay fixed;
    reported is max_A |Delta t_A / delta + delta_{A,1}|.  ``euler_scale``:
    under lam -> (1 + eps) lam each coordinate obeys t_A -> (1+eps)^{nu_A} t_A;
    reported is the max first-order deviation.
    """
    lam = [complex(x) for x in branch_points]

    def coords(points):
        return flat_coordinates(covering_from_branch_points(points, cfg=cfg), skind, cfg).t

    t_plus = coords([x + delta for x in lam])
    t_minus = coords([x - delta for x in lam])
    resp = (t_plus - t_minus) / (2.0 * delta)
    expect = np.zeros(skind.dim)
    expect[0] = -1.0
    unit_res = float(np.max(np.abs(resp - expect)))
    t0 = coords(lam)
    nu = euler_data(skind).nu
    s_plus = coords([x * (1 + delta) for x in lam])
    s_minus = coords([x * (1 - delta) for x in lam])
    scale_res = float(np.max(np.abs((s_plus - s_minus) / (2.0 * delta) - nu * t0)))
    return {"unit_shift": unit_res, "euler_scale": scale_res, "delta": delta}
