"""Bidifferentials on the torus and their evaluations at ramification points.

In the flat coordinate s of the torus the three kernels have elementary
coefficient functions (values are always reported relative to the stated
frames):

* W(P,Q)/(ds_P ds_Q)       = P(s_P - s_Q) + eta1/omega
* Omega(P,Q)/(ds_P ds_Q)   = W/(ds ds) - pi/Im(B) * (1/2w)^2
* B(P,Qbar)/(ds_P dsbar_Q) = pi/Im(B) * (1/2w) * (1/2wbar)

with the normalized holomorphic differential ds/(2w) and period matrix
B = mu.  The additive constant eta1/omega in W is what makes its a-periods
vanish.

The rotation-coefficient array treats the branch points and their conjugates
as independent coordinates: every barred quantity is a function of an
independent triple ``lam_tilde`` through

    bar(h)(lam_tilde) := conj( h( conj(lam_tilde) ) ),

which on the real slice ``lam_tilde = conj(lam)`` reduces to ordinary
conjugation.  A finite difference with respect to a barred coordinate
perturbs only ``lam_tilde``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import PoleError, PrecisionError, PrecisionWarning
from .specialfn import DEFAULT_SERIES, SeriesConfig, weierstrass_p
from .torus_cover import TorusCovering, covering_from_branch_points, local_frame

__all__ = [
    "RotationData",
    "w_kernel",
    "schiffer_kernel",
    "bergman_kernel",
    "rotation_data",
    "check_flatness",
    "check_rauch",
    "hamiltonians",
    "cycle_integral",
    "bergman_reproducing_residual",
]


# ---------------------------------------------------------------------------
# split holomorphic / antiholomorphic covering data


@dataclass(frozen=True)
class _HalfData:
    """One analytic half of the covering data (functions of one triple only).

    For the barred half the stored fields are already the bar-continued
    values; ``cov`` keeps the underlying (unconjugated) covering used to
    evaluate elliptic functions before conjugation.
    """

    lam: tuple
    omega: complex
    mu: complex
    e: tuple
    f: tuple
    eta1: complex
    ram: tuple
    cov: TorusCovering
    barred: bool = False

    def w_ram(self, i: int, j: int, cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
        """W(P_i,P_j) in s-frames (bar-continued on the barred half)."""
        c = self.cov
        val = weierstrass_p(c.ram_points[i] - c.ram_points[j], c.omega, c.omega_prime, 0, cfg) + c.eta1 / c.omega
        return np.conj(val) if self.barred else val


def _half_data(lam, cfg: SeriesConfig = DEFAULT_SERIES) -> _HalfData:
    cov = covering_from_branch_points(lam, cfg=cfg)
    fr = local_frame(cov)
    return _HalfData(tuple(lam), cov.omega, cov.mu, cov.e, fr.dzeta_dx, cov.eta1, cov.ram_points, cov)


def _bar_half(lam_tilde, cfg: SeriesConfig = DEFAULT_SERIES) -> _HalfData:
    h = _half_data(tuple(np.conj(x) for x in lam_tilde), cfg)
    return _HalfData(
        tuple(lam_tilde),
        np.conj(h.omega),
        np.conj(h.mu),
        tuple(np.conj(x) for x in h.e),
        tuple(np.conj(x) for x in h.f),
        np.conj(h.eta1),
        tuple(np.conj(x) for x in h.ram),
        h.cov,
        barred=True,
    )


# ---------------------------------------------------------------------------
# kernels at generic points (values in the stated frames)


def w_kernel(cov: TorusCovering, zeta_p, zeta_q, cfg: SeriesConfig = DEFAULT_SERIES):
    """W(P,Q)/(ds_P ds_Q) = P(s_P - s_Q) + eta1/omega."""
    diff = np.asarray(zeta_p) - np.asarray(zeta_q)
    return weierstrass_p(diff, cov.omega, cov.omega_prime, 0, cfg) + cov.eta1 / cov.omega


def schiffer_kernel(cov: TorusCovering, zeta_p, zeta_q, cfg: SeriesConfig = DEFAULT_SERIES):
    """Omega(P,Q)/(ds_P ds_Q): W minus the pi/Im(mu) holomorphic correction."""
    return w_kernel(cov, zeta_p, zeta_q, cfg) - np.pi / cov.mu.imag * (0.5 / cov.omega) ** 2


def bergman_kernel(cov: TorusCovering, zeta_p=None, zeta_q_conj=None) -> complex:
    """B(P,Qbar)/(ds_P dsbar_Q); constant in both arguments on a torus."""
    return complex(np.pi / cov.mu.imag * (0.5 / cov.omega) * (0.5 / np.conj(cov.omega)))


# ---------------------------------------------------------------------------
# rotation coefficients and diagonal constants


@dataclass(frozen=True)
class RotationData:
    """Kernel data at ramification points over indices (1,2,3,1bar,2bar,3bar).

    ``beta`` is the symmetric 6x6 array with blocks
    ``beta[i,j] = Omega(P_i,P_j)/2``, ``beta[i,3+j] = B(P_i,Pbar_j)/2`` and
    ``beta[3+i,3+j] = conj(beta[i,j])``, all in the x_i frames; the diagonals
    of the pure blocks are unused and left at zero.  ``s_diag`` and
    ``omega_diag`` hold the regularized diagonal values of W and of the
    Schiffer kernel in the x_i frames.
    """

    beta: np.ndarray
    omega_diag: np.ndarray
    s_diag: np.ndarray


def _series_invert(c):
    """Invert x = c1 u + c2 u^2 + c3 u^3 + c4 u^4 to u = a1 x + ... + a4 x^4."""
    c1, c2, c3, c4 = c
    a1 = 1.0 / c1
    a2 = -c2 / c1**3
    a3 = (2.0 * c2**2 - c1 * c3) / c1**5
    a4 = (-5.0 * c2**3 + 5.0 * c1 * c2 * c3 - c1**2 * c4) / c1**7
    return a1, a2, a3, a4


def _s_diag_one(e_i, g2, eta1, omega) -> complex:
    """Regularized diagonal of W at one ramification point, x_i frame.

    Transports the s-frame constant eta1/omega by the projective-connection
    law 6 S_x = 6 S_s (ds/dx)^2 + {s, x}; the Schwarzian comes from the
    series inversion of x = sqrt(P(s) - e_i) around the half-period, where
    lambda - lambda_i = A u^2 + B u^3 + C u^4 + O(u^5) with u = s - s_i.
    """
    ppd = 6.0 * e_i**2 - g2 / 2.0
    A = ppd / 2.0
    B = 0.0  # P'''(s_i) = 12 P P' vanishes at a half-period
    C = 12.0 * e_i * ppd / 24.0
    sA = np.sqrt(complex(A))
    c1 = sA
    c2 = sA * B / (2.0 * A)
    c3 = sA * (C / (2.0 * A) - B**2 / (8.0 * A**2))
    c4 = 0.0
    a1, a2, a3, _ = _series_invert((c1, c2, c3, c4))
    schwarzian = 6.0 * a3 / a1 - 6.0 * (a2 / a1) ** 2
    return complex((eta1 / omega) * a1**2 + schwarzian / 6.0)


def _beta_split(h: _HalfData, b: _HalfData, cfg: SeriesConfig = DEFAULT_SERIES):
    """(beta, omega_diag, s_diag, omega_diag_bar) for independent halves."""
    im_b = (h.mu - b.mu) / 2j
    ch = 0.5 / h.omega
    cb = 0.5 / b.omega
    beta = np.zeros((6, 6), dtype=complex)
    for i in range(3):
        for j in range(3):
            if i < j:  # one evaluation per pair keeps the blocks exactly symmetric
                w_h = 0.5 * (h.w_ram(i, j, cfg) - np.pi / im_b * ch * ch) * h.f[i] * h.f[j]
                beta[i, j] = beta[j, i] = w_h
                w_b = 0.5 * (b.w_ram(i, j, cfg) - np.pi / im_b * cb * cb) * b.f[i] * b.f[j]
                beta[3 + i, 3 + j] = beta[3 + j, 3 + i] = w_b
            v = 0.5 * np.pi / im_b * ch * cb * h.f[i] * b.f[j]
            beta[i, 3 + j] = v
            beta[3 + j, i] = v
    g2_h = 2.0 * sum(x**2 for x in h.e)
    g2_b = 2.0 * sum(x**2 for x in b.e)
    s_diag = np.array([_s_diag_one(h.e[i], g2_h, h.eta1, h.omega) for i in range(3)])
    s_diag_bar = np.array([_s_diag_one(b.e[i], g2_b, b.eta1, b.omega) for i in range(3)])
    fh = np.array(h.f)
    fb = np.array(b.f)
    omega_diag = s_diag - np.pi / im_b * (ch * fh) ** 2
    omega_diag_bar = s_diag_bar - np.pi / im_b * (cb * fb) ** 2
    return beta, omega_diag, s_diag, omega_diag_bar


def rotation_data(cov: TorusCovering, cfg: SeriesConfig = DEFAULT_SERIES) -> RotationData:
    """Rotation coefficients and diagonal constants on the real slice."""
    h = _half_data(cov.branch_points, cfg)
    b = _bar_half(tuple(np.conj(x) for x in cov.branch_points), cfg)
    beta, omega_diag, s_diag, _ = _beta_split(h, b, cfg)
    # on the real slice the barred block is the conjugate of the plain block
    # identically; enforce it exactly
    beta[3:, 3:] = np.conj(beta[:3, :3])
    return RotationData(beta, omega_diag, s_diag)


def _beta_of(lam, lam_tilde, cfg: SeriesConfig = DEFAULT_SERIES):
    return _beta_split(_half_data(lam, cfg), _bar_half(lam_tilde, cfg), cfg)


# ---------------------------------------------------------------------------
# finite-difference verification of the flatness system


def _fd_beta(lam, lam_tilde, k: int, step: float, cfg) -> np.ndarray:
    """Central difference of beta in direction k (0..2 plain, 3..5 barred)."""
    lp, ltp = list(lam), list(lam_tilde)
    lm, ltm = list(lam), list(lam_tilde)
    if k < 3:
        lp[k] += step
        lm[k] -= step
    else:
        ltp[k - 3] += step
        ltm[k - 3] -= step
    return (_beta_of(lp, ltp, cfg)[0] - _beta_of(lm, ltm, cfg)[0]) / (2.0 * step)


def _flatness_residuals(lam, lam_tilde, step, cfg):
    beta0 = _beta_of(lam, lam_tilde, cfg)[0]
    dbeta = [_fd_beta(lam, lam_tilde, k, step, cfg) for k in range(6)]
    flat1 = 0.0
    for k in range(6):
        for i in range(6):
            for j in range(6):
                if i == j or i == k or j == k:
                    continue
                flat1 = max(flat1, abs(dbeta[k][i, j] - beta0[i, k] * beta0[k, j]))
    off = ~np.eye(6, dtype=bool)
    flat2 = float(np.max(np.abs(sum(dbeta)[off])))
    eps = step
    bp = _beta_of([x * (1 + eps) for x in lam], [x * (1 + eps) for x in lam_tilde], cfg)[0]
    bm = _beta_of([x * (1 - eps) for x in lam], [x * (1 - eps) for x in lam_tilde], cfg)[0]
    euler = float(np.max(np.abs(((bp - bm) / (2.0 * eps) + beta0)[off])))
    return {"flat1": float(flat1), "flat2": flat2, "euler_beta": euler}


def check_flatness(branch_points, step: float = 1e-4, cfg: SeriesConfig = DEFAULT_SERIES) -> dict:
    """Residuals of the Darboux-Egoroff system for the rotation coefficients.

    ``flat1``: max |d_k beta_ij - beta_ik beta_kj| over distinct index
    triples in {1,2,3,1bar,2bar,3bar}; ``flat2``: max |sum_k d_k beta_ij|;
    ``euler_beta``: max |E(beta_ij) + beta_ij| from a scaling difference.
    Derivatives are central differences with absolute step ``step * scale``;
    a half-step pass guards against roundoff domination.
    """
    lam = tuple(complex(x) for x in branch_points)
    lam_tilde = tuple(np.conj(x) for x in lam)
    cov = covering_from_branch_points(lam, cfg=cfg)
    h = step * cov.scale
    res = _flatness_residuals(lam, lam_tilde, h, cfg)
    res_half = _flatness_residuals(lam, lam_tilde, h / 2.0, cfg)
    if res_half["flat1"] > 4.0 * res["flat1"] + 1e-12:
        warnings.warn(
            "flatness residual grows under step halving; roundoff may dominate",
            PrecisionWarning,
            stacklevel=2,
        )
    res["flat1_halfstep"] = res_half["flat1"]
    res["step"] = h
    return res


# ---------------------------------------------------------------------------
# Rauch and kernel variational checks


def _invert_lambda(cov: TorusCovering, lam_val: complex, guess: complex | None = None,
                   cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """Solve P(s) + c = lam_val by Newton, with a coarse-grid start if needed."""
    if guess is None:
        best, bestv = None, np.inf
        for a in np.linspace(0.08, 0.92, 11):
            for bb in np.linspace(0.08, 0.92, 11):
                z = 2.0 * a * cov.omega + 2.0 * bb * cov.omega_prime
                try:
                    v = abs(weierstrass_p(z, cov.omega, cov.omega_prime, 0, cfg) + cov.c - lam_val)
                except PoleError:
                    continue
                if v < bestv:
                    best, bestv = z, v
        guess = best
    z = complex(guess)
    for _ in range(60):
        fz = weierstrass_p(z, cov.omega, cov.omega_prime, 0, cfg) + cov.c - lam_val
        if abs(fz) < 1e-13 * max(1.0, abs(lam_val)):
            return z
        z = z - fz / weierstrass_p(z, cov.omega, cov.omega_prime, 1, cfg)
    raise PrecisionError(f"lambda inversion did not converge for {lam_val}")


class _KernelState:
    """Kernels at fixed lambda-projections of two points, in d(lambda) frames.

    The moving points P, Q sit at fixed projections lam_p, lam_q on the
    holomorphic sheet; their barred images sit at fixed projections
    conj(lam_p), conj(lam_q) on the barred cover built from ``lam_tilde``.
    """

    def __init__(self, lam, lam_tilde, lam_p, lam_q, cfg=DEFAULT_SERIES,
                 zp_guess=None, zq_guess=None, zqb_guess=None):
        h = _half_data(lam, cfg)
        b = _bar_half(lam_tilde, cfg)
        self.h, self.b = h, b
        self.im_b = (h.mu - b.mu) / 2j
        ch = 0.5 / h.omega
        cb = 0.5 / b.omega
        cov = h.cov
        self.zp = _invert_lambda(cov, lam_p, zp_guess, cfg)
        self.zq = _invert_lambda(cov, lam_q, zq_guess, cfg)
        dlp = weierstrass_p(self.zp, cov.omega, cov.omega_prime, 1, cfg)
        dlq = weierstrass_p(self.zq, cov.omega, cov.omega_prime, 1, cfg)
        # barred image of Q on the barred cover, at projection conj(lam_q)
        covb = b.cov
        self.zqb = _invert_lambda(covb, np.conj(lam_q), zqb_guess, cfg)
        dlqb = np.conj(weierstrass_p(self.zqb, covb.omega, covb.omega_prime, 1, cfg))
        self.mu = h.mu
        w_s = weierstrass_p(self.zp - self.zq, cov.omega, cov.omega_prime, 0, cfg) + h.eta1 / h.omega
        self.w = w_s / (dlp * dlq)
        self.om = (w_s - np.pi / self.im_b * ch**2) / (dlp * dlq)
        self.b_val = np.pi / self.im_b * (ch / dlp) * (cb / dlqb)
        om_ram = [
            (weierstrass_p(z - h.ram[j], cov.omega, cov.omega_prime, 0, cfg) + h.eta1 / h.omega
             - np.pi / self.im_b * ch**2)
            for z in (self.zp, self.zq) for j in range(3)
        ]
        self.om_pj = [om_ram[j] * h.f[j] / dlp for j in range(3)]
        self.om_qj = [om_ram[3 + j] * h.f[j] / dlq for j in range(3)]
        self.b_pj = [np.pi / self.im_b * (ch / dlp) * cb * b.f[j] for j in range(3)]
        self.b_qj = [np.pi / self.im_b * (ch / dlq) * cb * b.f[j] for j in range(3)]
        self.b_jq = [np.pi / self.im_b * (ch * h.f[j]) * (cb / dlqb) for j in range(3)]
        # bar-continued Omega(Qbar, Pbar_j) in (dbarlam_Q, xbar_j) frames
        self.om_bar_qj = []
        for j in range(3):
            w_bar = np.conj(
                weierstrass_p(self.zqb - covb.ram_points[j], covb.omega, covb.omega_prime, 0, cfg)
                + covb.eta1 / covb.omega
            )
            self.om_bar_qj.append((w_bar - np.pi / self.im_b * cb**2) * b.f[j] / dlqb)


def _default_projections(cov: TorusCovering):
    r = 2.2 * cov.scale
    return cov.c + r * np.exp(0.7j), cov.c + r * np.exp(2.3j)


def check_rauch(branch_points, step: float = 1e-4, cfg: SeriesConfig = DEFAULT_SERIES) -> dict:
    """Residuals of the Rauch and kernel variational formulas.

    Central finite differences at fixed lambda-projections verify
    d(mu)/d(lam_j) = i pi w1(P_j)^2, that mu has no barred dependence, and
    the four variational lines for the Schiffer and Bergman kernels at one
    off-diagonal pair (P, Q).
    """
    lam = tuple(complex(x) for x in branch_points)
    lam_tilde = tuple(np.conj(x) for x in lam)
    cov = covering_from_branch_points(lam, cfg=cfg)
    h = step * cov.scale
    lam_p, lam_q = _default_projections(cov)
    base = _KernelState(lam, lam_tilde, lam_p, lam_q, cfg)

    def state(l, lt):
        return _KernelState(l, lt, lam_p, lam_q, cfg, base.zp, base.zq, base.zqb)

    res = dict.fromkeys(
        ["dmu_dlam", "dmu_dlambar", "dOmega_dlam", "dOmega_dlambar", "dB_dlam", "dB_dlambar"], 0.0
    )
    ch = 0.5 / cov.omega
    for j in range(3):
        lp, lm = list(lam), list(lam)
        lp[j] += h
        lm[j] -= h
        sp, sm = state(lp, lam_tilde), state(lm, lam_tilde)
        dmu = (sp.mu - sm.mu) / (2.0 * h)
        res["dmu_dlam"] = max(res["dmu_dlam"], abs(dmu - 1j * np.pi * (base.h.f[j] * ch) ** 2))
        d_om = (sp.om - sm.om) / (2.0 * h)
        res["dOmega_dlam"] = max(res["dOmega_dlam"], abs(d_om - 0.5 * base.om_pj[j] * base.om_qj[j]))
        d_b = (sp.b_val - sm.b_val) / (2.0 * h)
        res["dB_dlam"] = max(res["dB_dlam"], abs(d_b - 0.5 * base.om_pj[j] * base.b_jq[j]))
        ltp, ltm = list(lam_tilde), list(lam_tilde)
        ltp[j] += h
        ltm[j] -= h
        sbp, sbm = state(lam, ltp), state(lam, ltm)
        res["dmu_dlambar"] = max(res["dmu_dlambar"], abs((sbp.mu - sbm.mu) / (2.0 * h)))
        d_om_b = (sbp.om - sbm.om) / (2.0 * h)
        res["dOmega_dlambar"] = max(res["dOmega_dlambar"], abs(d_om_b - 0.5 * base.b_pj[j] * base.b_qj[j]))
        d_b_b = (sbp.b_val - sbm.b_val) / (2.0 * h)
        res["dB_dlambar"] = max(res["dB_dlambar"], abs(d_b_b - 0.5 * base.b_pj[j] * base.om_bar_qj[j]))
    res = {k: float(v) for k, v in res.items()}
    res["step"] = h
    return res


# ---------------------------------------------------------------------------
# isomonodromic Hamiltonians


def hamiltonians(cov: TorusCovering, cfg: SeriesConfig = DEFAULT_SERIES):
    """H_i and H_ibar built from the rotation coefficients.

    H_i = (1/2) sum_{j != i} beta_ij^2 (l_i - l_j)
        + (1/2) sum_j beta_{i,jbar}^2 (l_i - lbar_j),
    and the conjugate-index analogue.
    """
    rot = rotation_data(cov, cfg)
    lam = np.array(cov.branch_points)
    lam_b = np.conj(lam)
    H = np.zeros(3, dtype=complex)
    Hb = np.zeros(3, dtype=complex)
    for i in range(3):
        for j in range(3):
            if j != i:
                H[i] += 0.5 * rot.beta[i, j] ** 2 * (lam[i] - lam[j])
                Hb[i] += 0.5 * rot.beta[3 + i, 3 + j] ** 2 * (lam_b[i] - lam_b[j])
            H[i] += 0.5 * rot.beta[i, 3 + j] ** 2 * (lam[i] - lam_b[j])
            Hb[i] += 0.5 * rot.beta[3 + i, j] ** 2 * (lam_b[i] - lam[j])
    return H, Hb


# ---------------------------------------------------------------------------
# quadrature helpers (used by period/property tests and the CLI)


def cycle_integral(cov: TorusCovering, values_fn, cycle: str = "a", nodes: int = 256, offset=None) -> complex:
    """Trapezoid integral of a lattice-periodic function along a cycle.

    ``values_fn(s)`` receives an array of points on the straight path
    x0 -> x0 + period.  By default x0 offsets the path by half of the other
    period, which keeps it away from poles at lattice translates of the
    ramification points and of any marked point on the opposite cycle.
    """
    period = 2.0 * cov.omega if cycle == "a" else 2.0 * cov.omega_prime
    other = 2.0 * cov.omega_prime if cycle == "a" else 2.0 * cov.omega
    x0 = 0.5 * other if offset is None else offset
    t = np.arange(nodes) / nodes
    vals = np.asarray(values_fn(x0 + t * period))
    return complex(np.mean(vals) * period)


def bergman_reproducing_residual(cov: TorusCovering) -> float:
    """Deviation of (1/2 pi i) iint B(P,Qbar) w1(Q) from w1(P).

    The double integral reduces in closed form to
    |w1_hat|^2 * Area / Im(mu) with w1_hat = 1/(2w) and the cell area
    4|w|^2 Im(mu) in the s coordinate; the residual is the distance of that
    ratio from 1, evaluated with the package's own constants.
    """
    area = 4.0 * abs(cov.omega) ** 2 * cov.mu.imag
    w1_sq = abs(0.5 / cov.omega) ** 2
    return float(abs(w1_sq * area / cov.mu.imag - 1.0))
