#!/usr/bin/env python3
"""Regenerate src/hurwitz1/data/fixtures.json with independent oracles.

Run from the repository root:

    python tools/make_fixtures.py

All values are computed with mpmath at 40 significant digits and written as
25-digit decimal strings.  The routes are deliberately independent of the
package implementation:

* T1P_I       theta1'(0; mu=i) by the raw q-series at doubled precision
              and truncation depth;
* ETA_I       Dedekind eta(i) by the q-product, cross-checked against the
              closed form Gamma(1/4) / (2 pi^{3/4});
* RF_012      Carlson R_F(0,1,2) by adaptive quadrature of the defining
              integral, cross-checked against mpmath.elliprf;
* ETA1_LEMN   zeta(omega) for the lemniscatic triple (1,0,-1) by the E2
              Lambert series, cross-checked against the exact pi/(4 omega);
* ROT_LEMN    the 6x6 rotation array for (1,0,-1), with the W-values from
              the second log-derivative of theta1 (not the P-quotient used
              in the package);
* S_DIAG_LEMN / OMEGA_DIAG_LEMN   regularized kernel diagonals by the
              numeric limit with Richardson extrapolation in the local
              parameter (not the series transport used in the package);
* T_PT1 / F_S_PT1   a frozen generic double-s point and the prepotential
              value there from an independent transcription of the
              closed form.
"""

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40
I = mp.mpc(0, 1)
PI = mp.pi
OUT = Path(__file__).resolve().parents[1] / "src" / "hurwitz1" / "data" / "fixtures.json"


def E2(mu):
    q2 = mp.exp(2 * I * PI * mu)
    s, qn, n = mp.mpf(0), q2, 1
    while abs(qn) > mp.mpf(10) ** (-mp.mp.dps - 5):
        s += n * qn / (1 - qn)
        qn *= q2
        n += 1
    return 1 - 24 * s


def gamma_chazy(mu):
    q = mp.exp(I * PI * mu)
    return PI * mp.jtheta(1, 0, q, 3) / mp.jtheta(1, 0, q, 1) / (3 * I)


def covering(lams):
    lams = [mp.mpc(x) for x in lams]
    c = sum(lams) / 3
    e = [x - c for x in lams]
    k2 = (e[1] - e[2]) / (e[0] - e[2])
    root = mp.sqrt(e[0] - e[2])
    om = mp.elliprf(0, 1 - k2, 1) / root
    omp = I * mp.elliprf(0, k2, 1) / root
    mu = omp / om
    if mp.im(mu) < 0:
        omp, mu = -omp, -mu
    return om, omp, mu, c, e


def w_log_theta(u, om, mu):
    """W(s_P, s_Q)/(ds ds) = -(d^2/du^2) log theta1(pi u/(2 om); mu)."""
    q = mp.exp(I * PI * mu)
    v = PI * u / (2 * om)
    t0 = mp.jtheta(1, v, q)
    t1 = mp.jtheta(1, v, q, 1)
    t2 = mp.jtheta(1, v, q, 2)
    return -(t2 * t0 - t1**2) / t0**2 * (PI / (2 * om)) ** 2


def wp(z, om, omp):
    mu = omp / om
    q = mp.exp(I * PI * mu)
    v = PI * z / (2 * om)
    e1 = (PI / (2 * om)) ** 2 * (mp.jtheta(3, 0, q) ** 4 + mp.jtheta(4, 0, q) ** 4) / 3
    return e1 + (PI * mp.jtheta(1, 0, q, 1) * mp.jtheta(2, v, q)
                 / (2 * om * mp.jtheta(2, 0, q) * mp.jtheta(1, v, q))) ** 2


def wp_prime(z, om, omp):
    return mp.diff(lambda zz: wp(zz, om, omp), z)


def lemniscatic_rotation():
    lam = [mp.mpc(1), mp.mpc(0), mp.mpc(-1)]
    om, omp, mu, c, e = covering(lam)
    eta1 = PI**2 * E2(mu) / (12 * om)
    g2 = 2 * sum(x**2 for x in e)
    ppd = [6 * x**2 - g2 / 2 for x in e]
    f = [mp.sqrt(2 / p) for p in ppd]
    zs = [om, om + omp, omp]
    im = mp.im(mu)
    ch = 1 / (2 * om)
    cb = mp.conj(ch)
    beta = [[mp.mpc(0) for _ in range(6)] for _ in range(6)]
    for i in range(3):
        for j in range(3):
            if i != j:
                w_val = w_log_theta(zs[i] - zs[j], om, mu)
                beta[i][j] = (w_val - PI / im * ch**2) * f[i] * f[j] / 2
                beta[3 + i][3 + j] = mp.conj(beta[i][j])
            v = PI / im * ch * cb * f[i] * mp.conj(f[j]) / 2
            beta[i][3 + j] = v
            beta[3 + j][i] = v
    # consistency of the log-theta route against int P = -2 eta1 behaviour:
    assert abs(w_log_theta(om, om, mu) - (wp(om, om, omp) + eta1 / om)) < mp.mpf("1e-30")
    return beta, om, omp, mu, e, f, eta1, g2, zs, im


def diag_numeric_limit(om, omp, mu, e, zs, eta1, im, i):
    """S_i and Omega_i by the numeric limit in the x_i frame with Richardson."""
    c_sh = 0  # branch value e_i plays the role of lambda_i - c
    vals = []
    hs = [mp.mpf(10) ** (-k) for k in (4, 5)]
    for x in hs:
        # two preimages of lambda_i + x^2: s = s_i +/- u
        target = e[i] + x**2
        u = x * mp.sqrt(2 / (6 * e[i] ** 2 - (2 * sum(t**2 for t in e)) / 2))
        z = zs[i] + u
        for _ in range(60):
            z = z - (wp(z, om, omp) - target) / wp_prime(z, om, omp)
        zp = 2 * zs[i] - z  # the sheet with x' = -x
        w_val = w_log_theta(z - zp, om, mu)
        dz_dx = (2 * x) / wp_prime(z, om, omp)
        dz_dx_p = (-2 * x) / wp_prime(zp, om, omp)
        vals.append(w_val * dz_dx * dz_dx_p - 1 / (2 * x) ** 2)
    # error is O(x^2): Richardson with ratio 100
    s_i = (100 * vals[1] - vals[0]) / 99
    f_i2 = 2 / (6 * e[i] ** 2 - (2 * sum(t**2 for t in e)) / 2)
    omega_i = s_i - PI / im * f_i2 / (2 * om) ** 2
    return s_i, omega_i


def f_double_s(t):
    t1, t2, t3, t4, t5, t6 = t
    c = 1 / (2 * PI * I)
    out = -t1 * t2**2 / 4 - t1 * t5**2 / 4 + t1**2 * t3 / 2 - t1 * t4 * (2 * t6 - c) / 2
    out += (t2**2 * t4 * (t6 - c) / 4 + t4 * t5**2 * t6 / 4 + t4**2 * t6 * (t6 - c) / 2
            + t2**2 * t5**2 / 16) / t3
    out += t2**4 / 32 * (-1 / (4 * PI * I * t6**2) * gamma_chazy(t3 / t6) + 1 / t3
                         - 1 / (2 * PI * I * t3 * t6))
    out += t5**4 / 32 * (-PI * I / (2 * PI * I * t6 - 1) ** 2
                         * gamma_chazy(2 * PI * I * t3 / (1 - 2 * PI * I * t6))
                         + 1 / t3 + 1 / (t3 * (2 * PI * I * t6 - 1)))
    return out


def fmt(x):
    x = mp.mpc(x)
    return {"re": mp.nstr(mp.re(x), 25, strip_zeros=False),
            "im": mp.nstr(mp.im(x), 25, strip_zeros=False)}


def main():
    out = {"_meta": {"version": 1, "digits": 25, "generator": "tools/make_fixtures.py"}}

    q = mp.exp(-PI)
    t1p = mp.jtheta(1, 0, q, 1)
    out["T1P_I"] = fmt(t1p)

    eta_i = mp.exp(I * PI * I / 12)
    n = 1
    while True:
        q2n = mp.exp(2 * I * PI * I * n)
        eta_i *= 1 - q2n
        if abs(q2n) < mp.mpf(10) ** (-mp.mp.dps - 5):
            break
        n += 1
    assert abs(eta_i - mp.gamma(mp.mpf(1) / 4) / (2 * PI ** mp.mpf("0.75"))) < mp.mpf("1e-35")
    out["ETA_I"] = fmt(eta_i)

    # defining integral (1/2) int dt / sqrt(t (t+1) (t+2)) with t = u^2
    rf_quad = mp.quad(lambda u: 1 / mp.sqrt((u**2 + 1) * (u**2 + 2)), [0, 1, mp.inf])
    assert abs(rf_quad - mp.elliprf(0, 1, 2)) < mp.mpf("1e-30")
    out["RF_012"] = fmt(rf_quad)

    beta, om, omp, mu, e, f, eta1, g2, zs, im = lemniscatic_rotation()
    assert abs(eta1 - PI / (4 * om)) < mp.mpf("1e-35")
    out["ETA1_LEMN"] = fmt(eta1)
    out["OMEGA_LEMN"] = fmt(om)
    for i in range(6):
        for j in range(6):
            out[f"ROT_LEMN_{i}_{j}"] = fmt(beta[i][j])
    for i in range(3):
        s_i, omega_i = diag_numeric_limit(om, omp, mu, e, zs, eta1, im, i)
        out[f"S_DIAG_LEMN_{i}"] = fmt(s_i)
        out[f"OMEGA_DIAG_LEMN_{i}"] = fmt(omega_i)

    # frozen generic double-s point: image of mu data plus fixed offsets
    mu_pt = mp.mpc("0.31", "1.23")
    mub_pt = mp.mpc("0.11", "-0.87")
    t_pt = [mp.mpc("0.4", "0.2"), mp.mpc("-0.3", "0.7"),
            mu_pt * mub_pt / (mub_pt - mu_pt) / (2 * PI * I),
            mp.mpc("0.25", "-0.33"), mp.mpc("0.6", "0.11"),
            mub_pt / (mub_pt - mu_pt) / (2 * PI * I)]
    for k, v in enumerate(t_pt):
        out[f"T_PT1_{k}"] = fmt(v)
    out["F_S_PT1"] = fmt(f_double_s(t_pt))

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(out, indent=1) + "\n")
    print(f"wrote {OUT} ({len(out) - 1} fixtures)")


if __name__ == "__main__":
    main()
