"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines live.
All tolerances are pinned here; the seeded sample policy is seed 0 with five
points per structure kind.
"""

import numpy as np
import pytest

from hurwitz1 import (
    DerivativeEngine,
    StructureKind,
    check_flatness,
    check_rauch,
    check_unit_field,
    covering_from_branch_points,
    derivative,
    gamma_chazy,
    realness_check,
    run_suite,
    tau_relation_check,
)

from conftest import ALL_KINDS, EQUIANHARMONIC, LEMNISCATIC, random_triples

SEED = 0
SAMPLES = 5


def _report(criterion: str, passed: bool, detail: str) -> None:
    print(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")
    assert passed, f"{criterion}: {detail}"


@pytest.fixture(scope="module")
def suites():
    return {
        skind.kind: run_suite(skind, seed=SEED, samples=SAMPLES, include_kernel_checks=False)
        for skind in ALL_KINDS
    }


def _pull(suites, check_name, residual):
    out = {}
    for kind, reports in suites.items():
        vals = [r.residuals[residual] for r in reports if r.check_name == check_name]
        out[kind] = max(vals) if vals else np.nan
    return out


def test_criterion_1_wdvv(suites):
    worst = _pull(suites, "wdvv", "wdvv")
    passed = all(v < 1e-7 for v in worst.values())
    detail = "WDVV residual < 1e-7 at 5 seeded points per kind; worst " + \
        ", ".join(f"{k}={v:.2e}" for k, v in worst.items())
    _report("criterion 1 (WDVV)", passed, detail)


def test_criterion_2_chazy():
    eng = DerivativeEngine(nodes=64)
    worst = 0.0
    for k in range(10):
        mu = complex(-0.45 + 0.1 * k, 0.85 + 0.06 * k)
        g = gamma_chazy(mu)
        d = [derivative(lambda p: gamma_chazy(p[:, 0]), np.array([mu]), [o], eng, radius=0.25)
             for o in (1, 2, 3)]
        worst = max(worst, abs(d[2] - 6.0 * g * d[1] + 9.0 * d[0] ** 2))
    _report("criterion 2 (Chazy)", worst < 1e-8,
            f"|g''' - 6 g g'' + 9 g'^2| < 1e-8 on a 10-point modulus grid; worst {worst:.2e}")


def test_criterion_3_f1_constant_metric(suites):
    worst_match = _pull(suites, "f1_metric", "f1_vs_metric")
    worst_const = _pull(suites, "wdvv", "f1_constancy")
    passed = all(v < 1e-8 for v in worst_match.values()) and all(v < 1e-8 for v in worst_const.values())
    detail = ("F1 matches -eta and stays constant across distant points to 1e-8; worst match "
              + ", ".join(f"{k}={v:.2e}" for k, v in worst_match.items())
              + "; worst constancy "
              + ", ".join(f"{k}={v:.2e}" for k, v in worst_const.items()))
    _report("criterion 3 (F1 = const = -eta)", passed, detail)


def test_criterion_4_quasihomogeneity(suites):
    worst_dir = _pull(suites, "euler", "euler_directional")
    worst_scale = _pull(suites, "euler", "euler_scaling")
    passed = all(v < 1e-7 for v in worst_dir.values()) and all(v < 1e-8 for v in worst_scale.values())
    detail = ("E(F) = 2F to 1e-7 and F(kappa^nu t) = kappa^2 F to 1e-8; worst directional "
              + ", ".join(f"{k}={v:.2e}" for k, v in worst_dir.items())
              + "; worst scaling "
              + ", ".join(f"{k}={v:.2e}" for k, v in worst_scale.items()))
    _report("criterion 4 (quasihomogeneity)", passed, detail)


def test_criterion_5_getzler(suites):
    worst = {}
    for kind, reports in suites.items():
        vals = []
        for r in reports:
            if r.check_name == "getzler":
                vals.extend(r.residuals.values())
        worst[kind] = max(vals)
    passed = all(v < 1e-7 for v in worst.values())
    detail = ("E(G) = -1/16 (holo-s) and -1/8 (doubles) to 1e-7; worst "
              + ", ".join(f"{k}={v:.2e}" for k, v in worst.items()))
    _report("criterion 5 (Getzler constants)", passed, detail)


def test_criterion_6_flatness():
    triples = [LEMNISCATIC] + random_triples(seed=SEED, count=5)
    worst = 0.0
    for lam in triples:
        res = check_flatness(lam, step=1e-4)
        worst = max(worst, res["flat1"], res["flat2"])
    _report("criterion 6 (kernel flatness)", worst < 1e-6,
            f"max flatness residual over lemniscatic + 5 random triples {worst:.2e} < 1e-6")


def test_criterion_7_rauch():
    triples = [LEMNISCATIC] + random_triples(seed=SEED, count=5)
    worst = 0.0
    for lam in triples:
        res = check_rauch(lam, step=1e-4)
        res.pop("step")
        worst = max(worst, max(res.values()))
    _report("criterion 7 (Rauch variational)", worst < 1e-6,
            f"max residual of dB/dlam and the four kernel variation lines {worst:.2e} < 1e-6")


def test_criterion_8_tau_relations():
    triples = [LEMNISCATIC] + random_triples(seed=SEED, count=3)
    worst_h = 0.0
    worst_int = 0.0
    for lam in triples:
        rep = tau_relation_check(lam)
        worst_h = max(worst_h, rep.residuals["hamiltonian_vs_diag"])
        worst_int = max(worst_int, rep.residuals["tau_integrability"])
    passed = worst_h < 1e-8 and worst_int < 1e-6
    _report("criterion 8 (tau relations)", passed,
            f"H = Omega/4 pointwise {worst_h:.2e} < 1e-8; tau integrability {worst_int:.2e} < 1e-6")


def test_criterion_9_realness():
    lam, lam_ref = random_triples(seed=SEED + 9, count=2)
    worst = 0.0
    for kind in ("double-s", "double-t"):
        rep = realness_check(StructureKind(kind), lam, lam_ref)
        worst = max(worst, rep.residuals["im_F"], rep.residuals["im_G_diff"])
    _report("criterion 9 (realness on images)", worst < 1e-9,
            f"Im F and Im(G difference) on coordinate images {worst:.2e} < 1e-9")


def test_criterion_10_structure_maps():
    mu_lemn = covering_from_branch_points(LEMNISCATIC).mu
    mu_equi = covering_from_branch_points(EQUIANHARMONIC).mu
    mu_ok = abs(mu_lemn - 1j) < 1e-10 and abs(mu_equi - np.exp(1j * np.pi / 3)) < 1e-10
    worst_unit = 0.0
    lam = random_triples(seed=SEED, count=1)[0]
    for skind in ALL_KINDS:
        worst_unit = max(worst_unit, check_unit_field(lam, skind)["unit_shift"],
                         check_unit_field(LEMNISCATIC, skind)["unit_shift"])
    passed = mu_ok and worst_unit < 1e-7
    _report("criterion 10 (structure maps)", passed,
            f"mu(1,0,-1)=i and mu(equianharmonic)=e^(i pi/3) to 1e-10 ({mu_ok}); "
            f"unit-field response residual {worst_unit:.2e} < 1e-7")
