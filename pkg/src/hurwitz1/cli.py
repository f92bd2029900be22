"""Command-line front end: verify suites, evaluate functions, emit reports.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
domain error.  Complex literals are parsed as ``a+bi`` (optional spaces,
``i`` or ``j`` suffix); points and branch triples are comma-separated lists.
Reports serialize residuals as 17-significant-digit decimal strings so that
identical invocations reproduce identical files.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys

import numpy as np

from . import __version__
from ._fixtures import ENV_VAR, fixtures_path, load_fixtures
from .errors import DomainError
from .frobenius import KINDS, StructureKind, check_unit_field, flat_coordinates
from .kernels import check_flatness, check_rauch
from .prepotential import DEFAULT_ENGINE, DerivativeEngine, eval_F, eval_G
from .specialfn import carlson_rf, dedekind_eta, gamma_chazy, theta1, weierstrass_p
from .torus_cover import covering_from_branch_points
from .wdvv import DEFAULT_TOLERANCES, VerificationReport, run_suite, tau_relation_check

SCHEMA_VERSION = 1

def parse_complex(text: str) -> complex:
    """Parse 'a+bi' with optional spaces; bare reals and bare imaginaries allowed.

    The imaginary unit may be written ``i`` or ``j``; the unit symbol never
    collides with the exponent marker ``e``, so a plain substitution feeds
    Python's own complex parser.
    """
    s = text.strip().replace(" ", "").replace("i", "j").replace("I", "j").replace("J", "j")
    if not s:
        raise DomainError("empty complex literal")
    try:
        return complex(s)
    except ValueError:
        raise DomainError(f"malformed complex literal: {text!r}") from None


def parse_point(text: str):
    return [parse_complex(tok) for tok in text.split(",") if tok.strip() != ""]


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_complex(z: complex):
    return {"re": _fmt(z.real), "im": _fmt(z.imag)}


def report_to_dict(rep: VerificationReport) -> dict:
    return {
        "check_name": rep.check_name,
        "kind": rep.kind,
        "seed": rep.seed,
        "point": [_fmt_complex(z) for z in rep.point],
        "residuals": {k: _fmt(v) for k, v in rep.residuals.items()},
        "tolerance": _fmt(rep.tolerance),
        "passed": rep.passed,
        "engine": {k: (v if isinstance(v, str) else _fmt(v)) for k, v in rep.engine.items()},
        "notes": _jsonable(rep.notes),
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return _fmt_complex(obj)
    if isinstance(obj, (np.floating, float)):
        return _fmt(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    return obj


def _document(command: str, config: dict, reports: list) -> dict:
    summary = {
        "checks": len(reports),
        "passed": sum(1 for r in reports if r.passed),
        "failed": sum(1 for r in reports if not r.passed),
    }
    return {
        "schema_version": SCHEMA_VERSION,
        "package_version": __version__,
        "command": command,
        "config": _jsonable(config),
        "checks": [report_to_dict(r) for r in reports],
        "summary": summary,
    }


def _emit(doc: dict, fmt: str, output: str | None) -> None:
    if fmt == "json":
        text = json.dumps(doc, indent=1, sort_keys=False) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["check_name", "kind", "seed", "residual", "value", "tolerance", "passed"])
        for chk in doc["checks"]:
            for name, value in chk["residuals"].items():
                writer.writerow([chk["check_name"], chk["kind"], chk["seed"],
                                 name, value, chk["tolerance"], chk["passed"]])
        text = buf.getvalue()
    else:
        lines = [f"{doc['command']}: {doc['summary']['passed']}/{doc['summary']['checks']} checks passed"]
        for chk in doc["checks"]:
            status = "PASS" if chk["passed"] else "FAIL"
            worst = max(float(v) for v in chk["residuals"].values()) if chk["residuals"] else 0.0
            lines.append(f"  [{status}] {chk['check_name']:<14} kind={chk['kind']:<12} "
                         f"max_residual={worst:.3e} tol={float(chk['tolerance']):.1e}")
        text = "\n".join(lines) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_tolerances(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise DomainError(f"tolerance override must look like name=value, got {item!r}")
        name, value = item.split("=", 1)
        name = name.strip()
        if name not in DEFAULT_TOLERANCES:
            raise DomainError(f"unknown tolerance {name!r}; known: {sorted(DEFAULT_TOLERANCES)}")
        out[name] = float(value)
    return out


def _engine_from_args(args) -> DerivativeEngine:
    return DerivativeEngine(radius=args.radius, nodes=args.nodes, cross_scheme=args.cross_scheme)


def _add_engine_args(p):
    p.add_argument("--nodes", type=int, default=DEFAULT_ENGINE.nodes, help="Cauchy nodes per circle")
    p.add_argument("--radius", type=float, default=DEFAULT_ENGINE.radius, help="Cauchy radius cap")
    p.add_argument("--cross-scheme", choices=["nested_cauchy", "mixed_central"],
                   default="nested_cauchy", help="mixed-partial scheme")


def _add_output_args(p):
    p.add_argument("--output", help="write the report to this path (default: stdout)")
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hurwitz1",
        description="Genus-1 Hurwitz Frobenius structures: verification and evaluation.",
        epilog=f"The fixture file path can be overridden with the {ENV_VAR} environment variable.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the verification suites")
    v.add_argument("--kind", choices=list(KINDS) + ["all"], default="all")
    v.add_argument("--sigma", type=parse_complex, default=1.0 + 0.0j)
    v.add_argument("--samples", type=int, default=5)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tolerance", action="append", metavar="NAME=VALUE",
                   help="override a named tolerance (repeatable)")
    v.add_argument("--skip-kernels", action="store_true",
                   help="skip the kernel-level (flatness/Rauch/tau) checks")
    _add_engine_args(v)
    _add_output_args(v)

    e = sub.add_parser("eval", help="evaluate F, G, or flat coordinates at a point")
    e.add_argument("--kind", choices=list(KINDS), required=True)
    e.add_argument("--sigma", type=parse_complex, default=1.0 + 0.0j)
    e.add_argument("--what", choices=["F", "G", "coords"], default="F")
    e.add_argument("--point", help="comma-separated complex coordinates (for F, G)")
    e.add_argument("--branch", help="comma-separated branch triple (for coords)")
    e.add_argument("--t6-exponent", choices=["sec7", "intro"], default="sec7")
    _add_output_args(e)

    k = sub.add_parser("kernels", help="kernel-level residual checks at a branch triple")
    k.add_argument("--branch", required=True, help="comma-separated branch triple")
    k.add_argument("--check", choices=["flatness", "rauch", "tau", "unit", "all"], default="all")
    k.add_argument("--kind", choices=list(KINDS), default="holo-s",
                   help="structure kind for the unit-field check")
    k.add_argument("--sigma", type=parse_complex, default=1.0 + 0.0j)
    k.add_argument("--step", type=float, default=1e-4)
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--tolerance", action="append", metavar="NAME=VALUE")
    _add_output_args(k)

    f = sub.add_parser("fixtures", help="export the oracle fixture file and check it")
    f.add_argument("--output", help="also write a copy of the fixture JSON here")
    f.add_argument("--format", choices=["json", "csv", "text"], default="text")
    return ap


def _kinds_from(args):
    names = list(KINDS) if args.kind == "all" else [args.kind]
    return [StructureKind(n, args.sigma if n == "double-combo" else 1.0) for n in names]


def cmd_verify(args) -> int:
    eng = _engine_from_args(args)
    tols = _parse_tolerances(args.tolerance)
    reports = []
    include_kernels = not args.skip_kernels
    for skind in _kinds_from(args):
        reports.extend(run_suite(
            skind, seed=args.seed, samples=args.samples, eng=eng,
            tolerances=tols, include_kernel_checks=include_kernels,
        ))
        if args.kind == "all":
            include_kernels = False  # the kernel checks are kind-independent
    config = {"kind": args.kind, "sigma": args.sigma, "samples": args.samples,
              "seed": args.seed, "tolerances": tols, "engine": dataclasses.asdict(eng)}
    doc = _document("verify", config, reports)
    _emit(doc, args.format, args.output)
    return 0 if all(r.passed for r in reports) else 1


def cmd_eval(args) -> int:
    skind = StructureKind(args.kind, args.sigma if args.kind == "double-combo" else 1.0)
    if args.what == "coords":
        if not args.branch:
            raise DomainError("eval --what coords requires --branch")
        cov = covering_from_branch_points(parse_point(args.branch))
        t = flat_coordinates(cov, skind).t
        out = {"coords": [_fmt_complex(complex(z)) for z in t],
               "mu": _fmt_complex(cov.mu), "c": _fmt_complex(cov.c)}
    else:
        if not args.point:
            raise DomainError("eval --what F/G requires --point")
        t = np.array(parse_point(args.point), dtype=complex)
        if t.size != skind.dim:
            raise DomainError(f"{skind.kind} expects {skind.dim} coordinates, got {t.size}")
        if args.what == "F":
            val = eval_F(skind, t)
        else:
            val = eval_G(skind, t, t6_exponent=args.t6_exponent)
        out = {"value": _fmt_complex(complex(val))}
    doc = {"schema_version": SCHEMA_VERSION, "command": "eval",
           "config": _jsonable({"kind": args.kind, "sigma": args.sigma, "what": args.what,
                                "point": args.point, "branch": args.branch}),
           "result": out}
    if args.format == "json" or args.output:
        text = json.dumps(doc, indent=1) + "\n"
        if args.output:
            open(args.output, "w").write(text)
        else:
            sys.stdout.write(text)
    else:
        if "value" in out:
            sys.stdout.write(f"{out['value']['re']} + {out['value']['im']} i\n")
        else:
            for z in out["coords"]:
                sys.stdout.write(f"{z['re']} + {z['im']} i\n")
    return 0


def cmd_kernels(args) -> int:
    branch = parse_point(args.branch)
    if len(branch) != 3:
        raise DomainError("kernels requires exactly three branch points")
    tols = dict(DEFAULT_TOLERANCES)
    tols.update(_parse_tolerances(args.tolerance))
    reports = []
    if args.check in ("flatness", "all"):
        res = check_flatness(branch, step=args.step)
        step = res.pop("step")
        reports.append(VerificationReport.build(
            "flatness", "kernels", branch, res, tols["flatness"], seed=args.seed,
            notes={"step": float(step)}))
    if args.check in ("rauch", "all"):
        res = check_rauch(branch, step=args.step)
        step = res.pop("step")
        reports.append(VerificationReport.build(
            "rauch", "kernels", branch, res, tols["rauch"], seed=args.seed,
            notes={"step": float(step)}))
    if args.check in ("tau", "all"):
        reports.append(tau_relation_check(branch, step=args.step, seed=args.seed,
                                          tolerance=tols["tau"],
                                          hamiltonian_tolerance=tols["tau_hamiltonian"]))
    if args.check in ("unit", "all"):
        skind = StructureKind(args.kind, args.sigma if args.kind == "double-combo" else 1.0)
        res = check_unit_field(branch, skind)
        delta = res.pop("delta")
        reports.append(VerificationReport.build(
            "unit_field", skind.kind, branch, res, tols["unit_field"], seed=args.seed,
            notes={"delta": float(delta)}))
    config = {"branch": args.branch, "check": args.check, "step": args.step, "seed": args.seed}
    doc = _document("kernels", config, reports)
    _emit(doc, args.format, args.output)
    return 0 if all(r.passed for r in reports) else 1


def cmd_fixtures(args) -> int:
    table = load_fixtures()
    residuals = {}
    residuals["theta1_prime_at_i"] = abs(theta1(0.0, 1j, 1) - table["T1P_I"])
    residuals["eta_at_i"] = abs(dedekind_eta(1j) - table["ETA_I"])
    residuals["rf_012"] = abs(carlson_rf(0, 1, 2) - table["RF_012"])
    cov = covering_from_branch_points([1, 0, -1])
    residuals["eta1_lemniscatic"] = abs(cov.eta1 - table["ETA1_LEMN"])
    residuals["wp_second_ram"] = abs(weierstrass_p(cov.omega, cov.omega, cov.omega_prime, 2) - 4.0)
    residuals["gamma_at_i"] = abs(gamma_chazy(1j) - 1j)
    rep = VerificationReport.build("fixtures", "specialfn", [1, 0, -1], residuals, 1e-12)
    doc = _document("fixtures", {"path": str(fixtures_path())}, [rep])
    if args.output:
        with open(args.output, "w") as fh:
            json.dump({k: _fmt_complex(v) if isinstance(v, complex) else v
                       for k, v in load_fixtures().items()}, fh, indent=1)
    _emit(doc, args.format, None)
    return 0 if rep.passed else 1


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "kernels":
            return cmd_kernels(args)
        if args.command == "fixtures":
            return cmd_fixtures(args)
    except (DomainError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
