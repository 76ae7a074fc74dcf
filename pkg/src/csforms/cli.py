"""Command-line front end for the verification suites.

Every subcommand emits a report whose records carry the identity under test,
the computed and expected values, the tolerance, and a pass flag.  Reports are
deterministic functions of the configuration: the JSON and CSV encodings
contain no timestamps, and repeated runs with one seed are byte-identical.
Wall time is printed only in the human-readable text format.

Exit codes: 0 all checks passed, 1 at least one failed, 2 usage error,
3 a numerically ambiguous integer computation (degree rounding).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict

from . import __version__, checks, rationals
from .liealg import algebra_from_tag
from .zoo import PrecisionError, bundle_names

SCHEMA_VERSION = 1


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit the report as canonical JSON")
    p.add_argument("--csv", action="store_true", help="emit the report as CSV rows")
    p.add_argument("--out", type=str, default=None, help="write the report to a file")
    p.add_argument("--seed", type=int, default=0, help="seed for random sweeps")
    p.add_argument("--tol", type=float, default=None, help="override the default tolerance")
    p.add_argument("--fd-step", type=float, default=1e-4, help="finite-difference step")
    p.add_argument("--quad-order", type=int, default=None, help="override quadrature order")
    p.add_argument("--points", type=int, default=100, help="random points per sweep")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="csforms",
        description="verify transgression-form identities on concrete bundles",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="exact coefficient tables and residuals")
    p.add_argument("--k", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("algebra", help="dump a matrix Lie algebra basis")
    p.add_argument("--dump", type=str, required=True, metavar="TAG")
    _add_common(p)

    p = sub.add_parser("identities", help="calculus and invariance property suite")
    _add_common(p)

    p = sub.add_parser("heterotic-check", help="d PhiP = P(Omega) - P(Psi) residual sweep")
    p.add_argument("--bundle", type=str, required=True, help=f"one of {bundle_names()}")
    p.add_argument("--poly", type=str, default=None, help="euler | c1 | c2 | p1 (default per bundle)")
    _add_common(p)

    p = sub.add_parser("gauss-bonnet", help="Euler-form integrals and cap identities")
    p.add_argument("--bundle", type=str, default="ut_s2")
    p.add_argument("--chain", type=str, default="full_sphere")
    _add_common(p)

    p = sub.add_parser("chern-number", help="c_1 integral of the degree-one line bundle")
    p.add_argument("--bundle", type=str, default="hopf_u1")
    _add_common(p)

    p = sub.add_parser("fiber-norm", help="fiber integrals of the transgression forms")
    p.add_argument("--bundle", type=str, default=None, help="restrict to one bundle")
    p.add_argument("--k", type=int, default=None, help="also report the exact antidiagonal constant")
    _add_common(p)

    p = sub.add_parser("pontryagin-split", help="P1 splitting and sum rule on the 4-sphere frames")
    _add_common(p)

    p = sub.add_parser("obstruction", help="chain integral = index sum + boundary term")
    p.add_argument("--bundle", type=str, default="ut_s2")
    p.add_argument("--chain", type=str, default="cap:pi/3")
    p.add_argument("--section", type=str, default="height_gradient")
    _add_common(p)

    p = sub.add_parser("degree", help="winding degrees of the quaternionic sections")
    _add_common(p)

    p = sub.add_parser("suite-all", help="run every acceptance check in order")
    p.add_argument("--quick", action="store_true", help="reduced point counts")
    _add_common(p)

    return ap


def _coeffs_payload(k: int) -> dict:
    table = rationals.build_table_by_recursion(k)
    residuals = [
        {"relation": r.relation, "i": r.i, "j": r.j, "num": r.residual.numerator, "den": r.residual.denominator}
        for r in rationals.verify_linear_relations(k)
    ]
    fc = rationals.fiber_constant(k)
    return {
        "k": k,
        "table": [
            {"i": i, "j": j, "num": v.numerator, "den": v.denominator}
            for (i, j), v in sorted(table.entries.items())
        ],
        "residuals": residuals,
        "fiber_constant": {"num": fc.numerator, "den": fc.denominator},
    }


def _run_records(args: argparse.Namespace) -> tuple[list[checks.CheckRecord], dict]:
    cmd = args.command
    cfg: dict = {"command": cmd, "seed": args.seed, "fd_step": args.fd_step, "points": args.points}
    if getattr(args, "quad_order", None):
        cfg["quad_order"] = args.quad_order
    recs: list[checks.CheckRecord]

    if cmd == "coeffs":
        cfg["k"] = args.k
        recs = checks.coefficient_checks(args.k)
        cfg["payload"] = _coeffs_payload(args.k)
    elif cmd == "algebra":
        alg = algebra_from_tag(args.dump)
        cfg["algebra"] = alg.tag
        cfg["payload"] = {
            "dim": alg.dim,
            "basis": [
                {"re": b.real.tolist(), "im": b.imag.tolist()} if alg.is_complex else {"re": b.tolist()}
                for b in alg.basis()
            ],
        }
        recs = []
    elif cmd == "identities":
        recs = checks.calculus_identity_checks(seed=args.seed, fd_step=args.fd_step)
    elif cmd == "heterotic-check":
        cfg["bundle"] = args.bundle
        cfg["poly"] = args.poly
        recs = checks.heterotic_sweep(
            args.bundle,
            poly=args.poly,
            points=args.points,
            seed=args.seed,
            fd_step=args.fd_step,
            tol=args.tol if args.tol is not None else 1e-4,
        )
    elif cmd == "gauss-bonnet":
        order4 = (args.quad_order,) * 4 if args.quad_order else (8, 8, 8, 8)
        order2 = args.quad_order if args.quad_order else 24
        recs = checks.gauss_bonnet_checks(quad_order_2d=order2, quad_order_4d=order4)
        if args.bundle != "ut_s2" or args.chain != "full_sphere":
            cfg["bundle"], cfg["chain"] = args.bundle, args.chain
    elif cmd == "chern-number":
        recs = checks.chern_number_checks(quad_order=args.quad_order or 24)
    elif cmd == "fiber-norm":
        recs = checks.fiber_norm_checks(quad_order_3d=args.quad_order or 10)
        if args.bundle:
            keys = {
                "ut_s2": ("circle",),
                "hopf_u1": ("circle",),
                "frame_s4": ("s3",),
                "frame_s4:b1": ("b1",),
                "frame_s4:b2": ("b2",),
            }.get(args.bundle, (args.bundle,))
            recs = [r for r in recs if any(k in r.name for k in keys) or "constant" in r.name]
            cfg["bundle"] = args.bundle
        if args.k:
            fc = rationals.fiber_constant(args.k)
            cfg["fiber_constant"] = {"k": args.k, "num": fc.numerator, "den": fc.denominator}
    elif cmd == "pontryagin-split":
        recs = checks.pontryagin_checks(points=args.points, seed=args.seed, fd_step=args.fd_step)
    elif cmd == "obstruction":
        cfg["bundle"], cfg["chain"], cfg["section"] = args.bundle, args.chain, args.section
        recs = checks.obstruction_checks(
            args.bundle,
            args.chain,
            args.section,
            quad_order=args.quad_order or 24,
            tol=args.tol if args.tol is not None else 1e-4,
        )
    elif cmd == "degree":
        recs = checks.degree_checks()
    elif cmd == "suite-all":
        cfg["quick"] = bool(args.quick)
        recs = checks.suite_all(seed=args.seed, points=args.points, fd_step=args.fd_step, quick=args.quick)
    else:  # pragma: no cover
        raise ValueError(f"unhandled command {cmd}")

    if args.tol is not None and cmd not in ("heterotic-check", "obstruction"):
        recs = [
            checks.CheckRecord(
                r.name, r.anchor, r.computed, r.expected, args.tol,
                abs(r.computed - r.expected) <= args.tol, r.extra,
            )
            for r in recs
        ]
        cfg["tol_override"] = args.tol
    return recs, cfg


def _report_dict(recs: list[checks.CheckRecord], cfg: dict) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "config": cfg,
        "records": [asdict(r) for r in recs],
        "summary": {
            "total": len(recs),
            "passed": sum(r.passed for r in recs),
            "failed": sum(not r.passed for r in recs),
        },
    }


def _to_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["name", "anchor", "computed", "expected", "tolerance", "passed"])
    for r in report["records"]:
        w.writerow([r["name"], r["anchor"], repr(r["computed"]), repr(r["expected"]), repr(r["tolerance"]), r["passed"]])
    return buf.getvalue()


def _to_text(report: dict, elapsed: float) -> str:
    lines = []
    for r in report["records"]:
        status = "PASS" if r["passed"] else "FAIL"
        lines.append(
            f"[{status}] {r['name']}: computed={r['computed']:.6g} expected={r['expected']:.6g} "
            f"tol={r['tolerance']:.3g}  ({r['anchor']})"
        )
    s = report["summary"]
    lines.append(f"{s['passed']}/{s['total']} checks passed, wall time {elapsed:.2f}s")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    t0 = time.time()
    try:
        recs, cfg = _run_records(args)
    except PrecisionError as exc:
        print(f"numerical ambiguity: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = _report_dict(recs, cfg)
    elapsed = time.time() - t0
    if args.json:
        text = json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"
    elif args.csv:
        text = _to_csv(report)
    else:
        text = _to_text(report, elapsed) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "algebra":
        return 0
    return 0 if report["summary"]["failed"] == 0 else 1


def console_main() -> None:  # pragma: no cover
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    console_main()
