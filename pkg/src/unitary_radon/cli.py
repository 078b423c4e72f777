"""unitary-radon command line interface.

Commands: transform, invert, dual, verify, kernel-eval, sample-stiefel,
fit-hermite.  Reports are canonical JSON; kernel-eval writes CSV triples and
can render figures next to them.  Exit codes: 0 success, 2 contract/schema
violation, 3 invariant failure in verify mode.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time

from . import __version__, ball, clifford, fock, realspace
from .core import DimensionError, sample_stiefel, herm
from .exact import to_complex
from .results import ContractViolation
from .verify import SPACES, run_verify
from . import serialize as ser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ser.SchemaError, ContractViolation, DimensionError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="unitary-radon",
        description="Projection Radon-type transforms (unitary, co-real-dimension 2): "
                    "transforms, duals, inversions, kernels and verification.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tuple_opt=True):
        p.add_argument("--space", choices=SPACES, default="ball-harmonic")
        p.add_argument("--in", dest="infile", metavar="FILE", help="input JSON document")
        p.add_argument("--out", metavar="FILE", help="write the report here (default stdout)")
        p.add_argument("--n", type=int, default=2, help="ambient dimension (default 2)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=1e-10, help="contract-check tolerance")
        p.add_argument("--plot", metavar="PNG", help="render a figure alongside the report")
        if tuple_opt:
            p.add_argument("--tuple", default="axis:0,1", metavar="SPEC",
                           help="axis:I,J | haar:SEED | rational:SEED | @file.json")

    p = sub.add_parser("transform", help="project the input onto a tuple's wave span")
    common(p)
    p.add_argument("--branch", choices=(ball.BRANCH_GE, ball.BRANCH_LT),
                   help="restrict the harmonic projection to one index branch")
    p.set_defaults(handler=cmd_transform)

    p = sub.add_parser("invert", help="apply the inversion operator for the space")
    common(p, tuple_opt=False)
    p.add_argument("--branch", choices=(ball.BRANCH_GE, ball.BRANCH_LT),
                   default=ball.BRANCH_GE)
    p.add_argument("--grade", type=int, help="spinor grade (hermitian space)")
    p.set_defaults(handler=cmd_invert)

    p = sub.add_parser("dual", help="Stiefel-averaged dual of the projection")
    common(p, tuple_opt=False)
    p.add_argument("--mc", action="store_true", help="estimate by Monte-Carlo as well")
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--grade", type=int, help="spinor grade (hermitian space)")
    p.set_defaults(handler=cmd_dual)

    p = sub.add_parser("verify", help="run the invariant suite for a space")
    common(p, tuple_opt=False)
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--samples", type=int, default=0,
                   help="include Monte-Carlo dual checks at this sample count")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("kernel-eval", help="scan a kernel over a scale grid, emit CSV")
    common(p)
    p.add_argument("--radius", type=float, default=0.3)
    p.add_argument("--steps", type=int, default=21)
    p.add_argument("--trunc", default="40,40", metavar="P,Q",
                   help="series truncation (l2 uses P as the excitation cut)")
    p.set_defaults(handler=cmd_kernel_eval)

    p = sub.add_parser("sample-stiefel", help="draw a Haar tuple")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_sample_stiefel)

    p = sub.add_parser("fit-hermite", help="least-squares grid fit to the oscillator "
                                           "basis (approximate)")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE")
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_fit_hermite)

    return parser


# ---------------------------------------------------------------------------
# input/output helpers

def _load_doc(path):
    if path in (None, "-"):
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _load_input(args):
    doc = _load_doc(args.infile)
    if args.space == "l2":
        return doc, ser.parse_hermite(doc)
    if args.space == "hermitian":
        return doc, ser.parse_herm_polynomial(doc)
    return doc, ser.parse_polynomial(doc)


def _emit(report, args):
    text = ser.canonical_json(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _reconstruction_doc(space, rec):
    if space == "l2":
        return ser.hermite_doc(rec)
    if space == "hermitian":
        return ser.herm_polynomial_doc(rec)
    return ser.polynomial_doc(rec)


def _residuals(space, value):
    if space == "hermitian":
        rz, rd = clifford.monogenic_residuals(value)
        return {"dirac_z": rz, "dirac_z_dagger": rd}
    if space in ("ball-harmonic", "ball-holomorphic"):
        return {"laplace": ball.harmonicity_residual(value)}
    return {}


def _maybe_plot_coeffs(args, rows, title):
    if getattr(args, "plot", None):
        from .plots import plot_coefficients
        plot_coefficients(rows, args.plot, title=title)


# ---------------------------------------------------------------------------
# commands

def cmd_transform(args):
    doc, value = _load_input(args)
    tpl = ser.parse_tuple_spec(args.tuple, args.n)

    def project(x):
        if args.space == "l2":
            return realspace.l2_radon(x, tpl)
        if args.space == "hermitian":
            return clifford.herm_radon(x, tpl, tol=args.tol)
        if args.space == "fock":
            return fock.bargmann_radon(x, tpl)
        if args.space == "ball-holomorphic":
            fock.require_entire(x)
            return ball.szego_radon(x, tpl, tol=args.tol)
        if args.branch:
            return ball.szego_radon_split(x, tpl, args.branch, tol=args.tol)
        return ball.szego_radon(x, tpl, tol=args.tol)

    t0 = time.perf_counter()
    result = project(value)
    wall = (time.perf_counter() - t0) * 1000.0
    residuals = _residuals(args.space, value)
    again = project(result.reconstructed)
    idem_dev = _coefficient_deviation(result.coefficients, again.coefficients)
    invariants = [
        {"name": "input-contract-residual", "passed": True,
         "measured": max(residuals.values(), default=0.0), "tolerance": args.tol},
        {"name": "projection-idempotent", "passed": idem_dev <= args.tol,
         "measured": idem_dev, "tolerance": args.tol},
    ]
    rows = ser.coefficients_doc(result.coefficients)
    body = {
        "n": args.n,
        "input_digest": ser.digest_doc(doc),
        "tuple": ser.tuple_doc(tpl),
        "coefficients": rows,
        "residuals": residuals,
        "invariants": invariants,
        "reconstruction": _reconstruction_doc(args.space, result.reconstructed),
    }
    if getattr(args, "branch", None):
        body["branch"] = args.branch
    _emit(ser.build_report("transform", args.space, body, wall_ms=wall), args)
    _maybe_plot_coeffs(args, rows, f"{args.space} projection")
    return 0


def _coefficient_deviation(a, b):
    dev = 0.0
    for key in set(a) | set(b):
        va, vb = a.get(key), b.get(key)
        if hasattr(va, "blades") or hasattr(vb, "blades"):
            from .clifford import CliffordElement
            za = va if va is not None else CliffordElement.zero(vb.n)
            zb = vb if vb is not None else CliffordElement.zero(za.n)
            dev = max(dev, (za.to_float() - zb.to_float()).max_abs())
        else:
            dev = max(dev, abs(to_complex(va or 0) - to_complex(vb or 0)))
    return dev


def cmd_invert(args):
    doc, value = _load_input(args)
    t0 = time.perf_counter()
    if args.space == "l2":
        out = realspace.l2_invert(value, args.n)
    elif args.space == "hermitian":
        out = clifford.herm_invert(value, args.n, j=args.grade, branch=args.branch,
                                   tol=args.tol)
    elif args.space == "fock":
        out = fock.fock_invert(value, args.n)
    elif args.space == "ball-holomorphic":
        out = ball.invert_holomorphic(value, args.n)
    else:
        out = ball.invert_general(value, args.n, branch=args.branch, tol=args.tol)
    wall = (time.perf_counter() - t0) * 1000.0
    residuals = _residuals(args.space, value)
    body = {
        "n": args.n,
        "input_digest": ser.digest_doc(doc),
        "residuals": residuals,
        "invariants": [{"name": "input-contract-residual", "passed": True,
                        "measured": max(residuals.values(), default=0.0),
                        "tolerance": args.tol}],
        "result": _reconstruction_doc(args.space, out),
    }
    _emit(ser.build_report("invert", args.space, body, wall_ms=wall), args)
    return 0


def cmd_dual(args):
    doc, value = _load_input(args)
    t0 = time.perf_counter()
    if args.space == "l2":
        out = realspace.l2_dual_exact(value, args.n)
        rec_doc = ser.hermite_doc(out)
    elif args.space == "hermitian":
        out = clifford.herm_dual_exact(value, args.n, j=args.grade, tol=args.tol)
        rec_doc = ser.herm_polynomial_doc(out)
    elif args.space == "fock" or args.space == "ball-holomorphic":
        out = fock.fock_dual_exact(value, args.n)
        rec_doc = ser.polynomial_doc(out)
    else:
        out = ball.dual_exact(value, args.n, tol=args.tol)
        rec_doc = ser.polynomial_doc(out)
    residuals = _residuals(args.space, value)
    body = {
        "n": args.n,
        "input_digest": ser.digest_doc(doc),
        "residuals": residuals,
        "invariants": [{"name": "input-contract-residual", "passed": True,
                        "measured": max(residuals.values(), default=0.0),
                        "tolerance": args.tol}],
        "result": rec_doc,
    }
    if args.mc:
        body["monte_carlo"] = _dual_mc_section(args, value, out)
    wall = (time.perf_counter() - t0) * 1000.0
    _emit(ser.build_report("dual", args.space, body, wall_ms=wall), args)
    return 0


def _dual_mc_section(args, value, exact_out):
    if args.space == "hermitian":
        est = clifford.herm_dual_monte_carlo(value, args.n, args.samples, args.seed)
        exact = clifford.flatten_clifford_poly(
            exact_out.map_coefficients(lambda c: c.to_float()))
        rows = []
        for key in sorted(est.stderr):
            (a, b), mask = key
            rows.append(_mc_row({"alpha": list(a), "beta": list(b), "mask": mask},
                                est.mean.get(key, 0.0), est.stderr[key],
                                exact.get(key, 0.0)))
    else:
        project = {"ball-harmonic": ball.szego_radon,
                   "ball-holomorphic": ball.szego_radon,
                   "fock": fock.bargmann_radon}
        if args.space == "l2":
            est = ball.dual_monte_carlo(realspace.segal_bargmann(value), args.n,
                                        args.samples, args.seed,
                                        project=fock.bargmann_radon)
            exact = {k: to_complex(v)
                     for k, v in realspace.segal_bargmann(exact_out).terms.items()}
        else:
            est = ball.dual_monte_carlo(value, args.n, args.samples, args.seed,
                                        project=project[args.space])
            exact = {k: to_complex(v) for k, v in exact_out.to_float().terms.items()}
        rows = []
        for key in sorted(est.stderr):
            a, b = key
            rows.append(_mc_row({"alpha": list(a), "beta": list(b)},
                                est.mean.terms.get(key, 0.0), est.stderr[key],
                                exact.get(key, 0.0)))
    agrees = est.within(exact)
    return {"samples": args.samples, "seed": args.seed,
            "within_3_sigma": agrees, "coefficients": rows}


def _mc_row(label, mean, stderr, exact):
    mean = complex(mean)
    exact = complex(exact)
    delta = abs(mean - exact)
    row = dict(label)
    row.update({"mean": {"re": mean.real, "im": mean.imag},
                "stderr": stderr,
                "exact": {"re": exact.real, "im": exact.imag},
                "z": (delta / stderr) if stderr > 0 else (0.0 if delta == 0 else math.inf)})
    return row


def cmd_verify(args):
    report = run_verify(args.space, n=args.n, max_degree=args.max_degree,
                        seed=args.seed, mc_samples=args.samples)
    checks = [{"name": c.name, "passed": c.passed, "measured": c.measured,
               "tolerance": c.tolerance, "detail": c.detail, "advisory": c.advisory}
              for c in report.checks]
    body = {
        "n": args.n, "max_degree": args.max_degree, "seed": args.seed,
        "passed": report.passed,
        "checks": checks,
        "discrepancies": report.discrepancies,
    }
    _emit(ser.build_report("verify", args.space, body), args)
    for line in report.lines():
        print(line, file=sys.stderr)
    if args.plot:
        from .plots import plot_verify
        plot_verify(checks, args.plot, title=f"{args.space} verification")
    return 0 if report.passed else 3


def cmd_kernel_eval(args):
    tpl = ser.parse_tuple_spec(args.tuple, args.n)
    pmax, _ = _parse_trunc(args.trunc)  # ball/fock scans use closed forms
    n = args.n
    rows = []
    scales = [args.radius * i / (args.steps - 1) if args.steps > 1 else 0.0
              for i in range(args.steps)]
    d1 = [1.0 if j == 0 else 0.0 for j in range(n)]
    d2 = [1.0 / math.sqrt(2) if j < 2 else 0.0 for j in range(n)]
    for a in scales:
        for b in scales:
            if args.space == "l2":
                value = realspace.l2_kernel_series(tpl, [a * x for x in d1],
                                                   [b * x for x in d2], pmax).value
            elif args.space == "fock":
                value = fock.bargmann_kernel(tpl, [a * x for x in d1], [b * x for x in d2])
            elif args.space == "ball-holomorphic":
                value = ball.holo_kernel_closed(tpl, [a * x for x in d1], [b * x for x in d2])
            elif args.space == "hermitian":
                value = ball.szego_kernel_closed(tpl, [a * x for x in d1],
                                                 [b * x for x in d2]) / 4.0
            else:
                value = ball.szego_kernel_closed(tpl, [a * x for x in d1], [b * x for x in d2])
            value = complex(value)
            rows.append((a, b, value.real, value.imag))
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["a", "b", "re", "im"])
    writer.writerows(rows)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    if args.space == "hermitian":
        tau = clifford.null_tau(tpl)
        print("note: values are the scalar kernel factor; the constant blade "
              f"factor tau tau^dagger has {len((tau * tau.dagger()).blades)} blades",
              file=sys.stderr)
    if args.plot:
        from .plots import plot_kernel_grid
        plot_kernel_grid(rows, args.plot, title=f"{args.space} kernel |K|")
    return 0


def _parse_trunc(text):
    try:
        p, _, q = text.partition(",")
        return int(p), int(q or p)
    except ValueError:
        raise ser.SchemaError(f"bad --trunc {text!r}; want P,Q") from None


def cmd_sample_stiefel(args):
    tpl = sample_stiefel(args.n, args.seed)
    body = {
        "n": args.n, "seed": args.seed,
        "tuple": ser.tuple_doc(tpl),
        "residuals": {
            "herm_tt_minus_1": abs(to_complex(herm(tpl.t, tpl.t)) - 1.0),
            "herm_ss_minus_1": abs(to_complex(herm(tpl.s, tpl.s)) - 1.0),
            "herm_ts": abs(to_complex(herm(tpl.t, tpl.s))),
        },
    }
    _emit(ser.build_report("sample-stiefel", None, body), args)
    return 0


def cmd_fit_hermite(args):
    doc = _load_doc(args.infile)
    ser.validate(doc, ser.GRID_SCHEMA, "grid")
    if len(doc["points"]) != len(doc["values"]):
        raise ser.SchemaError("points and values must have equal length")
    values = [complex(v["re"], v["im"]) for v in doc["values"]]
    fit, rms = realspace.fit_hermite(doc["points"], values, doc["n"], args.kmax)
    body = {
        "n": doc["n"], "kmax": args.kmax,
        "input_digest": ser.digest_doc(doc),
        "approximate": True,
        "rms_residual": rms,
        "expansion": ser.hermite_doc(fit),
    }
    _emit(ser.build_report("fit-hermite", None, body), args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
