"""Command line front end.

Subcommands: mu, r0, profile, certify, verify, scan, density, example7,
probe-t. Output is JSON by default (17 significant digits on reals, so
identical invocations are byte-identical); scan and density can emit
CSV. Exit codes: 0 success, 2 validation or usage error, 3 a verified
scan refuted the certificate.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from fractions import Fraction

from . import certificates, curve, jsonio
from .errors import NdsError
from .scan import ScanConfig, density_report, scan as run_scan, verify_certificate
from .semigroup import NumericalSemigroup

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REFUTED = 3

# reference decimals for the <2,7> golden pipeline, with the tolerance
# each comparison is held to by example7 and the acceptance suite
GOLDEN_27 = {
    "r0": (7.0 / 9.0, 1e-9),
    "P": (-0.2298, 5e-4),
    "interval_hi": (3.2172, 1e-3),
    "d": (2.05446, 1e-4),
    "epsilon": (0.0005250, 1e-6),
    "x0": (560001, 1),
}
SMOKE_X_MAX = 50000
FULL_X_MAX = 560001


def _semigroup(args) -> NumericalSemigroup:
    return NumericalSemigroup(args.a1, args.a2)


def _parse_t(text: str, S: NumericalSemigroup) -> float:
    if text == "special":
        return curve.special_t_value(S.a1, S.a2)
    if text in ("inf", "infinity"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise NdsError(f"cannot parse t={text!r}; use a decimal, 'special', or 'inf'")


def _t_json(t: float):
    # JSON has no Infinity literal; emit the symbolic form instead
    return "inf" if math.isinf(t) else t


def _parse_witness(text: str, t: float) -> certificates.RationalR0Witness:
    try:
        frac = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise NdsError(f"cannot parse r0 witness {text!r}; expected M/N")
    return certificates.RationalR0Witness(frac.numerator, frac.denominator, t)


def _emit(args, payload: str):
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)


def _workers(args) -> int:
    if getattr(args, "workers", None):
        return args.workers
    return int(os.environ.get("NDS_WORKERS", "1"))


def cmd_mu(args):
    S = _semigroup(args)
    t = _parse_t(args.t, S)
    pt = curve.mu_point(S, args.r, t)
    _emit(args, jsonio.dumps({
        "a1": S.a1, "a2": S.a2, "t": _t_json(t), "r": pt.r, "mu": pt.mu,
        "mu_prime": pt.mu_prime, "mu_second": pt.mu_second,
    }))
    return EXIT_OK


def cmd_r0(args):
    S = _semigroup(args)
    t = _parse_t(args.t, S)
    _emit(args, jsonio.dumps({"a1": S.a1, "a2": S.a2, "t": _t_json(t), "r0": curve.r0_solve(S, t)}))
    return EXIT_OK


def cmd_profile(args):
    S = _semigroup(args)
    t = _parse_t(args.t, S)
    prof = curve.curve_profile(S, t)
    _emit(args, jsonio.dumps({
        "a1": S.a1, "a2": S.a2, "t": prof.t, "r_min": prof.r_min,
        "mu_min": prof.mu_min, "r0": prof.r0, "P": prof.P, "k_t": prof.k_t,
    }))
    return EXIT_OK


def cmd_certify(args):
    S = _semigroup(args)
    t = _parse_t(args.t, S)
    if args.t == "special":
        t, witness = certificates.special_t(S)
    elif args.r0:
        witness = _parse_witness(args.r0, t)
    else:
        raise NdsError("certify needs --r0 M/N unless --t special is used")
    cert = certificates.build_certificate(S, t, witness, k_override=args.k_override)
    _emit(args, cert.to_json())
    return EXIT_OK


def cmd_verify(args):
    with open(args.certificate) as fh:
        cert = certificates.Certificate.from_json(fh.read())
    outcome = verify_certificate(
        cert,
        worker_count=_workers(args),
        checkpoint_path=args.checkpoint,
        x_hi=args.x_max,
    )
    _emit(args, outcome.certificate.to_json())
    return EXIT_REFUTED if outcome.certificate.status == certificates.STATUS_REFUTED else EXIT_OK


def cmd_scan(args):
    S = _semigroup(args)
    t = _parse_t(args.t, S)
    target = None
    if (args.target_lo is None) != (args.target_hi is None):
        raise NdsError("--target-lo and --target-hi must be given together")
    if args.target_lo is not None:
        target = (args.target_lo, args.target_hi)
    cfg = ScanConfig(
        S, t, args.x_lo, args.x_max,
        target=target,
        bin_width=args.bin_width,
        worker_count=_workers(args),
        checkpoint_path=args.checkpoint,
    )
    rep = run_scan(cfg)
    if args.format == "csv":
        _emit(args, "\n".join(jsonio.gap_csv_lines(rep.violations)))
    else:
        _emit(args, jsonio.dumps(rep.to_dict()))
    return EXIT_OK


def cmd_density(args):
    S = _semigroup(args)
    t = _parse_t(args.t, S)
    rep = density_report(S, t, args.x_max, args.bin_width,
                                 worker_count=_workers(args))
    if args.format == "csv":
        _emit(args, "\n".join(jsonio.histogram_csv_lines(rep.bin_width, rep.histogram)))
    else:
        _emit(args, jsonio.dumps({
            "a1": S.a1, "a2": S.a2, "t": _t_json(t), "x_max": rep.x_max,
            "bin_width": rep.bin_width, "coverage": rep.coverage,
            "gap_count": rep.gap_count, "histogram": rep.histogram,
        }))
    return EXIT_OK


def cmd_probe_t(args):
    S = _semigroup(args)
    steps = int(round((args.t_max - args.t_min) / args.t_step))
    grid = [round(args.t_min + i * args.t_step, 12) for i in range(steps + 1)]
    threshold = curve.probe_T(S, grid)
    payload = {
        "a1": S.a1, "a2": S.a2,
        "t_min": args.t_min, "t_max": args.t_max, "t_step": args.t_step,
        "threshold": threshold,
        "stabilized": threshold is not None,
    }
    if threshold is None:
        payload["note"] = "condition |P(t)| > 1/a2 did not stabilize on this grid"
    _emit(args, jsonio.dumps(payload))
    return EXIT_OK


def cmd_example7(args):
    """Golden pipeline for <2,7> at the special t, then a verification scan."""
    S = NumericalSemigroup(2, 7)
    t, witness = certificates.special_t(S)
    r0 = curve.r0_solve(S, t)
    P = curve.p_of_t(S, t)
    cert = certificates.build_certificate(S, t, witness, k_override=args.k_override)
    checks = []

    def check(name, got):
        ref, tol = GOLDEN_27[name]
        ok = abs(got - ref) <= tol
        checks.append({"field": name, "computed": float(got), "reference": float(ref),
                       "tolerance": float(tol), "pass": ok})

    check("r0", r0)
    check("P", P)
    check("interval_hi", cert.interval[1])
    check("d", cert.d)
    check("epsilon", cert.epsilon)
    check("x0", cert.x0)
    if args.smoke:
        cfg = ScanConfig(S, t, 1, SMOKE_X_MAX, target=cert.window(),
                                 worker_count=_workers(args),
                                 checkpoint_path=args.checkpoint)
        rep = run_scan(cfg)
        scanned_hi = SMOKE_X_MAX
        status = "refuted" if rep.violations_total else "clean"
        cert_out = cert if status == "clean" else cert.with_status(certificates.STATUS_REFUTED)
    else:
        outcome = verify_certificate(
            cert, worker_count=_workers(args),
            checkpoint_path=args.checkpoint, x_hi=FULL_X_MAX,
        )
        rep = outcome.report
        scanned_hi = max(cert.x0, FULL_X_MAX)
        status = outcome.certificate.status
        cert_out = outcome.certificate
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(cert_out.to_json() + "\n")
    if args.format == "json":
        print(jsonio.dumps({
            "t": t, "checks": checks,
            "scan": {"x_hi": scanned_hi, "violations": rep.violations_total,
                     "status": status},
        }))
    else:
        for c in checks:
            print(f"{c['field']:<12} computed={jsonio.format_real(c['computed'])} "
                  f"reference={jsonio.format_real(c['reference'])} "
                  f"tol={c['tolerance']:g} {'PASS' if c['pass'] else 'FAIL'}")
        print(f"scan x<=[{scanned_hi}] violations={rep.violations_total} "
              f"{'PASS' if rep.violations_total == 0 else 'FAIL'}")
    return EXIT_REFUTED if rep.violations_total else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nds",
        description="length sets, delta sets, and perspicacity certificates "
                    "of two-generator numerical semigroups",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def gen(p, t_flag=True):
        p.add_argument("--a1", type=int, required=True)
        p.add_argument("--a2", type=int, required=True)
        if t_flag:
            p.add_argument("--t", required=True,
                           help="norm parameter: decimal, 'special', or 'inf'")
        p.add_argument("--out", help="write the payload to this file instead of stdout")

    p = sub.add_parser("mu", help="evaluate mu and derivatives at one r")
    gen(p)
    p.add_argument("--r", type=float, required=True)
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("r0", help="solve mu_t(r) = 1/a2 for the root r0(t)")
    gen(p)
    p.set_defaults(func=cmd_r0)

    p = sub.add_parser("profile", help="full curve profile: argmin, min, r0, P, k_t")
    gen(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("certify", help="build a perspicacity certificate")
    gen(p)
    p.add_argument("--r0", help="rational r0 witness M/N (unneeded with --t special)")
    p.add_argument("--k-override", type=float, dest="k_override",
                   help="replace the estimated Taylor constant k_t")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="scan x in [1, x0] against a certificate window")
    p.add_argument("certificate", help="certificate JSON path")
    p.add_argument("--x-max", type=int, help="widen the scan beyond x0")
    p.add_argument("--workers", type=int)
    p.add_argument("--checkpoint")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="scan a range, with optional target window and histogram")
    gen(p)
    p.add_argument("--x-lo", type=int, default=1)
    p.add_argument("--x-max", type=int, required=True)
    p.add_argument("--target-lo", type=float)
    p.add_argument("--target-hi", type=float)
    p.add_argument("--bin-width", type=float)
    p.add_argument("--workers", type=int)
    p.add_argument("--checkpoint")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("density", help="gap histogram over [0, a2] and bin coverage")
    gen(p)
    p.add_argument("--x-max", type=int, required=True)
    p.add_argument("--bin-width", type=float, required=True)
    p.add_argument("--workers", type=int)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("example7", help="golden <2,7> pipeline: certificate plus scan")
    p.add_argument("--smoke", action="store_true",
                   help=f"limit the scan to x <= {SMOKE_X_MAX}")
    p.add_argument("--k-override", type=float, dest="k_override", default=1.5)
    p.add_argument("--workers", type=int)
    p.add_argument("--checkpoint")
    p.add_argument("--out", help="write the resulting certificate JSON here")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_example7)

    p = sub.add_parser("probe-t", help="empirical threshold for |P(t)| > 1/a2")
    p.add_argument("--a1", type=int, required=True)
    p.add_argument("--a2", type=int, required=True)
    p.add_argument("--t-min", type=float, default=1.1)
    p.add_argument("--t-max", type=float, default=10.0)
    p.add_argument("--t-step", type=float, default=0.01)
    p.add_argument("--out")
    p.set_defaults(func=cmd_probe_t)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NdsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
