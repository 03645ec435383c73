"""Command-line interface: ``turanlab <command> ...``.

Commands
--------
eval      evaluate one special function with its error estimate
turan     tabulate a Turanian over an x range
det       Hankel determinant, direct or through the Heine integral
cm, am    finite-difference complete / absolute monotonicity check
limit     sharpness limit of a normalised Turanian at x -> 0 or infinity
convex    random midpoint log-convexity trials
sweep     one inequality on its manifest grid
report    the full suite written as CSV or JSON

Exit codes: 0 all normative checks pass, 1 a normative violation,
2 inconclusive results only.
"""
from __future__ import annotations

import argparse
import sys
from typing import Callable, Optional, Sequence

from . import __version__
from .confluent import kummer_phi_log, stieltjes_G, tricomi_psi
from .cylinder import bessel_I, bessel_K, chi_density, parabolic_D, parabolic_U, whittaker_W
from .errors import DomainError
from .hankel import family_catalog, hankel_det_direct, hankel_det_heine
from .quadrature import EvalResult, MCResult
from .turan import TuranianMode, turanian
from .verify.catalog import InequalityId
from .verify.convexity import Surface, check_log_convexity
from .verify.limits import check_limit_sharpness
from .verify.manifest import expand_axis, load_manifest
from .verify.monotone import check_am, check_cm, resolve_target
from .verify.report import fmt, summary_lines, to_csv, to_json
from .verify.sweep import SuiteReport, run_suite, spec_from_manifest, sweep_inequality

STATUS_EXIT = {"pass": 0, "violation": 1, "inconclusive": 2}

# name -> (parameter names, evaluator returning EvalResult)
FUNCTIONS: dict = {
    "psi": (("a", "c"), lambda p, x: tricomi_psi(p["a"], p["c"], x)),
    "phi": (("a", "c"), lambda p, x: kummer_phi_log(p["a"], p["c"], x).to_result()),
    "U": (("a",), lambda p, x: parabolic_U(p["a"], x)),
    "D": (("nu",), lambda p, x: parabolic_D(p["nu"], x)),
    "K": (("a",), lambda p, x: bessel_K(p["a"], x)),
    "I": (("a",), lambda p, x: bessel_I(p["a"], x)),
    "W": (("kappa", "mu"), lambda p, x: whittaker_W(p["kappa"], p["mu"], x)),
    "chi": (("a", "tau"), lambda p, x: chi_density(p["a"], p["tau"], x)),
    "stieltjes_G": (("a", "c"), lambda p, x: stieltjes_G(p["a"], p["c"], x)),
}


def parse_params(text: Optional[str]) -> dict:
    """``"a=1,c=0.5"`` -> ``{"a": 1.0, "c": 0.5}``."""
    out = {}
    if not text:
        return out
    for item in text.split(","):
        key, sep, val = item.partition("=")
        if not sep:
            raise argparse.ArgumentTypeError(f"expected name=value, got {item!r}")
        out[key.strip()] = float(val)
    return out


def parse_range(text: str) -> list:
    """``"lo:hi:step"`` (inclusive) or a comma list -> list of floats."""
    if ":" in text:
        lo, hi, step = (float(v) for v in text.split(":"))
        return expand_axis({"range": [lo, hi, step]})
    return [float(v) for v in text.split(",")]


def _print_result(r) -> None:
    if isinstance(r, MCResult):
        print(f"value={fmt(r.mean)} std_err={fmt(r.std_err)} samples={r.n_samples} "
              f"seed={r.seed}")
    elif isinstance(r, EvalResult):
        print(f"value={fmt(r.value)} abs_err={fmt(r.abs_err_est)} status={r.status.value} "
              f"method={r.method}")


def cmd_eval(args) -> int:
    names, fn = FUNCTIONS[args.function]
    params = parse_params(args.params)
    missing = [n for n in names if n not in params]
    if missing:
        raise DomainError(f"{args.function} needs parameters {', '.join(missing)}")
    _print_result(fn(params, args.x))
    return 0


def cmd_turan(args) -> int:
    params = parse_params(args.params)
    print("x,delta,normalized,norm_err,status")
    for x in parse_range(args.x_range):
        r = turanian(args.mode, params, x)
        print(f"{fmt(x)},{fmt(r.delta)},{fmt(r.normalized)},{fmt(r.norm_err_est)},"
              f"{r.status.value}")
    return 0


def cmd_det(args) -> int:
    fam = family_catalog(args.family, parse_params(args.params))
    if args.samples is not None:
        if args.seed is None:
            raise DomainError("--samples needs an explicit --seed")
        r = hankel_det_heine(fam, args.n, args.x, n_samples=args.samples, seed=args.seed)
    elif args.heine:
        r = hankel_det_heine(fam, args.n, args.x)
    else:
        r = hankel_det_direct(fam, args.n, args.x)
    _print_result(r)
    return 0


def _cmd_mono(check: Callable, args) -> int:
    target = resolve_target(args.target, parse_params(args.params), args.n)
    rep = check(target, parse_range(args.x_range), args.orders, name=args.target)
    for m, status in rep.by_order.items():
        worst = min(v.margin for v in rep.verdicts if v.order == m)
        print(f"order {m}: {status} (smallest margin {fmt(worst)})")
    return STATUS_EXIT[rep.status]


def cmd_limit(args) -> int:
    v = check_limit_sharpness(args.mode, parse_params(args.params), args.endpoint)
    print(f"values={','.join(fmt(t) for t in v.values)} extrapolated={fmt(v.extrapolated)} "
          f"target={fmt(v.target)} error={fmt(v.error)} status={v.status} {v.note}".rstrip())
    return STATUS_EXIT[v.status]


def cmd_convex(args) -> int:
    rep = check_log_convexity(args.surface, args.trials, args.seed)
    print(f"{rep.surface.value}: {rep.status} {rep.counts}")
    return STATUS_EXIT[rep.status]


def cmd_sweep(args) -> int:
    m = load_manifest(args.manifest)
    rep = sweep_inequality(spec_from_manifest(args.inequality, m))
    suite = SuiteReport(int(m.get("seed", 0)), m["sha256"], {}, {}, [], [], [])
    (suite.sweeps if rep.normative else suite.exploratory)[rep.inequality] = rep
    if args.csv:
        sys.stdout.write(to_csv(suite))
    else:
        print("\n".join(summary_lines(suite)))
    return STATUS_EXIT[rep.status] if rep.normative else 0


def cmd_report(args) -> int:
    m = load_manifest(args.manifest)
    suite = run_suite(m, ids=args.ids, include_extras=not args.no_extras)
    text = to_csv(suite) if args.format == "csv" else to_json(suite)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print("\n".join(summary_lines(suite)))
    return suite.exit_code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="turanlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", help="evaluate a special function")
    s.add_argument("function", choices=sorted(FUNCTIONS))
    s.add_argument("--params", default="", help="e.g. a=1,c=0.5")
    s.add_argument("--x", type=float, required=True)
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("turan", help="tabulate a Turanian")
    s.add_argument("mode", choices=[m.value for m in TuranianMode])
    s.add_argument("--params", default="")
    s.add_argument("--x-range", required=True, help="lo:hi:step or a comma list")
    s.set_defaults(func=cmd_turan)

    s = sub.add_parser("det", help="Hankel determinant of a catalog family")
    s.add_argument("family", type=int)
    s.add_argument("--params", default="")
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--x", type=float, required=True)
    s.add_argument("--heine", action="store_true", help="use the Heine integral")
    s.add_argument("--samples", type=int, help="Monte Carlo samples (implies --heine)")
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_det)

    for name, check in (("cm", check_cm), ("am", check_am)):
        s = sub.add_parser(name, help=f"{'complete' if name == 'cm' else 'absolute'} "
                                      "monotonicity check")
        s.add_argument("target", help="exp, exp_neg, stieltjes_G or a family id")
        s.add_argument("--params", default="")
        s.add_argument("--orders", type=int, default=4)
        s.add_argument("--n", type=int, default=1, help="determinant order")
        s.add_argument("--x-range", default="0.5:5:0.5")
        s.set_defaults(func=lambda a, check=check: _cmd_mono(check, a))

    s = sub.add_parser("limit", help="sharpness limit of a normalised Turanian")
    s.add_argument("mode", choices=[m.value for m in TuranianMode])
    s.add_argument("--params", default="")
    s.add_argument("--endpoint", choices=["0", "inf"], default="0")
    s.set_defaults(func=cmd_limit)

    s = sub.add_parser("convex", help="log-convexity trials")
    s.add_argument("surface", choices=[m.value for m in Surface])
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=7)
    s.set_defaults(func=cmd_convex)

    s = sub.add_parser("sweep", help="sweep one inequality on its manifest grid")
    s.add_argument("inequality", choices=[i.value for i in InequalityId])
    s.add_argument("--manifest", help="manifest JSON (bundled grid by default)")
    s.add_argument("--csv", action="store_true", help="print verdict rows as CSV")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("report", help="run the suite and write a report")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.add_argument("--out", required=True, help="output path, or - for stdout")
    s.add_argument("--manifest")
    s.add_argument("--ids", nargs="*", help="restrict to these inequality ids")
    s.add_argument("--no-extras", action="store_true",
                   help="skip limits, convexity and the Stieltjes check")
    s.set_defaults(func=cmd_report)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
