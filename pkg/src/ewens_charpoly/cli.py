"""Command-line front end.

    ewens-charpoly COMMAND [--family SPEC] [--n N] [--seed S] ...

Reports are JSON lines on stdout (or ``--out``).  Exit codes: 0 success,
1 usage error, 2 numerical or domain error, 3 threshold failure under
``--assert``.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import portrait, stats
from .errors import ConfigError, DomainError, PrecondError, SizeError
from .ewens_core import sample_cycle_types
from .limit_field import eval_F, sample_limit
from .weights import ThetaSequence

EXIT_USAGE, EXIT_NUMERIC, EXIT_THRESHOLD = 1, 2, 3
CONVERGE_KS = 0.05
ENUMERATION_TOL = 1e-10
PORTRAIT_EPS = 1e-6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_complex(text: str) -> complex:
    """Parse ``a+bi``, ``a-bi``, ``a`` or ``bi`` with decimal components."""
    t = text.strip().replace(" ", "")
    if not t or any(ch not in "0123456789.+-eEi" for ch in t) or "j" in t:
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r}")
    try:
        return complex(t.replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r}") from None


def _family(text):
    try:
        return ThetaSequence.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", type=_family, default=ThetaSequence.ewens(1.0),
                        help="ewens:T | scaled:T:RHO | custom:T1,..,Tk|T:RHO (default ewens:1)")
    common.add_argument("--n", type=int, default=100)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=10_000)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--workers", type=int, default=None, help="sampler threads")

    p = _Parser(prog="ewens-charpoly", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("sample", parents=[common], help="draw cycle types")
    sp.set_defaults(samples=1)

    sp = sub.add_parser("second-moment", parents=[common], help="Monte Carlo E|p_n(z)|^2")
    sp.add_argument("--z", type=parse_complex, required=True)

    sp = sub.add_parser("traces", parents=[common], help="cycle counts vs Poisson limit")
    sp.add_argument("--kmax", type=int, default=3)

    sp = sub.add_parser("limit-sample", parents=[common], help="draw the truncated limit field")
    sp.add_argument("--z", type=parse_complex, default=None)
    sp.add_argument("--delta", type=float, default=0.5)
    sp.add_argument("--eps", type=float, default=1e-8)

    sp = sub.add_parser("covariance", parents=[common], help="Cov(f(z), f(w)) vs closed form")
    sp.add_argument("--z", type=parse_complex, required=True)
    sp.add_argument("--w", type=parse_complex, required=True)

    sp = sub.add_parser("converge", parents=[common], help="KS distance p_n(z) vs F(z)")
    sp.add_argument("--z", type=parse_complex, required=True)
    sp.add_argument("--assert", dest="check", action="store_true")
    sp.add_argument("--threshold", type=float, default=CONVERGE_KS)

    sp = sub.add_parser("portrait", parents=[common], help="phase portrait as binary PPM")
    sp.add_argument("--grid", type=int, default=512)
    sp.add_argument("--limit", action="store_true", help="draw the limit field instead of p_n")
    sp.add_argument("--csv", default=None, help="also dump grid values as CSV")

    sp = sub.add_parser("enumerate-check", parents=[common],
                        help="enumeration vs series oracles")
    sp.add_argument("--assert", dest="check", action="store_true")
    return p


def _check_disk(*zs):
    for z in zs:
        if z is not None and abs(z) >= 1:
            raise UsageError(f"|{z}| must be < 1")


def _emit(args, records):
    lines = "".join(json.dumps(stats._jsonable(r)) + "\n" for r in records)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(lines)
    else:
        sys.stdout.write(lines)


def cmd_sample(args):
    ens = sample_cycle_types(args.family, args.n, args.samples, args.seed, workers=args.workers)
    return [{"family": str(args.family), "n": args.n, "seed": args.seed, "replica": i,
             "cycle_counts": {str(k): c for k, c in ens.cycle_type(i).support().items()}}
            for i in range(ens.n_samples)]


def cmd_second_moment(args):
    _check_disk(args.z)
    return [stats.mc_second_moment(args.family, args.n, args.z, args.samples, args.seed,
                                   workers=args.workers).to_dict()]


def cmd_traces(args):
    return [stats.trace_distribution_test(args.family, args.n, args.kmax, args.samples,
                                          args.seed, workers=args.workers).to_dict()]


def cmd_limit_sample(args):
    s = sample_limit(args.family, args.delta, args.eps, args.seed)
    rec = {"family": str(args.family), "K": s.K, "eps": s.eps, "delta": s.delta,
           "seed": s.seed, "y": list(s.y)}
    if args.z is not None:
        rec["z"] = args.z
        rec["F"] = eval_F(s, args.z)
    return [rec]


def cmd_covariance(args):
    _check_disk(args.z, args.w)
    return [stats.covariance_test(args.family, args.z, args.w, args.samples, args.seed,
                                  workers=args.workers).to_dict()]


def cmd_converge(args):
    _check_disk(args.z)
    rep = stats.charpoly_vs_limit_test(args.family, args.n, args.z, args.samples, args.seed,
                                       workers=args.workers).to_dict()
    rep["threshold"] = args.threshold
    rep["passed"] = rep["ks_log_abs"] < args.threshold
    return [rep]


def cmd_enumerate_check(args):
    rep = stats.enumeration_check(args.family, args.n)
    rep["tolerance"] = ENUMERATION_TOL
    rep["passed"] = rep["max_error"] < ENUMERATION_TOL
    return [rep]


def cmd_portrait(args):
    if args.limit:
        s = sample_limit(args.family, portrait.HALF_WIDTH, PORTRAIT_EPS, args.seed)
        mult = {k: y for k, y in enumerate(s.y, start=1) if y}
    else:
        ens = sample_cycle_types(args.family, args.n, 1, args.seed, workers=args.workers)
        mult = ens.cycle_type(0).support()
    rgb, z, inside, logv = portrait.render(mult, args.grid)
    out = args.out or "portrait.ppm"
    with open(out, "wb") as fh:
        fh.write(portrait.ppm_bytes(rgb))
    if args.csv:
        pts, vals = z[inside], np.exp(logv)
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["z_re", "z_im", "value_re", "value_im"])
            for p, v in zip(pts, vals):
                w.writerow([repr(p.real), repr(p.imag), repr(v.real), repr(v.imag)])
    args.out = None  # the JSON summary goes to stdout
    return [{"command": "portrait", "family": str(args.family), "n": args.n,
             "limit": args.limit, "grid": args.grid, "seed": args.seed, "path": out}]


COMMANDS = {
    "sample": cmd_sample,
    "second-moment": cmd_second_moment,
    "traces": cmd_traces,
    "limit-sample": cmd_limit_sample,
    "covariance": cmd_covariance,
    "converge": cmd_converge,
    "portrait": cmd_portrait,
    "enumerate-check": cmd_enumerate_check,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        records = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, SizeError, ConfigError, PrecondError, OverflowError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(args, records)
    if getattr(args, "check", False) and not all(r.get("passed", True) for r in records):
        return EXIT_THRESHOLD
    return 0


if __name__ == "__main__":
    sys.exit(main())
