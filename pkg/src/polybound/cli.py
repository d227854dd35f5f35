"""Command-line front end.

Subcommands: bound, certify, copositive, maxcut, density.  Delimited output
(CSV on stdout or --output) is the primary report format; every report path
can additionally render a matplotlib figure next to it via --plot.

Exit codes: 0 success / 1 negative verdict (counterexample, refuted
copositivity) / 2 bad input / 3 unsupported capability.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from ._rat import rat_str
from .cone import certify_nonnegativity, copositivity_test
from .hierarchy import dual_density, density_profile, reports_to_csv, run_hierarchy
from .measures import KINDS, MeasureSpec, MomentSequence
from .poly import Polynomial
from .problems import MaxCutInstance, brute_force_hypercube, maxcut_equal, maxcut_random

DEFAULT_SEED = 271828

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_UNSUPPORTED = 3


class UnsupportedInputError(Exception):
    pass


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def load_problem(path):
    """Problem file: {"v":1, "variables":n, "objective":[terms], "measure":{...}}."""
    obj = _load_json(path)
    if obj.get("v") != 1:
        raise ValueError(f"unsupported problem version {obj.get('v')!r}")
    n = int(obj["variables"])
    kind = obj["measure"].get("kind")
    if kind not in KINDS:
        raise UnsupportedInputError(f"unsupported measure kind {kind!r}")
    f = Polynomial.from_json_terms(n, obj["objective"])
    spec = MeasureSpec.from_json(obj["measure"])
    if spec.n != n:
        raise ValueError("measure dimension does not match variables")
    return f, spec


def _emit(text, output):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_bound(args) -> int:
    f, spec = load_problem(args.problem)
    reports = run_hierarchy(f, MomentSequence(spec), args.dmax, jobs=args.jobs)
    _emit(reports_to_csv(reports), args.output)
    if args.plot:
        from .plots import save_bound_plot
        save_bound_plot(args.plot, reports)
    return EXIT_OK


def cmd_certify(args) -> int:
    f, spec = load_problem(args.problem)
    cert = certify_nonnegativity(f, MomentSequence(spec), args.kmax)
    _emit(json.dumps(cert.to_json(), indent=2) + "\n", args.output)
    return EXIT_OK if cert.is_member else EXIT_NEGATIVE


def cmd_copositive(args) -> int:
    obj = _load_json(args.matrix)
    if obj.get("v") != 1:
        raise ValueError(f"unsupported matrix file version {obj.get('v')!r}")
    report = copositivity_test(obj["q"], args.dmax)
    _emit(json.dumps(report.to_json(), indent=2) + "\n", args.output)
    return EXIT_NEGATIVE if report.is_refuted else EXIT_OK


def cmd_maxcut(args) -> int:
    if args.instance:
        inst = MaxCutInstance.from_json(_load_json(args.instance))
    elif args.n is not None:
        if args.random:
            inst = maxcut_random(args.n, density=args.density, seed=args.seed)
        else:
            inst = maxcut_equal(args.n)
    else:
        raise ValueError("provide --instance FILE or -n N")
    f = inst.objective()
    seq = MomentSequence(MeasureSpec.pm1_cube(inst.n))
    reports = run_hierarchy(f, seq, args.dmax, jobs=args.jobs)
    fstar = None
    if inst.n <= 22:
        fstar, _ = brute_force_hypercube(f, inst.n)
    lines = ["d,lambda,residual,status,fstar"]
    ftxt = "" if fstar is None else f"{float(fstar):.12g}"
    for r in reports:
        lines.append(f"{r.csv_row()},{ftxt}")
    _emit("\n".join(lines) + "\n", args.output)
    if args.plot:
        from .plots import save_bound_plot
        save_bound_plot(args.plot, reports,
                        fstar=None if fstar is None else float(fstar))
    return EXIT_OK


def _parse_ranges(text, n):
    out = []
    for part in text.split(","):
        lo, hi = part.split(":")
        out.append((float(lo), float(hi)))
    if len(out) == 1 and n > 1:
        out = out * n
    if len(out) != n:
        raise ValueError("range count does not match dimension")
    return out


def cmd_density(args) -> int:
    f, spec = load_problem(args.problem)
    seq = MomentSequence(spec)
    reports = run_hierarchy(f, seq, args.d, jobs=args.jobs)
    density = dual_density(reports[-1], seq, allow_ill_conditioned=True)
    ranges = _parse_ranges(args.range, spec.n) if args.range else spec.natural_range()
    if spec.n == 1:
        xs = np.linspace(ranges[0][0], ranges[0][1], args.grid)
        pts = xs[:, None]
    else:
        axes = [np.linspace(lo, hi, args.grid) for lo, hi in ranges]
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=1)
    vals = density_profile(density, pts)
    header = ",".join(f"x{i + 1}" for i in range(spec.n)) + ",sigma"
    lines = [header]
    for p, v in zip(pts, vals):
        coords = ",".join(f"{c:.12g}" for c in p)
        lines.append(f"{coords},{v:.12g}")
    _emit("\n".join(lines) + "\n", args.output)
    if args.plot:
        if spec.n != 1:
            raise UnsupportedInputError("density plots only supported for n = 1")
        from .plots import save_density_plot
        save_density_plot(args.plot, pts[:, 0], vals)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polybound",
                                description="Measure-based upper bounds for polynomial "
                                            "minimization, nonnegativity certification and "
                                            "copositivity testing.")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help="seed for any randomized instance generation")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel hierarchy levels (default 1, deterministic timing)")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="run the bound hierarchy on a problem file")
    b.add_argument("problem")
    b.add_argument("-d", "--dmax", type=int, required=True)
    b.add_argument("-o", "--output")
    b.add_argument("--plot", help="also render the bound curve to this image file")
    b.set_defaults(func=cmd_bound)

    c = sub.add_parser("certify", help="scan nonnegativity up to an order")
    c.add_argument("problem")
    c.add_argument("-k", "--kmax", type=int, required=True)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_certify)

    cp = sub.add_parser("copositive", help="test a symmetric matrix for copositivity")
    cp.add_argument("matrix")
    cp.add_argument("-d", "--dmax", type=int, required=True)
    cp.add_argument("-o", "--output")
    cp.set_defaults(func=cmd_copositive)

    m = sub.add_parser("maxcut", help="hypercube quadratic minimization hierarchy")
    m.add_argument("--instance", help="instance JSON file")
    m.add_argument("-n", type=int, help="vertex count for a generated instance")
    m.add_argument("--random", action="store_true",
                   help="random weights instead of equal weights 1/2")
    m.add_argument("--density", type=float, default=0.5,
                   help="edge survival probability for --random")
    m.add_argument("-d", "--dmax", type=int, required=True)
    m.add_argument("-o", "--output")
    m.add_argument("--plot")
    m.set_defaults(func=cmd_maxcut)

    dn = sub.add_parser("density", help="profile of the dual density at one level")
    dn.add_argument("problem")
    dn.add_argument("-d", type=int, required=True)
    dn.add_argument("--grid", type=int, default=200, help="points per axis")
    dn.add_argument("--range", help="per-axis range lo:hi[,lo:hi...] (default: support box)")
    dn.add_argument("-o", "--output")
    dn.add_argument("--plot")
    dn.set_defaults(func=cmd_density)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
