"""Command line entry point.

Exit codes: 0 ok, 1 usage or parse error, 2 computational error,
3 a bound check failed (counterexample candidate).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .bounds import (
    coeff_upper_bound,
    envelope_candidates,
    finiteness_envelope,
    hs_upper_bound,
    hs_upper_bound_weak,
    reg_upper_bound,
    reg_upper_bound_cm,
)
from .pipeline import (
    InstanceError,
    StageError,
    analyze,
    corpus_run,
    example_family,
    format_report,
    parse_instance,
)
from .poly import ParseError

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_VERDICT = 0, 1, 2, 3


def _emit_report(rep, as_json: bool, out) -> int:
    if as_json:
        json.dump(rep.to_dict(), out, indent=2)
        out.write("\n")
    else:
        out.write(format_report(rep) + "\n")
    return EXIT_VERDICT if rep.failures else EXIT_OK


def cmd_analyze(args, out) -> int:
    try:
        with open(args.file) as fh:
            spec = parse_instance(fh.read())
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InstanceError, ParseError) as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return _emit_report(analyze(spec, horizon=args.horizon), args.json, out)


def cmd_family(args, out) -> int:
    if args.r < 1:
        print("error: --r must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    return _emit_report(analyze(example_family(args.r), horizon=args.horizon), args.json, out)


def cmd_corpus(args, out) -> int:
    binomial = args.binomial if args.binomial is not None else args.count // 2
    summary = corpus_run(args.seed, args.count, binomial, directory=args.dir)
    if args.json:
        json.dump(summary.to_dict(), out, indent=2)
        out.write("\n")
    else:
        out.write(f"instances {summary.instances}   checks {summary.verdicts}   held {summary.holds}   "
                  f"skipped {summary.skipped}   {summary.elapsed:.2f}s\n")
        for thm, (n, ok) in summary.by_theorem.items():
            out.write(f"  {thm:<18} {ok}/{n}\n")
        for f in summary.failures:
            out.write(f"FAIL {f['tag']} {f['thm']} {f['inputs']} bound {f['bound']} actual {f['actual']}\n")
        for e in summary.errors:
            out.write(f"ERROR {e['tag']}: {e['error']}\n")
    if summary.errors:
        return EXIT_COMPUTE
    return EXIT_VERDICT if summary.failures else EXIT_OK


def cmd_bounds(args, out) -> int:
    d, e, I, n = args.d, args.e, args.i, args.n
    rows = [
        (f"Hilbert-Samuel l(A/m^{n + 1})", hs_upper_bound(n, d, e, I)),
        (f"  weak form, D = {e + I}", hs_upper_bound_weak(n, d, e + I)),
        ("reg(G)", reg_upper_bound(d, e, I)),
        ("reg(G), Cohen-Macaulay", reg_upper_bound_cm(d, e)),
    ]
    for i in range(1, d + 1):
        rows.append((f"|e_{i}|", coeff_upper_bound(i, e, I)))
        rows.append((f"|e_{i}|, Cohen-Macaulay", coeff_upper_bound(i, e, 0, "cm")))
        rows.append((f"|e_{i}|, (9e^5)^(i!)", coeff_upper_bound(i, e, 0, "srinivas-trivedi")))
        rows.append((f"|e_{i}|, [(3+c)^2 e^5]^(i!), c = {args.c if args.c is not None else 2 * I}",
                     coeff_upper_bound(i, e, I, "trivedi", args.c)))
    width = max(len(r[0]) for r in rows)
    out.write(f"d = {d}, e = {e}, I = {I}, n = {n}\n")
    for name, val in rows:
        out.write(f"  {name:<{width}}  {val}\n")
    return EXIT_OK


def cmd_envelope(args, out) -> int:
    env = finiteness_envelope(args.d, args.q)
    if args.json:
        json.dump(
            {
                "d": env.d,
                "q": env.q,
                "count": str(env.count),
                "splits": [
                    {"e": s.e, "I": s.I, "n0": s.n0, "count": str(s.count),
                     "coeff_ranges": [list(r) for r in s.coeff_ranges]}
                    for s in env.splits
                ],
            },
            out,
            indent=2,
        )
        out.write("\n")
        return EXIT_OK
    out.write(f"d = {env.d}, D <= {env.q}\n")
    for s in env.splits:
        coeffs = ", ".join(f"|e_{i}| <= {hi}" for i, _, hi in s.coeff_ranges)
        out.write(f"  e = {s.e}, I = {s.I}: n0 = {s.n0}, {coeffs}, candidates {s.count}\n")
    out.write(f"total candidates: {env.count}\n")
    if env.count <= args.show:
        for c in envelope_candidates(env):
            vals = ", ".join(str(c(n)) for n in range(max(c.n0, 1) + 4))
            out.write(f"  e_i = {list(c.e_coeffs)}: {vals}, ...\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cmreg", description="Tangent cones, regularity and Hilbert-Samuel bounds.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze an instance file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--horizon", type=int, default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("family", help="analyze k[[x,y]]/(x^2, x*y^r)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--horizon", type=int, default=None)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("corpus", help="run every check on a seeded random corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100, help="monomial ideals")
    p.add_argument("--binomial", type=int, default=None, help="binomial ideals (default count/2)")
    p.add_argument("--dir", default=None, help="analyze *.txt instance files here instead")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("bounds", help="evaluate every bound formula")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--c", type=int, default=None, help="invariant for the trivedi variant (default 2I)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("envelope", help="finiteness envelope for dim d and extended degree <= q")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--show", type=int, default=20, help="list candidates when there are at most this many")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_envelope)
    return ap


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except StageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
