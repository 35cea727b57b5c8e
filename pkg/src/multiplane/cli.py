"""Command-line interface: ``multiplane <subcommand> ...``.

Exit status is 0 on success, 1 when an ``--oracle`` cross-check
disagrees, 2 for unreadable or malformed input and 3 when a
mathematical precondition fails.  Set ``MULTIPLANE_VERBOSE=1`` (or 2)
for progress logging on standard error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import io
from .covering import normalize
from .enriques import cluster_colength, minimal_cluster, unload
from .irregularity import irregularity, profile, triple_point_bound
from .linsys.curves import line_arrangement, transversality_check
from .linsys.polys import XYZ, parse_polynomial
from .multiplier import (SingularityType, jumping_numbers, jumping_numbers_oracle,
                         multiplier_cluster, singularity_params)


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _type(args) -> SingularityType:
    if args.type is not None:
        return singularity_params(args.type)
    if None in (args.p, args.q, args.d):
        raise InputError("give --type or all of --p, --q, --d")
    return SingularityType(args.p, args.q, args.d)


def _add_type_options(sp):
    sp.add_argument("--p", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--type", help='label such as "A_2" or "ordinary_3"')


def cmd_jumping_numbers(args):
    t = _type(args)
    values = [j.value for j in jumping_numbers(t)]
    out = {"type": io.type_to_json(t), "jumping_numbers": [io.rational(x) for x in values]}
    status = 0
    if args.oracle:
        agrees = jumping_numbers_oracle(t) == values
        out["oracle_agrees"] = agrees
        status = 0 if agrees else 1
    return out, status


def cmd_multiplier_cluster(args):
    t = _type(args)
    xi = io.parse_rational(args.xi, "--xi")
    k = multiplier_cluster(t, xi)
    return {"type": io.type_to_json(t), "xi": io.rational(xi),
            "cluster": io.cluster_to_json(k), "colength": cluster_colength(k)}, 0


def cmd_unload(args):
    k = unload(io.cluster_from_json(_read_json(args.cluster)))
    return {"cluster": io.cluster_to_json(k), "colength": cluster_colength(k)}, 0


def cmd_minimal_cluster(args):
    k = minimal_cluster(args.p, args.q, args.a, args.b)
    return {"cluster": io.cluster_to_json(k), "colength": cluster_colength(k)}, 0


def cmd_covering_normalize(args):
    return io.covering_to_json(normalize(io.covering_from_json(_read_json(args.covering)))), 0


def _curve(args):
    return io.curve_from_json(_read_json(args.curve), check_jets=not args.no_jet_check)


def cmd_irregularity(args):
    curve = _curve(args)
    flag = "assumed"
    if args.line is not None:
        ok = transversality_check(curve, parse_polynomial(args.line, XYZ))
        flag = {True: "verified", False: "failed", None: "assumed"}[ok]
        if ok is False:
            logging.warning("the line %s is not transverse to the curve", args.line)
    return io.report_to_json(irregularity(curve, args.n, args.irreducible, flag)), 0


def cmd_profile(args):
    curve = _curve(args)
    rows = profile(curve, args.n_max, args.irreducible)
    return {"b": curve.degree, "profile": [{"n": n, "q": q} for n, q in rows]}, 0


def cmd_arrangement_bound(args):
    obj = _read_json(args.lines)
    lines = obj.get("lines") if isinstance(obj, dict) else obj
    if not isinstance(lines, list):
        raise io.FormatError("arrangement: expected a list of lines")
    forms = [io._poly(l, XYZ, f"lines[{i}]") for i, l in enumerate(lines)]
    arr = line_arrangement(forms, check_jets=not args.no_jet_check)
    bound = triple_point_bound(arr, args.n, check=False)
    q = irregularity(arr.curve, args.n).q
    if q > bound:
        raise AssertionError(f"irregularity {q} exceeds the bound {bound}")
    return {"n": args.n, "b": arr.curve.degree, "bound": bound, "q": q,
            "triple_counts": list(arr.triple_counts)}, 0


def build_parser() -> argparse.ArgumentParser:
    # output options are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                     help="compact JSON (default)")
    fmt.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                     help="indented JSON")
    common.add_argument("-o", "--output", default=argparse.SUPPRESS,
                        help="write the report here instead of stdout")
    parser = argparse.ArgumentParser(prog="multiplane", parents=[common],
                                     description="Irregularity of cyclic multiple planes.")
    sub = parser.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    sp = sub.add_parser("jumping-numbers", help="subunitary jumping numbers of a type")
    _add_type_options(sp)
    sp.add_argument("--oracle", action="store_true", help="cross-check by brute force")
    sp.set_defaults(func=cmd_jumping_numbers)

    sp = sub.add_parser("multiplier-cluster", help="cluster of a multiplier ideal")
    _add_type_options(sp)
    sp.add_argument("--xi", required=True, help='coefficient as "num/den"')
    sp.set_defaults(func=cmd_multiplier_cluster)

    sp = sub.add_parser("unload", help="unload a cluster file")
    sp.add_argument("cluster")
    sp.set_defaults(func=cmd_unload)

    sp = sub.add_parser("minimal-cluster", help="minimal cluster K_{p,q}(a,b)")
    for name in ("p", "q", "a", "b"):
        sp.add_argument(f"--{name}", type=int, required=True)
    sp.set_defaults(func=cmd_minimal_cluster)

    sp = sub.add_parser("covering-normalize", help="normalize covering data")
    sp.add_argument("covering")
    sp.set_defaults(func=cmd_covering_normalize)
    cov = sub.add_parser("covering", help="covering data tools")
    cov_sub = cov.add_subparsers(dest="covering_command", required=True)
    sp = cov_sub.add_parser("normalize", parents=[common], help="normalize covering data")
    sp.add_argument("covering")
    sp.set_defaults(func=cmd_covering_normalize)

    for name, func, helptext in (("irregularity", cmd_irregularity, "irregularity for one n"),
                                 ("profile", cmd_profile, "irregularity for n = 2..n_max")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("curve")
        if name == "irregularity":
            sp.add_argument("--n", type=int, required=True)
            sp.add_argument("--line", help="line at infinity to test for transversality")
        else:
            sp.add_argument("--n-max", type=int, required=True)
        sp.add_argument("--irreducible", action="store_true",
                        help="drop jumping numbers with prime-power denominators")
        sp.add_argument("--no-jet-check", action="store_true",
                        help="skip checking declared types against the polynomial")
        sp.set_defaults(func=func)

    sp = sub.add_parser("arrangement-bound", help="triple-point bound for a line arrangement")
    sp.add_argument("lines")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--no-jet-check", action="store_true")
    sp.set_defaults(func=cmd_arrangement_bound)
    return parser


def _configure_logging() -> None:
    level = os.environ.get("MULTIPLANE_VERBOSE", "0")
    levels = {"0": logging.WARNING, "1": logging.INFO, "2": logging.DEBUG}
    logging.basicConfig(level=levels.get(level, logging.INFO), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv: Sequence[str] | None = None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    try:
        report, status = args.func(args)
    except (InputError, io.FormatError) as exc:
        print(f"multiplane: input error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, AssertionError) as exc:
        print(f"multiplane: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    text = io.dumps(report, pretty=getattr(args, "pretty", False))
    output = getattr(args, "output", None)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
