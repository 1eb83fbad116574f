"""Batch command-line front end.

Every subcommand prints one JSON document (keys sorted) on stdout; diagnostics
go to stderr.  Exit codes: 0 success or controlled, 3 not controlled,
4 undecided, 2 bad input, 5 internal mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import constants as K
from . import identities as I
from . import probe as P
from .criterion import SCHEMA, Controlled, NotControlled, OperatorSpec, check_condition_iv
from .errors import CriterionError, InternalMismatch
from .harmonic import HarmonicExpansion, decompose, xy_family_generate
from .poly import HPoly, from_json_obj, to_json_obj
from .scalar import ball_volume, format_scalar, gamma_j, sphere_area

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_CONTROLLED = 3
EXIT_UNDECIDED = 4
EXIT_INTERNAL = 5


class InputError(Exception):
    pass


def _load_json(text: str):
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def _load_spec(args) -> OperatorSpec:
    num, exp = getattr(args, "numerator", None), getattr(args, "expansion", None)
    if num is not None and exp is not None:
        raise InputError("give either --numerator or --expansion, not both")
    if num is None and exp is None:
        raise InputError("one of --numerator or --expansion is required")
    try:
        if exp is not None:
            obj = _load_json(exp)
            if isinstance(obj, dict) and "expansion" in obj:
                obj = obj["expansion"]
            spec = OperatorSpec(HarmonicExpansion.from_json_obj(obj))
        else:
            spec = OperatorSpec.from_numerator(from_json_obj(_load_json(num)))
    except InputError:
        raise
    except (ValueError, KeyError, TypeError, ArithmeticError) as exc:
        raise InputError(f"{type(exc).__name__}: {exc}") from exc
    if args.dim is not None and spec.n_vars != args.dim:
        raise InputError(f"--dim {args.dim} does not match the input ({spec.n_vars} variables)")
    return spec


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _text(x) -> str:
    return format_scalar(x)


# -- subcommands ------------------------------------------------------------------

def cmd_decompose(args, out) -> int:
    spec = _load_spec(args)
    num = spec.expansion.numerator()
    layers = [{"harmonic": to_json_obj(h), "radial_power": k} for h, k in decompose(num)]
    _emit({"schema": SCHEMA, "expansion": spec.expansion.to_json_obj(), "layers": layers}, out)
    return EXIT_OK


def cmd_check(args, out) -> int:
    spec = _load_spec(args)
    verdict = check_condition_iv(spec, budget=args.budget, seed=args.seed)
    _emit(verdict.to_json_obj(), out)
    if isinstance(verdict, Controlled):
        return EXIT_OK
    if isinstance(verdict, NotControlled):
        return EXIT_NOT_CONTROLLED
    return EXIT_UNDECIDED


def cmd_gamma(args, out) -> int:
    n = args.dim or 2
    rows = {str(j): _text(gamma_j(n, j)) for j in args.degree}
    _emit({"schema": SCHEMA, "n": n, "gamma": rows,
           "ball_volume": _text(ball_volume(n)), "sphere_area": _text(sphere_area(n))}, out)
    return EXIT_OK


def cmd_constants(args, out) -> int:
    n, N = args.dim or 2, args.N
    fc = K.fundamental_constants(n, N)
    A = K.a_coefficients(n, N).coefficients
    b = K.b_polynomial(n, N).coefficients
    doc = {
        "schema": SCHEMA,
        "n": n,
        "N": N,
        "sqrt2_scale": K.sqrt2_scale(n),
        "fundamental": {"alpha": _text(fc.alpha), "beta": _text(fc.beta), "case": fc.case_tag},
        "A": {str(L): _text(A[L] if L < len(A) else Fraction(0)) for L in range(2 * N)},
        "b": {str(k): _text(c) for k, c in enumerate(b)},
        "C2j": {str(j): _text(K.C2j(n, N, j).closed_form) for j in range(1, N)},
        "mu": {
            str(p): {str(j): _text(c) for j, c in K.a2p_functional(n, N, p).coefficients.items()}
            for p in range(1, N)
        },
    }
    _emit(doc, out)
    return EXIT_OK


def cmd_identities(args, out) -> int:
    if args.sweep == "default":
        ranges = I.DEFAULT_RANGES
    else:
        ranges = I.SweepRanges(dims=(2, 3), n_max=4, triple_max=2)
    if args.jsonl:
        failures = 0
        for rep in I.iter_reports(ranges):
            if not rep.skipped and not rep.equal:
                failures += 1
            out.write(json.dumps(rep.to_json_obj(), sort_keys=True) + "\n")
        return EXIT_OK if failures == 0 else EXIT_INTERNAL
    res = I.run_suite(ranges)
    doc = res.to_json_obj()
    doc["schema"] = SCHEMA
    _emit(doc, out)
    return EXIT_OK if not res.failures else EXIT_INTERNAL


def cmd_probe(args, out) -> int:
    cfg = P.CONFIG
    if args.tol is not None:
        from dataclasses import replace

        cfg = replace(cfg, reconstruction_rel_tol=args.tol)
    kind = args.kind
    if kind == "growth":
        rep = P.bN_growth_table(args.dim or 2, range(1, args.N + 1), cfg)
        if args.csv:
            out.write(P.rows_to_csv(rep.observed))
            return EXIT_OK if rep.passed else EXIT_NOT_CONTROLLED
    else:
        spec = _load_spec(args)
        if kind == "reconstruct":
            if len(spec.expansion.components) != 1:
                raise InputError("reconstruct needs a single harmonic component")
            pt = tuple(float(Fraction(v)) for v in args.point.split(","))
            rep = P.verify_kernel_reconstruction(spec.expansion.components[0][1], pt, config=cfg)
        elif kind == "scan":
            rep = P.multiplier_ratio_scan(spec, args.directions, config=cfg)
        elif kind == "stability":
            rep = P.scan_stability(spec, args.directions, config=cfg)
        elif kind == "zeros":
            rep = P.zero_sets_check(spec)
        elif kind == "pointwise":
            rep = P.discrete_pointwise_probe(spec, args.function, config=cfg)
        else:  # pragma: no cover - argparse restricts choices
            raise InputError(f"unknown probe {kind}")
    doc = rep.to_json_obj()
    doc["schema"] = SCHEMA
    _emit(doc, out)
    return EXIT_OK if rep.passed else EXIT_NOT_CONTROLLED


def cmd_xy_family(args, out) -> int:
    polys = []
    for j in range(args.j_max + 1):
        p = xy_family_generate(j)
        polys.append({"j": j, "poly": to_json_obj(p), "harmonic": p.is_harmonic()})
    _emit({"schema": SCHEMA, "polynomials": polys}, out)
    return EXIT_OK


# -- argument parsing --------------------------------------------------------------

def _spec_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--numerator", help="numerator polynomial |x|^{2N} Omega as JSON or @file")
    p.add_argument("--expansion", help="harmonic expansion as JSON or @file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="czcriterion", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, default=None, help="dimension n")
    common.add_argument("--budget", type=int, default=10**5, help="subdivision cell budget")
    common.add_argument("--tol", type=float, default=None, help="probe tolerance override")
    common.add_argument("--seed", type=int, default=0, help="seed for sampling")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--csv", action="store_true", help="CSV output where a table exists")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="harmonic expansion of a numerator")
    _spec_flags(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("check", parents=[common], help="decide condition (iv)")
    _spec_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gamma", parents=[common], help="multiplier constants gamma_j")
    p.add_argument("--degree", type=int, nargs="+", default=[2, 4], help="even degrees j")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("constants", parents=[common], help="exact constant table")
    p.add_argument("--N", type=int, default=2)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("identities", parents=[common], help="exact identity sweep")
    p.add_argument("--sweep", choices=["default", "quick"], default="default")
    p.add_argument("--jsonl", action="store_true", help="one JSON line per identity")
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("probe", parents=[common], help="numerical probes (n = 2)")
    p.add_argument("kind", choices=["reconstruct", "scan", "stability", "zeros", "pointwise", "growth"])
    _spec_flags(p)
    p.add_argument("--point", default="2,1", help="exterior point for reconstruct, e.g. 2,1")
    p.add_argument("--directions", type=int, default=1000)
    p.add_argument("--function", default="disc", choices=["disc", "gaussian", "bump", "zero"])
    p.add_argument("--N", type=int, default=8, help="largest N for the growth table")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("xy-family", parents=[common], help="harmonic family x*y*Q_2j in three variables")
    p.add_argument("--j-max", type=int, default=3)
    p.set_defaults(func=cmd_xy_family)
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (InternalMismatch, AssertionError) as exc:
        err.write(f"internal mismatch: {exc}\n")
        return EXIT_INTERNAL
    except (CriterionError, ValueError, OSError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
