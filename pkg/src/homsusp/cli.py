"""Command-line interface.

Exit codes: 0 analysis completed (the verdict may be negative), 1 input,
parse or schema error, 2 resource limit, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

import jsonschema

from . import danielewski as dan
from . import specfile
from .analyzer import analyze
from .errors import HomSuspError, InconsistencyError, ResourceError
from .fforacle import cross_check_emptiness
from .geometry import hypersurface_scheme_smooth
from .groebner import MonomialOrder, groebner_basis
from .parsing import parse_polynomial
from .poly import VariableContext, format_scalar, limits
from .report import emit_report

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_INTERNAL = 0, 1, 2, 3


def _vars(text: str) -> list[str]:
    return [v for v in text.replace(",", " ").split() if v]


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument("--oracle-check", action="store_true", help="cross-check unit-ideal verdicts mod small primes")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized tooling")
    parser.add_argument("--max-degree", type=int, default=None)
    parser.add_argument("--max-terms", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homsusp", description="Homogeneity of suspensions and Danielewski surfaces")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze a JSON spec file")
    p.add_argument("spec")
    _common(p)

    p = sub.add_parser("danielewski", help="Danielewski surfaces x z^n = f(y)")
    p.add_argument("action", choices=("classify", "picard", "isom"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--n2", type=int)
    p.add_argument("--f2")
    _common(p)

    p = sub.add_parser("smooth", help="smoothness of the hypersurface scheme {f = 0}")
    p.add_argument("--f", required=True)
    p.add_argument("--vars", required=True)
    _common(p)

    p = sub.add_parser("groebner", help="reduced Gröbner basis (debugging)")
    p.add_argument("--gens", nargs="+", required=True)
    p.add_argument("--vars", required=True)
    p.add_argument("--order", choices=("lex", "grevlex"), default="grevlex")
    _common(p)

    p = sub.add_parser("schema", help="print the spec-file JSON schema")
    return parser


def _emit(args, payload: dict, text: str, out) -> None:
    if getattr(args, "format", "text") == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(text.rstrip() + "\n")


def _cmd_analyze(args, out) -> int:
    spec = specfile.load(args.spec)
    rep = analyze(spec, oracle_check=args.oracle_check)
    out.write(emit_report(rep, args.format))
    return EXIT_RESOURCE if rep.resource_limited else EXIT_OK


def _cmd_danielewski(args, out) -> int:
    S1 = dan.DanielewskiSurface(args.n, parse_polynomial(args.f, ["y"]))
    if args.action == "classify":
        v = dan.classify(S1)
        payload = {
            "label": v.label.value,
            "homogeneous_variety": v.homogeneous_variety,
            "homogeneous_space": v.homogeneous_space,
            "reason": v.reason,
        }
        _emit(args, payload, f"{v.label.value}: {v.reason}", out)
        return EXIT_OK
    if args.action == "picard":
        rank = dan.picard_rank(S1)
        _emit(args, {"picard_rank": rank}, f"Picard rank: {rank}", out)
        return EXIT_OK
    if args.n2 is None or args.f2 is None:
        raise ValueError("isom needs --n2 and --f2")
    S2 = dan.DanielewskiSurface(args.n2, parse_polynomial(args.f2, ["y"]))
    w = dan.isomorphic(S1, S2)
    if w is None:
        _emit(args, {"isomorphic": False}, "not isomorphic", out)
        return EXIT_OK
    fmt = lambda q: None if q is None else format_scalar(q)  # noqa: E731
    payload = {
        "isomorphic": True,
        "a": fmt(w.a),
        "b": fmt(w.direct_b),
        "c": fmt(w.c),
        "b_power": {"g": w.g, "beta": fmt(w.beta)},
    }
    if w.direct_b is not None:
        text = f"isomorphic: f1(y) = a*f2(b*y + c) with a = {fmt(w.a)}, b = {fmt(w.direct_b)}, c = {fmt(w.c)}"
    else:
        text = (
            f"isomorphic: f1(y) = a*f2(b*y + c) with b^{w.g} = {fmt(w.beta)}, "
            f"a = {fmt(w.lc_ratio)}/b^{w.degree}, c = {fmt(w.shift2)} - b*({fmt(w.shift1)})"
        )
    _emit(args, payload, text, out)
    return EXIT_OK


def _cmd_smooth(args, out) -> int:
    f = parse_polynomial(args.f, _vars(args.vars))
    record = []
    ok = hypersurface_scheme_smooth(f, record=record)
    if args.oracle_check:
        for gens, unit in record:
            cross_check_emptiness(list(gens), unit=unit, strict=True)
    _emit(args, {"smooth": ok}, "smooth" if ok else "not smooth", out)
    return EXIT_OK


def _cmd_groebner(args, out) -> int:
    ctx = VariableContext(_vars(args.vars))
    gens = [parse_polynomial(g, ctx) for g in args.gens]
    G = groebner_basis(gens, MonomialOrder(ctx, args.order))
    if args.oracle_check:
        cross_check_emptiness(gens, unit=G.is_unit(), strict=True)
    basis = [str(g) for g in G]
    _emit(args, {"order": args.order, "basis": basis}, "\n".join(basis) or "0", out)
    return EXIT_OK


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if args.command == "schema":
        out.write(json.dumps(specfile.SCHEMA, indent=2) + "\n")
        return EXIT_OK
    random.seed(args.seed)
    overrides = {}
    env_degree = os.environ.get("SUSP_MAX_DEGREE")
    if env_degree:
        overrides["max_degree"] = int(env_degree)
    if args.max_degree is not None:
        overrides["max_degree"] = args.max_degree
    if args.max_terms is not None:
        overrides["max_terms"] = args.max_terms
    handler = {
        "analyze": _cmd_analyze,
        "danielewski": _cmd_danielewski,
        "smooth": _cmd_smooth,
        "groebner": _cmd_groebner,
    }[args.command]
    try:
        with limits(**overrides):
            return handler(args, out)
    except InconsistencyError as exc:
        err.write(f"internal inconsistency: {exc}\n")
        return EXIT_INTERNAL
    except ResourceError as exc:
        err.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCE
    except (HomSuspError, ValueError, OSError, json.JSONDecodeError, jsonschema.ValidationError) as exc:
        msg = exc.message if isinstance(exc, jsonschema.ValidationError) else str(exc)
        err.write(f"error: {msg}\n")
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        err.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


def main_entry() -> None:
    sys.exit(main())
