"""Command-line front end: parse inputs, run pipelines, emit reports.

Exit codes: 0 pass, 2 invalid input, 3 not a cocycle, 4 verification
failure, 5 jet instability.  JSON output is schema-stable and
byte-deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .polyring import (
    Poly,
    PolyParseError,
    WeightSystem,
    parse_poly,
    render_monomial,
    render_poly,
)
from .polyvector import Bivector, VectorField, render_polyvector
from .milnor import BasisOverrideError, NotFiniteCodimensionError, NotWeightHomogeneousError
from .cohomology import (
    JetOrderError,
    NotACocycleError,
    StructureError,
    hp_dimensions,
    make_structure,
    normalize_hp1,
    normalize_hp2_pi_traced,
)
from .oracle import graded_dims, jet_dims
from .gerstenhaber import gerstenhaber_table, presentation
from .arnold import CatalogError, catalog_sweep, instantiate, parse_type, verify

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_COCYCLE = 3
EXIT_VERIFY_FAILED = 4
EXIT_JET_UNSTABLE = 5

_INPUT_ERRORS = (
    PolyParseError,
    StructureError,
    NotWeightHomogeneousError,
    NotFiniteCodimensionError,
    BasisOverrideError,
    CatalogError,
    ValueError,
)


def _emit(data: dict, args) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        _emit_text(data)


def _emit_text(data: dict, indent: int = 0) -> None:
    pad = "  " * indent
    for key in sorted(data):
        value = data[key]
        if isinstance(value, dict):
            print(f"{pad}{key}:")
            _emit_text(value, indent + 1)
        elif isinstance(value, list):
            print(f"{pad}{key}:")
            for item in value:
                if isinstance(item, dict):
                    _emit_text(item, indent + 1)
                    print(f"{pad}  -")
                else:
                    print(f"{pad}  {item}")
        else:
            print(f"{pad}{key}: {value}")


def _structure_from_args(args):
    if args.type:
        t = parse_type(args.type, Fraction(args.lam), Fraction(args.mu))
        return instantiate(t)
    if not args.f or not args.weights:
        raise ValueError("provide either --type or both --f and --weights")
    w1, w2 = (int(part) for part in args.weights.split(","))
    f = parse_poly(args.f)
    h = parse_poly(args.h) if args.h else Poly.zero()
    override = None
    if args.basis_override:
        with open(args.basis_override) as fh:
            entries = [line.strip() for line in fh if line.strip()]
        override = []
        for entry in entries:
            p = parse_poly(entry)
            terms = p.terms
            if len(terms) != 1 or list(terms.values())[0] != 1:
                raise ValueError(f"override entry {entry!r} is not a monomial")
            override.append(next(iter(terms)))
    return make_structure(f, h, WeightSystem(w1, w2), basis_override=override)


def cmd_cohomology(args) -> int:
    P = _structure_from_args(args)
    dims = hp_dimensions(P)
    data = {
        "pi": render_poly(P.f * P.one_plus_h),
        "weights": [P.w.w1, P.w.w2],
        "degree": P.d,
        "dimensions": {"hp0": dims[0], "hp1": dims[1], "hp2": dims[2], "hp3": dims[3]},
        "milnor_basis": [
            {"monomial": label, "degree": deg}
            for label, deg in zip(P.milnor.labels(), P.milnor.degrees)
        ],
        "p_space": list(P.pspace.labels()),
        "representatives": {
            "u": render_polyvector(P.rep_u()),
            **{f"v{j + 1}": render_polyvector(P.rep_v(j)) for j in range(P.r)},
        },
    }
    _emit(data, args)
    return EXIT_OK


def cmd_normalize(args) -> int:
    P = _structure_from_args(args)
    if (args.bivector is None) == (args.vector_field is None):
        raise ValueError("provide exactly one of --bivector or --vector-field")
    if args.bivector is not None:
        B = Bivector(parse_poly(args.bivector))
        cls, trace = normalize_hp2_pi_traced(B, P)
        data = {
            "input": render_polyvector(B),
            "class": cls.to_json(P),
            "trace": [
                {
                    "degree": step.degree,
                    "lambdas": [str(v) for v in step.lambdas],
                    "cofactor": render_polyvector(step.cofactor),
                    "k": step.k if step.k is not None else "none",
                    "chain": [render_polyvector(x) for x in step.chain],
                    "f_part": render_poly(step.f_part),
                }
                for step in trace
            ],
        }
    else:
        spec = json.loads(args.vector_field)
        X = VectorField(parse_poly(spec["dx"]), parse_poly(spec["dy"]))
        cls = normalize_hp1(X, P, args.jet_order)
        data = {"input": render_polyvector(X), "class": cls.to_json(P)}
    _emit(data, args)
    return EXIT_OK


def cmd_tables(args, which: str) -> int:
    P = _structure_from_args(args)
    table = gerstenhaber_table(P)
    full = table.to_json()
    data = {which: full[which], "presentation": presentation(P).to_json()}
    _emit(data, args)
    return EXIT_OK


def cmd_oracle(args) -> int:
    P = _structure_from_args(args)
    if args.mode == "graded":
        report = graded_dims(P, args.max_degree if args.max_degree else 2 * P.d)
    else:
        report = jet_dims(P, args.jet_order if args.jet_order else 4 * P.d)
    _emit(report.to_json(), args)
    if report.stabilized is False:
        return EXIT_JET_UNSTABLE
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.sweep:
        report = catalog_sweep(args.p_max)
        _emit(report.to_json(), args)
        return EXIT_VERIFY_FAILED if report.failed else EXIT_OK
    if not args.type:
        raise ValueError("verify needs --type or --sweep")
    t = parse_type(args.type, Fraction(args.lam), Fraction(args.mu))
    report = verify(t, jet_order=args.jet_order)
    _emit(report.to_json(), args)
    return EXIT_VERIFY_FAILED if report.failed else EXIT_OK


def _add_input_flags(sub) -> None:
    sub.add_argument("--f", help="polynomial f (expression string)")
    sub.add_argument("--h", help="polynomial h (default 0)")
    sub.add_argument("--weights", help="w1,w2")
    sub.add_argument("--type", help="catalog selector, e.g. A3+, D4-, E7")
    sub.add_argument("--lambda", dest="lam", default="0", help="rational, e.g. 1/2")
    sub.add_argument("--mu", default="0", help="rational, e.g. 1/2")
    sub.add_argument("--basis-override", help="file with one monomial per line")
    sub.add_argument("--jet-order", type=int, default=None)
    sub.add_argument("--json", action="store_true", help="emit JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="planepoisson",
        description="Exact Poisson cohomology of plane Poisson structures f*(1+h) dx^dy",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("cohomology", help="dimensions and canonical bases")
    _add_input_flags(sub)
    sub.set_defaults(func=cmd_cohomology)

    sub = subs.add_parser("normalize", help="reduce a cocycle to canonical coordinates")
    _add_input_flags(sub)
    sub.add_argument("--bivector", help="coefficient of dx^dy (expression string)")
    sub.add_argument("--vector-field", help='JSON {"dx": expr, "dy": expr}')
    sub.set_defaults(func=cmd_normalize)

    sub = subs.add_parser("brackets", help="Schouten bracket table on the HP basis")
    _add_input_flags(sub)
    sub.set_defaults(func=lambda args: cmd_tables(args, "bracket"))

    sub = subs.add_parser("wedge", help="wedge table on the HP basis")
    _add_input_flags(sub)
    sub.set_defaults(func=lambda args: cmd_tables(args, "wedge"))

    sub = subs.add_parser("oracle", help="brute-force dimension computation")
    _add_input_flags(sub)
    sub.add_argument("--mode", choices=("graded", "jet"), default="graded")
    sub.add_argument("--max-degree", type=int, default=None)
    sub.set_defaults(func=cmd_oracle)

    sub = subs.add_parser("verify", help="compare against the published catalog")
    _add_input_flags(sub)
    sub.add_argument("--sweep", action="store_true")
    sub.add_argument("--p-max", type=int, default=2)
    sub.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotACocycleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_COCYCLE
    except JetOrderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_JET_UNSTABLE
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
