"""Batch command-line front end.

One binary, four subcommands:

    quatfact atoms    --prime P --level N --max-norm-val B [--format json|csv]
    quatfact factor   --prime P --level N --matrix '[["a","b"],["c","d"]]'
    quatfact clifford --prime P --form a,b,c,u,v,w [--find-nilpotent]
    quatfact verify   [--seed S] [--samples X]

The requested artifact goes to stdout, diagnostics to stderr.  Identical
configurations produce byte-identical output.  Exit codes: 0 ok, 2 domain
error (hereditary level, degenerate form, non-member, ...), 3 parse error,
4 enumeration overflow.
"""

from __future__ import annotations

import argparse
import io
import json
import sys

from . import clifford
from .dvr import DvrConfig, format_rational
from .eichler import EichlerOrder, EichlerProvider, Mat2
from .errors import DomainError, EnumerationOverflowError, ParseError
from .factorize import (
    enumerate_factorizations,
    length_profile,
    rigid_distance,
    scan_atom_norm_valuations,
)
from .verify import VerifyConfig, run_verification

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_PARSE = 3
EXIT_OVERFLOW = 4


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage errors exit with the parse-error code."""

    def error(self, message):
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="quatfact", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, level=False):
        sp.add_argument("--prime", type=int, required=True, help="prime of localization")
        if level:
            sp.add_argument("--level", type=int, required=True, help="Eichler level n")
        sp.add_argument("--threads", type=int, default=1,
                        help="worker cap (execution is deterministic regardless)")

    sp = sub.add_parser("atoms", help="enumerate canonical atoms")
    common(sp, level=True)
    sp.add_argument("--max-norm-val", type=int, required=True)
    sp.add_argument("--format", choices=("json", "csv"), default="json")

    sp = sub.add_parser("factor", help="factor one element of an Eichler order")
    common(sp, level=True)
    sp.add_argument("--matrix", required=True,
                    help='element as JSON [["a","b"],["c","d"]] (literal entries)')
    sp.add_argument("--max-count", type=int, default=10**6)
    sp.add_argument("--emit-dot", metavar="PATH",
                    help="write the factorization graph (rigid-distance labels) as DOT")

    sp = sub.add_parser("clifford", help="classify an even Clifford order")
    common(sp)
    sp.add_argument("--form", required=True, help="coefficients a,b,c,u,v,w")
    sp.add_argument("--find-nilpotent", action="store_true",
                    help="also search for z in J \\ J^2 with nr(z)=0 and report pi^k+z atoms")
    sp.add_argument("--isotropy-bound", type=int, default=6)

    sp = sub.add_parser("verify", help="run the full verification suite")
    sp.add_argument("--seed", type=int, default=1789)
    sp.add_argument("--samples", type=float, default=1.0,
                    help="scale factor on the per-check instance counts")
    sp.add_argument("--max-count", type=int, default=10**6)
    sp.add_argument("--threads", type=int, default=1)
    return parser


def _emit_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _check_threads(args):
    if getattr(args, "threads", 1) < 1:
        raise ParseError("--threads must be at least 1")


def cmd_atoms(args) -> str:
    _check_threads(args)
    order = EichlerOrder(DvrConfig(args.prime), args.level)
    atoms = order.enumerate_atoms(args.max_norm_val)
    if args.format == "csv":
        buf = io.StringIO()
        buf.write("class_id,params,a,b,c,d,norm_valuation\n")
        for tag, V in atoms:
            params = ";".join(str(x) for x in tag.params)
            (sa, sb), (sc, sd) = V.to_strings()
            nv = int(order.norm_valuation(V))
            buf.write(f"{tag.class_id},{params},{sa},{sb},{sc},{sd},{nv}\n")
        return buf.getvalue()
    min_nv, max_observed = scan_atom_norm_valuations(order, args.max_norm_val)
    payload = {
        "config": {"prime": args.prime, "level": args.level, "max_norm_val": args.max_norm_val},
        "atoms": [
            {
                "class": tag.class_id,
                "params": list(tag.params),
                "matrix": V.to_strings(),
                "norm_valuation": int(order.norm_valuation(V)),
            }
            for tag, V in atoms
        ],
        # at level >= 2 atoms of every determinant valuation exist, so the
        # supremum of atom norm valuations is infinite and so are the
        # elasticities; max_observed is the certified bound at this cutoff
        "elasticity": {
            "min_atom_norm_valuation": min_nv,
            "max_observed_norm_valuation": max_observed,
            "supremum_is_infinite": True,
            "rho": "inf",
            "rho_2k": "inf",
        },
    }
    return _emit_json(payload)


def _dot_graph(provider, facts) -> str:
    lines = ["graph factorizations {"]
    for idx, z in enumerate(facts):
        label = str(z).replace('"', "'")
        lines.append(f'  f{idx} [label="{label}"];')
    for i in range(len(facts)):
        for j in range(i + 1, len(facts)):
            d = rigid_distance(provider, facts[i], facts[j])
            lines.append(f'  f{i} -- f{j} [label="{d}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_factor(args) -> str:
    _check_threads(args)
    order = EichlerOrder(DvrConfig(args.prime), args.level)
    try:
        obj = json.loads(args.matrix)
    except json.JSONDecodeError as exc:
        raise ParseError(f"matrix is not valid JSON: {exc}") from exc
    A = Mat2.from_strings(obj)
    provider = EichlerProvider(order)
    if order.is_unit(A):
        from .errors import UnitInputError

        raise UnitInputError(f"{A} is a unit; nothing to factor")
    profile = length_profile(provider, A, args.max_count)
    facts = enumerate_factorizations(provider, A, args.max_count)
    if args.emit_dot:
        with open(args.emit_dot, "w") as fh:
            fh.write(_dot_graph(provider, facts))
    payload = {
        "config": {"prime": args.prime, "level": args.level},
        "element": A.to_strings(),
        "norm_valuation": int(order.norm_valuation(A)),
        "in_radical": order.in_jacobson(A),
        "profile": profile.to_obj(),
        "factorizations": [
            {
                "leading_unit": z.leading_unit.to_strings(),
                "atoms": [u.to_strings() for u in z.atoms],
            }
            for z in facts
        ],
    }
    return _emit_json(payload)


def cmd_clifford(args) -> str:
    _check_threads(args)
    dvr = DvrConfig(args.prime)
    form = clifford.TernaryForm.from_strings(dvr, args.form.split(","))
    if form.is_degenerate():
        from .errors import DegenerateFormError

        raise DegenerateFormError(f"form {form} has vanishing half-discriminant")
    payload = {
        "config": {"prime": args.prime, "form": form.to_obj()},
        "half_discriminant": format_rational(form.half_discriminant()),
        "classification": clifford.radical_report(form),
        "order": clifford.order_predicates(form),
        "nilpotency_index": clifford.nilpotency_index(form),
    }
    if args.find_nilpotent:
        z = clifford.find_nilpotent_in_radical(form, args.isotropy_bound)
        atoms = []
        for k in range(2, 6):
            x = clifford.long_atom_family(form, z, k)
            atoms.append(
                {
                    "k": k,
                    "element": x.to_strings(),
                    "norm_valuation": int(dvr.valuation(x.norm())),
                    "is_atom": clifford.is_atom_local(form, x),
                }
            )
        payload["nilpotent"] = {
            "element": z.to_strings(),
            "norm": format_rational(z.norm()),
            "trace": format_rational(z.trace()),
            "long_atoms": atoms,
        }
    return _emit_json(payload)


def cmd_verify(args) -> tuple[str, int]:
    _check_threads(args)
    config = VerifyConfig(
        seed=args.seed,
        sample_scale=args.samples,
        max_count=args.max_count,
        emit_progress=True,
    )
    report = run_verification(config)
    code = EXIT_OK if report["all_passed"] else 1
    return _emit_json(report), code


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "atoms":
            out, code = cmd_atoms(args), EXIT_OK
        elif args.command == "factor":
            out, code = cmd_factor(args), EXIT_OK
        elif args.command == "clifford":
            out, code = cmd_clifford(args), EXIT_OK
        elif args.command == "verify":
            out, code = cmd_verify(args)
        else:  # pragma: no cover
            parser.error(f"unknown command {args.command}")
    except ParseError as exc:
        print(f"quatfact: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except EnumerationOverflowError as exc:
        print(f"quatfact: overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except DomainError as exc:
        print(f"quatfact: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    sys.stdout.write(out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
