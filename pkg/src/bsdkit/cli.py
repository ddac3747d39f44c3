"""Command-line front end.

Commands: tamagawa, vanishing-order, period, gb, extend-field.
Exit codes: 0 success (stdout is exactly one JSON document), 2 malformed
input (schema/parse/reference errors), 3 mathematical validation failure.
Diagnostics go to stderr.  BSDKIT_GB_BUDGET overrides the Groebner pair
budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import groebner
from .compgroup import FibreError, component_group, tamagawa_number, \
    validate_fibre
from .fieldtower import (FieldTower, FieldTowerError, extend_inert,
                         optimise_discriminant, subfield_property_check)
from .groebner import GroebnerError, Ideal
from .modelfile import (ModelMathError, SchemaError, component_locus,
                        load_matrix_file, load_model, parse_fibre,
                        parse_patches, parse_prime_model,
                        parse_period_matrix)
from .periods import (DEFAULT_TOL, PeriodError, covolumes,
                      lattice_generator, neron_basis_adjust, real_period)
from .poly import MonomialOrder, ParseError, parse_polynomial
from .rings import CoefficientRing, RingError, ZZ, is_prime
from .vanishing import (VanishingError, vanishing_order,
                        vanishing_order_truncated)

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_MATH = 3


class CliSchemaError(ValueError):
    pass


def _emit(obj) -> int:
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return EXIT_OK


def _apply_gb_budget():
    raw = os.environ.get("BSDKIT_GB_BUDGET")
    if raw:
        try:
            groebner.DEFAULT_MAX_PAIRS = int(raw)
        except ValueError:
            raise CliSchemaError(
                f"BSDKIT_GB_BUDGET must be an integer, got {raw!r}")


# ---------------------------------------------------------------------------
# commands


def cmd_tamagawa(args) -> int:
    doc = load_model(args.model)
    if args.p is not None and args.p != doc["p"]:
        raise CliSchemaError(f"--p {args.p} does not match the model file "
                             f"(p = {doc['p']})")
    fibre = parse_fibre(doc)
    diags = validate_fibre(fibre)
    if diags:
        raise FibreError("; ".join(diags))
    G = component_group(fibre)
    c_p = tamagawa_number(fibre)
    return _emit({"c_p": c_p, "invariant_factors": G.invariant_factors})


def cmd_vanishing_order(args) -> int:
    doc = load_model(args.model)
    locus = component_locus(doc, args.component)
    patches = parse_patches(doc)
    blk = doc["special_fibre"]
    comp = next(c for c in blk["components"] if c["id"] == args.component)
    patch = patches[comp["patch"]]
    try:
        f = parse_polynomial(args.function, ZZ, patch.variables)
    except ParseError as exc:
        raise CliSchemaError(f"cannot parse --function: {exc}")
    if args.truncate is not None:
        res = vanishing_order_truncated(f, locus, r=args.truncate,
                                        m=comp["multiplicity"],
                                        mode=args.mode)
    else:
        res = vanishing_order(f, locus, mode=args.mode, budget=args.budget)
    return _emit({"order": res.order, "exact": res.exact})


def cmd_period(args) -> int:
    matrix_doc = load_matrix_file(args.matrix_file)
    matrix = parse_period_matrix(matrix_doc)
    m_real = matrix_doc["real_components"]
    covs = covolumes(matrix)
    gen = lattice_generator([v for _, v in covs], tol=args.tol)
    W = Fraction(1)
    W_by_p = {}
    for path in args.models:
        doc = load_model(path)
        model, diffs = parse_prime_model(doc)
        res = neron_basis_adjust(model, diffs)
        W_by_p[str(model.p)] = str(res.W_p)
        W *= res.W_p
    omega = real_period(gen.value, W, m_real)
    return _emit({
        "P_I": [{"rows": list(I), "value": repr(v)} for I, v in covs],
        "P": repr(gen.value),
        "witness": gen.witness,
        "W": W_by_p,
        "W_total": str(W),
        "m_real": m_real,
        "omega": repr(omega),
        "precision": repr(args.tol),
    })


def _parse_ring(spec: str) -> CoefficientRing:
    s = spec.strip().replace(" ", "")
    if s in ("ZZ", "Z"):
        return ZZ
    if s.startswith("Z/"):
        body = s[2:]
        if "^" in body:
            p_str, e_str = body.split("^", 1)
            p, e = int(p_str), int(e_str)
        else:
            m = int(body)
            p = next((q for q in range(2, m + 1)
                      if m % q == 0 and is_prime(q)), None)
            if p is None:
                raise CliSchemaError(f"bad modulus in ring spec {spec!r}")
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise CliSchemaError(
                    f"ring spec {spec!r} is not a prime power")
        return CoefficientRing.Zmod(p, e)
    if s.startswith("GF(") and s.endswith(")"):
        body = s[3:-1]
        if "^" in body:
            p_str, k_str = body.split("^", 1)
            return CoefficientRing.GF(int(p_str), int(k_str))
        return CoefficientRing.GF(int(body))
    raise CliSchemaError(f"unknown ring spec {spec!r} "
                         "(use ZZ, Z/p^e, or GF(p^k))")


def cmd_gb(args) -> int:
    try:
        ring = _parse_ring(args.ring)
    except RingError as exc:
        raise CliSchemaError(str(exc))
    variables = tuple(v.strip() for v in args.vars.split(",") if v.strip())
    if not variables:
        raise CliSchemaError("--vars must name at least one variable")
    if args.order == "grevlex":
        order = MonomialOrder.grevlex()
    elif args.order == "lex":
        order = MonomialOrder.lex()
    else:
        raise CliSchemaError(f"unknown order {args.order!r}")
    gens = []
    for text in args.generators:
        try:
            gens.append(parse_polynomial(text, ring, variables, order))
        except ParseError as exc:
            raise CliSchemaError(f"cannot parse generator {text!r}: {exc}")
    if not gens:
        raise CliSchemaError("at least one generator is required")
    basis = Ideal(gens, order=order).groebner_basis()
    return _emit({"basis": [str(g) for g in basis],
                  "size": len(basis)})


def cmd_extend_field(args) -> int:
    ells = [int(x) for x in args.ell.split(",") if x.strip()]
    if not ells:
        raise CliSchemaError("--ell must list at least one prime")
    tower = FieldTower(args.p, seed=args.seed)
    node = tower.base_node()
    for ell in ells:
        node = extend_inert(node, ell, args.p)
    ok, missing = subfield_property_check(node)
    if not ok:
        raise FieldTowerError(f"registry misses degrees {missing}")
    registry = {}
    for d, (sub, w) in sorted(node.registry().items()):
        registry[str(d)] = {
            "defining_poly": list(sub.defining_poly),
            "embedding": [str(c) for c in w],
        }
    out = {
        "degree": node.degree,
        "defining_poly": list(node.defining_poly),
        "registry": registry,
    }
    if args.iters:
        descent = optimise_discriminant(node.defining_poly, args.p,
                                        iterations=args.iters,
                                        seed=args.seed)
        out["optimised_poly"] = list(descent.poly)
        out["disc_before"] = str(descent.trace[0])
        out["disc_after"] = str(descent.trace[-1])
    return _emit(out)


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bsdkit",
        description="Tamagawa numbers and real periods from "
                    "combinatorial regular-model data")
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tamagawa", help="component group and c_p")
    t.add_argument("model", help="model JSON file")
    t.add_argument("--p", type=int, default=None,
                   help="expected prime (checked against the file)")
    t.set_defaults(func=cmd_tamagawa)

    v = sub.add_parser("vanishing-order",
                       help="order of vanishing on a fibre component")
    v.add_argument("model")
    v.add_argument("--component", required=True)
    v.add_argument("--function", required=True)
    v.add_argument("--mode", choices=["direct", "modified"],
                   default="modified")
    v.add_argument("--truncate", type=int, default=None, metavar="R",
                   help="run over Z/p^(floor(R/m)+1)Z")
    v.add_argument("--budget", type=int, default=64)
    v.set_defaults(func=cmd_vanishing_order)

    p = sub.add_parser("period", help="real period pipeline")
    p.add_argument("models", nargs="+",
                   help="per-prime model JSON files")
    p.add_argument("--matrix-file", required=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_period)

    g = sub.add_parser("gb", help="reduced (strong) Groebner basis")
    g.add_argument("generators", nargs="+")
    g.add_argument("--ring", default="ZZ",
                   help="ZZ, Z/p^e, or GF(p^k)")
    g.add_argument("--order", default="grevlex",
                   choices=["grevlex", "lex"])
    g.add_argument("--vars", required=True,
                   help="comma-separated variable names")
    g.set_defaults(func=cmd_gb)

    e = sub.add_parser("extend-field",
                       help="inert tower with the subfield property")
    e.add_argument("--ell", required=True,
                   help="comma-separated primes, applied in order")
    e.add_argument("--p", type=int, required=True)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--iters", type=int, default=0,
                   help="discriminant descent iterations")
    e.set_defaults(func=cmd_extend_field)
    return ap


SCHEMA_ERRORS = (SchemaError, CliSchemaError, ParseError)
MATH_ERRORS = (ModelMathError, FibreError, VanishingError, GroebnerError,
               PeriodError, FieldTowerError, RingError)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _apply_gb_budget()
        return args.func(args)
    except SCHEMA_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except MATH_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
