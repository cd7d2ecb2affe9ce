"""Command-line front end.

Each subcommand reads JSON, runs one pipeline, and writes a JSON report
to --out or stdout.  Reports are byte-stable given the same inputs and
flags.  Exit codes: 0 success or certified, 1 inconclusive, 2 parse or
usage error, 3 semantic error (bad shapes, invalid objects).
"""

from __future__ import annotations

import argparse
import sys

from .curves import act_curve, curve_from_splitting
from .errors import FormatError, SemanticError
from .fields import DEFAULT_PRIME, QQ, Field, PrimeField
from .linalg import rank
from .jsonio import (
    certificate_to_obj,
    dumps,
    field_label,
    graph_from_obj,
    graph_to_obj,
    instance_from_obj,
    load_path,
    splitting_from_obj,
    tensor_from_obj,
    tensor_to_obj,
)
from .networks import contract_network, expected_dim, reduce_valence_one
from .stabilizer import build_system
from .varieties import certify_not_closed, tns_dim
from .zoo import diagonal_splitting, mmult

# past this many unknowns the prime backend is picked unless --field says otherwise
AUTO_PRIME_THRESHOLD = 800


def _add_common(sp: argparse.ArgumentParser):
    sp.add_argument("--field", choices=("rational", "fp"), default=None,
                    help="scalar backend (default: rational, unless the problem is large)")
    sp.add_argument("--prime", type=int, default=DEFAULT_PRIME,
                    help="modulus for --field fp; must be a prime > 2**30")
    sp.add_argument("--seed", type=int, default=0, help="seed for randomized pipelines")
    sp.add_argument("--out", default=None, help="output path (default: stdout)")


def _resolve_field(args, group_dim: int | None = None) -> Field:
    mode = args.field
    if mode is None:
        mode = "fp" if group_dim is not None and group_dim > AUTO_PRIME_THRESHOLD else "rational"
    if mode == "rational":
        return QQ
    try:
        return PrimeField(args.prime)
    except SemanticError as exc:
        # bad modulus is a configuration problem, not a data problem
        raise FormatError(str(exc)) from exc


def _emit(args, obj) -> None:
    text = dumps(obj)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_contract(args) -> int:
    field = _resolve_field(args)
    inst = instance_from_obj(load_path(args.instance), field)
    _emit(args, tensor_to_obj(contract_network(inst)))
    return 0


def cmd_stabilizer(args) -> int:
    obj = load_path(args.tensor)
    group_dim = None
    if isinstance(obj, dict) and isinstance(obj.get("shape"), list):
        if all(isinstance(s, int) for s in obj["shape"]):
            group_dim = sum(s * s for s in obj["shape"])
    field = _resolve_field(args, group_dim)
    t = tensor_from_obj(obj, field)
    sysm = build_system(t).matrix
    orbit = rank(sysm)
    report = {"stab_dim": sysm.cols - orbit, "orbit_dim": orbit}
    report.update(field_label(field))
    _emit(args, report)
    return 0


def cmd_certify(args) -> int:
    field = _resolve_field(args, 3 * args.e**4)
    if args.splitting:
        s = splitting_from_obj(load_path(args.splitting), field)
    else:
        s = diagonal_splitting(args.e, field)
    cert = certify_not_closed(s, args.e)
    _emit(args, certificate_to_obj(cert))
    return 0 if cert.certified else 1


def cmd_dim(args) -> int:
    g = graph_from_obj(load_path(args.graph))
    field = _resolve_field(args)
    jac = tns_dim(g, seed=args.seed, field=field)
    formula = expected_dim(g)
    report = {
        "jacobian_dim": jac,
        "formula_dim": formula if formula is not None else "unknown",
        "agree": (jac == formula) if formula is not None else None,
    }
    _emit(args, report)
    return 0


def cmd_reduce(args) -> int:
    g = graph_from_obj(load_path(args.graph))
    reduced, log = reduce_valence_one(g)
    report = {
        "graph": graph_to_obj(reduced),
        "merges": [
            {"removed": m.removed, "edge": m.edge, "target": m.target, "new_dim": m.new_dim}
            for m in log
        ],
    }
    _emit(args, report)
    return 0


def cmd_limit(args) -> int:
    field = _resolve_field(args, 3 * args.e**4)
    if args.splitting:
        s = splitting_from_obj(load_path(args.splitting), field)
    else:
        s = diagonal_splitting(args.e, field)
    m = mmult(args.e, args.e, args.e, field)
    expansion = act_curve(m, curve_from_splitting(s))
    terms = [{"power": p, "tensor": tensor_to_obj(t)} for p, t in expansion.terms]
    if not terms:
        _emit(args, {"e": args.e, "leading_power": None, "leading_term": None, "terms": []})
        return 1
    report = {
        "e": args.e,
        "leading_power": terms[0]["power"],
        "leading_term": terms[0]["tensor"],
        "terms": terms,
    }
    _emit(args, report)
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tngeom",
        description="Exact contraction, symmetry and limit pipelines for tensor networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("contract", help="contract an instance file to a tensor")
    sp.add_argument("instance", help="instance JSON path")
    _add_common(sp)
    sp.set_defaults(func=cmd_contract)

    sp = sub.add_parser("stabilizer", help="symmetry algebra dimensions of a tensor")
    sp.add_argument("tensor", help="tensor JSON path")
    _add_common(sp)
    sp.set_defaults(func=cmd_stabilizer)

    sp = sub.add_parser("certify", help="non-closedness certificate for the square trace tensor")
    sp.add_argument("--e", type=int, required=True, help="matrix size (edge dimension), at least 2")
    sp.add_argument("--splitting", default=None, help="splitting JSON path (default: diagonal)")
    _add_common(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("dim", help="Jacobian dimension of a graph's contraction family")
    sp.add_argument("graph", help="graph JSON path")
    _add_common(sp)
    sp.set_defaults(func=cmd_dim)

    sp = sub.add_parser("reduce", help="fold valence-one vertices and log the merges")
    sp.add_argument("graph", help="graph JSON path")
    _add_common(sp)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("limit", help="curve expansion and leading term for a splitting")
    sp.add_argument("--e", type=int, required=True, help="matrix size (edge dimension), at least 2")
    sp.add_argument("--splitting", default=None, help="splitting JSON path (default: diagonal)")
    _add_common(sp)
    sp.set_defaults(func=cmd_limit)

    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SemanticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry():
    sys.exit(main())
