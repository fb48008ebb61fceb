"""Command-line entry point.

Exit codes: 0 when every checked property holds, 1 when a mathematical
property fails (the report carries the counterexample), 2 for invalid input
or when the coordinate guard is hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .coalgebra import validate_coalgebra
from .instances import FIXTURES, InstanceGenerator
from .linalg import rational
from .realization import RealizationMap, duality_check
from .relations import coideal_check, compute_relations, smallest_subcoalgebra
from .schema import SchemaError, instance_to_dict, load_json, parse_element, parse_instance, load_instance
from .tensor import DEFAULT_GUARD, GradedElement, GuardExceeded

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2


class InputError(Exception):
    """Bad input that should end the run with exit status 2."""


def _report(command: str, args, **fields) -> dict:
    out = {"schema": SCHEMA_VERSION, "command": command}
    if getattr(args, "file", None) is not None:
        out["instance"] = str(args.file)
    out.update(fields)
    return out


def _load(args) -> RealizationMap:
    try:
        return load_instance(args.file)
    except SchemaError as exc:
        raise InputError(str(exc)) from None


def cmd_validate(args) -> tuple[int, dict]:
    try:
        L, F, xt = parse_instance(load_json(args.file))
    except SchemaError as exc:
        return EXIT_INVALID, _report("validate", args, ok=False, error=str(exc))
    checks = {}
    for label, c in (("L", L), ("F", F)):
        rep = validate_coalgebra(c)
        checks[label] = {"ok": rep.ok, "axiom": rep.axiom, "index": rep.index, "message": rep.message}
        if not rep:
            return EXIT_INVALID, _report(
                "validate", args, ok=False, checks=checks,
                error=f"{label}: {rep.axiom} axiom violated: {rep.message}",
            )
    return EXIT_OK, _report(
        "validate", args, ok=True, checks=checks,
        dims={"L": L.dim, "F": F.dim}, x_t_shape=[F.dim, L.dim],
    )


def cmd_duality(args) -> tuple[int, dict]:
    r = _load(args)
    if args.trials < 1:
        raise InputError("--trials must be >= 1")
    gen = InstanceGenerator(args.seed)
    left = r.source(args.max_left, args.guard)
    right = r.target(args.max_right, args.guard)
    trials = []
    counterexample = None
    for t in range(args.trials):
        if t == 0:
            w, v = left.unit(), right.unit()
        else:
            w, v = gen.element(left), gen.element(right)
        res = duality_check(r, w, v, args.guard)
        trials.append({"trial": t, **res.to_dict()})
        if not res.equal and counterexample is None:
            counterexample = {"trial": t, "w": w.to_terms(), "v": v.to_terms(), **res.to_dict()}
    failed = sum(not t["equal"] for t in trials)
    report = _report(
        "duality", args, seed=args.seed, max_left=args.max_left, max_right=args.max_right,
        trials=args.trials, passed=args.trials - failed, failed=failed,
        results=trials, counterexample=counterexample,
    )
    return (EXIT_OK if failed == 0 else EXIT_FAILED), report


def cmd_relations(args) -> tuple[int, dict]:
    r = _load(args)
    rep = compute_relations(
        r, args.order, args.method, N_check=args.check_degree, guard=args.guard,
        include_unit_slot=args.unit_slot,
    )
    report = _report("relations", args, ok=rep.ok, include_unit_slot=args.unit_slot, **rep.to_dict())
    return (EXIT_OK if rep.ok else EXIT_FAILED), report


def cmd_subcoalgebra(args) -> tuple[int, dict]:
    r = _load(args)
    try:
        v = parse_element(load_json(args.element), r, args.order, args.guard)
    except SchemaError as exc:
        raise InputError(str(exc)) from None
    if not isinstance(v, GradedElement):
        raise InputError("element must live in T(L) or T(F)")
    if v.is_zero():
        raise InputError("the zero element has no smallest subcoalgebra")
    C = smallest_subcoalgebra(v)
    space_name = "T(L)" if v.space.coalgebra is r.L else "T(F)"
    report = _report(
        "subcoalgebra", args, element_space=space_name, order=v.max_degree,
        dim_C=C.dim, basis=[GradedElement(v.space, b).to_terms() for b in C.basis],
    )
    status = EXIT_OK
    if space_name == "T(L)":
        rel = compute_relations(r, v.max_degree, "dualgen", guard=args.guard)
        is_rel = rel.relations.contains(v.coeffs)
        report["is_relation"] = is_rel
        if is_rel:
            I = rel.relations.intersection(C)
            co = coideal_check(v.space, I)
            report["intersection"] = {
                "dim": I.dim,
                "basis": [GradedElement(v.space, b).to_terms() for b in I.basis],
                "coideal_verified": co.ok,
            }
            if not co.ok:
                status = EXIT_FAILED
    return status, report


def cmd_fixture(args) -> tuple[int, dict]:
    if args.name == "G1":
        r = FIXTURES["G1"](rational(args.lam))
    else:
        r = FIXTURES[args.name]()
    return EXIT_OK, instance_to_dict(r)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bialgebra-realization",
        description="Realized bialgebras of operators on tensor coalgebras, with exact rational arithmetic.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--guard", type=int, default=DEFAULT_GUARD, metavar="LIMIT",
                        help="largest tensor coordinate count allowed (default %(default)s)")
    common.add_argument("--out", type=Path, metavar="PATH", help="write the JSON report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check coalgebra axioms and the shape of x_t")
    s.add_argument("file", type=Path)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("duality", parents=[common], help="seeded trials of the duality pairing identity")
    s.add_argument("file", type=Path)
    s.add_argument("--max-left", type=int, default=2, metavar="P")
    s.add_argument("--max-right", type=int, default=2, metavar="Q")
    s.add_argument("--trials", type=int, default=100, metavar="N")
    s.add_argument("--seed", type=int, default=0, metavar="S")
    s.set_defaults(func=cmd_duality)

    s = sub.add_parser("relations", parents=[common], help="relations of order M, cross-checked")
    s.add_argument("file", type=Path)
    s.add_argument("--order", type=int, required=True, metavar="M")
    s.add_argument("--method", choices=("minrep", "dualgen", "both"), default="both")
    s.add_argument("--check-degree", type=int, metavar="N", help="oracle degree (default M+2)")
    s.add_argument("--unit-slot", action="store_true",
                   help="give degree-0 words their own counit row in the minimal-representation kernel")
    s.set_defaults(func=cmd_relations)

    s = sub.add_parser("subcoalgebra", parents=[common], help="smallest subcoalgebra containing an element")
    s.add_argument("file", type=Path)
    s.add_argument("--element", type=Path, required=True, metavar="ELEMFILE")
    s.add_argument("--order", type=int, metavar="M", help="carrier degree (default: element degree)")
    s.set_defaults(func=cmd_subcoalgebra)

    s = sub.add_parser("fixture", parents=[common], help="emit a named fixture as an instance file")
    s.add_argument("name", choices=sorted(FIXTURES))
    s.add_argument("--lambda", dest="lam", default="1", help="scalar for G1 (default 1)")
    s.set_defaults(func=cmd_fixture, file=None)
    return p


def _check_caps(args) -> None:
    if args.guard < 1:
        raise InputError("--guard must be >= 1")
    for name in ("max_left", "max_right", "order", "check_degree"):
        val = getattr(args, name, None)
        if val is not None and val < 0:
            raise InputError(f"--{name.replace('_', '-')} must be >= 0")


def emit(report: dict, out: Path | None) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _check_caps(args)
        status, report = args.func(args)
    except InputError as exc:
        status, report = EXIT_INVALID, _report(args.command, args, ok=False, error=str(exc))
    except GuardExceeded as exc:
        status, report = EXIT_INVALID, _report(args.command, args, ok=False, error=f"guard: {exc}")
    if status != EXIT_OK and "error" in report:
        print(f"error: {report['error']}", file=sys.stderr)
    emit(report, args.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
