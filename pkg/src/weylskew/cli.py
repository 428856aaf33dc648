"""Command-line front end.

Human-readable results go to stdout; ``--report FILE`` writes a JSON report
and ``--dot FILE`` writes a quiver when the command produces one.
Exit status: 0 when every check passes, 1 when a check fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import yaml

from . import __version__
from .exactnum import CycMatrix, ParseError, parse_scalar
from .grouprep import (
    GroupError,
    character_table,
    euclidean_type,
    load_group,
    mckay_quiver,
    natural_character,
    structure_checks,
)
from .ncalg import (
    AlgebraError,
    canonical_kind,
    center_basis,
    confluence_check,
    graded_dimension,
    parse_poly,
    preset_algebra,
)
from .quiverpres import ShapeError, UnsupportedGroup, corner_algebra, quiver_to_dot
from .report import CheckReport, jsonable
from .skewalg import ActionError, action_from_matrices, corner_basis, ideal_growth_probe, invariants_basis
from .structchk import automorphism_minor_check
from .suite import FAMILIES, SUITE, presentation_report, run_named


class UsageError(Exception):
    """A bad flag value; the message names the flag."""


ALGEBRA_CODES = {"B": "B_n", "A": "A_n", "C": "C_n", "E": "Exterior_n", "Cs": "CnShriek", "Bs": "BnShriek"}


def parse_algebra(text: str):
    try:
        code, n = text.split(":")
        kind = ALGEBRA_CODES.get(code) or canonical_kind(code)
        return preset_algebra(kind, int(n))
    except (ValueError, AlgebraError) as exc:
        raise UsageError(f"--algebra: cannot read {text!r} (expected e.g. B:1, C:2, A:1, E:2, Cs:1, Bs:1): {exc}")


def parse_group(text: str):
    try:
        return load_group(text)
    except (GroupError, ParseError, OSError, yaml.YAMLError) as exc:
        raise UsageError(f"--group: {exc}")


def parse_matrix(text: str, order: int) -> CycMatrix:
    try:
        rows = yaml.safe_load(text)
        return CycMatrix.parse(rows, order)
    except Exception as exc:
        raise UsageError(f"--matrix: cannot read {text!r}: {exc}")


def make_action(P, G, variables: str | None, flag: str = "--variables"):
    if variables:
        moving = [v.strip() for v in variables.split(",") if v.strip()]
    else:
        moving = [g for g in P.generators if g != "Z"][: G.degree]
    try:
        moving_idx = {P.index(m) for m in moving}
        fixed = [g for i, g in enumerate(P.generators) if i not in moving_idx]
        return action_from_matrices(P, G, moving, fixed)
    except (ActionError, ParseError) as exc:
        raise UsageError(f"{flag}: {exc}")


# ----------------------------------------------------------------------
# commands; each returns (results, checks, dot_text)


def cmd_algebra_info(args):
    P = parse_algebra(args.algebra)
    conf = confluence_check(P)
    results = {
        "generators": list(P.generators),
        "rules": {P.word_str(k): " + ".join(f"({c})*{P.word_str(w)}" for c, w in v) or "0" for k, v in P.rules.items()},
        "graded": P.graded,
    }
    if P.graded:
        results["dimensions"] = [graded_dimension(P, d) for d in range(args.dmax + 1)]
    print(f"algebra {P.kind}({P.n}) on {', '.join(P.generators)}")
    for k, v in results["rules"].items():
        print(f"  {k} -> {v}")
    if P.graded:
        print("dimensions:", " ".join(map(str, results["dimensions"])))
    check = CheckReport("confluence", conf["resolved"], conf)
    print(f"confluence: {'pass' if check.passed else 'FAIL'} ({conf['overlaps']} overlaps)")
    return results, [check], None


def cmd_nf(args):
    P = parse_algebra(args.algebra)
    try:
        p = parse_poly(P, args.expr, args.order)
    except ParseError as exc:
        raise UsageError(f"--expr: {exc}")
    print(p)
    return {"normal_form": str(p)}, [], None


def cmd_center(args):
    P = parse_algebra(args.algebra)
    degrees = [args.degree] if args.degree is not None else range(args.dmax + 1)
    out = {}
    for d in degrees:
        basis = [str(b) for b in center_basis(P, d)]
        out[str(d)] = basis
        print(f"degree {d}: {', '.join(basis) if basis else '0'}")
    return {"center": out}, [], None


def cmd_mckay(args):
    G = parse_group(args.group)
    table = character_table(G)
    mq = mckay_quiver(G, table)
    checks = structure_checks(table, mq)
    kind = euclidean_type(mq)
    print(f"group of order {G.size}, {len(G.classes)} classes, degrees {table.degrees}")
    print("natural character:", " ".join(str(x) for x in natural_character(G)))
    print("arrow counts:")
    for row in mq.arrow_counts:
        print("  " + " ".join(map(str, row)))
    print("type:", kind)
    results = {
        "order": G.size,
        "degrees": table.degrees,
        "characters": [[str(x) for x in row] for row in table.rows],
        "arrow_counts": mq.arrow_counts,
        "type": kind,
    }
    return results, checks, quiver_to_dot(mq, "McKay")


def cmd_invariants(args):
    P = parse_algebra(args.algebra)
    G = parse_group(args.group)
    act = make_action(P, G, args.variables)
    degrees = [args.degree] if args.degree is not None else range(args.dmax + 1)
    out = {}
    for d in degrees:
        basis = [str(b) for b in invariants_basis(act, d)]
        out[str(d)] = basis
        print(f"degree {d}: {', '.join(basis) if basis else '0'}")
    return {"invariants": out}, [], None


def cmd_corner(args):
    P = parse_algebra(args.algebra)
    G = parse_group(args.group)
    act = make_action(P, G, args.variables)
    checks = []
    rows = []
    if P.graded:
        for d in range(args.dmax + 1):
            a, b = len(corner_basis(act, d)), len(invariants_basis(act, d))
            rows.append({"degree": d, "corner": a, "invariants": b})
            print(f"degree {d}: corner {a}, invariants {b}")
        checks.append(CheckReport("corner_equals_invariants", all(r["corner"] == r["invariants"] for r in rows), {"rows": rows}))
    results = {"dimensions": rows}
    dot = None
    try:
        ca = corner_algebra(act)
    except UnsupportedGroup as exc:
        print(f"quiver: skipped ({exc})")
    else:
        q = ca.extracted_quiver()
        results["quiver_arrow_counts"] = q.arrow_counts()
        print("corner quiver arrow counts:")
        for row in q.arrow_counts():
            print("  " + " ".join(map(str, row)))
        dot = quiver_to_dot(q, "Corner")
    return results, checks, dot


def cmd_verify_aut(args):
    A = parse_matrix(args.matrix, args.order)
    try:
        lam = parse_scalar(args.lam, args.order)
        rho = [parse_scalar(str(x), args.order) for x in yaml.safe_load(args.rho)] if args.rho else [0] * (2 * args.n)
    except (ParseError, yaml.YAMLError, TypeError) as exc:
        raise UsageError(f"--lambda/--rho: {exc}")
    try:
        r = automorphism_minor_check(A, rho, lam, args.n)
    except ValueError as exc:
        raise UsageError(f"--matrix: {exc}")
    print(f"minor equations: {'pass' if r.passed else 'FAIL'}")
    for f in r.details["failures"]:
        print(f"  {f['family']} columns {f['columns']}: {f['value']} != {f['expected']}")
    print(f"direct oracle: {'automorphism' if r.details['oracle_verdict'] else 'not an automorphism'}")
    agree = CheckReport("oracle_agreement", r.details["oracle_agreement"], {})
    return {"automorphism": r.passed}, [r, agree], None


def cmd_preproj(args):
    parse_group(args.group)
    name = args.group.split("builtin:")[-1]
    if not name.startswith("cyclic:"):
        raise UsageError("--group: presentations are verified for builtin cyclic groups only")
    n = int(name.split(":")[1])
    if n < 2:
        raise UsageError("--group: needs a nontrivial cyclic group")
    try:
        pres, r = presentation_report(n, args.family, args.dmax, signed=not args.unsigned)
    except ShapeError as exc:
        raise UsageError(str(exc))
    print(f"{pres.kind}: {len(pres.relations)} relations on {len(pres.quiver.vertices)} vertices")
    for rel in r.details["relations"]:
        print(f"  {'ok  ' if rel['pass'] else 'FAIL'} {rel['label']}: {rel['relation']}")
    print("arrows:", ", ".join(f"{k}={v}" for k, v in r.details["assignment"].items()))
    if r.details["z_scale"] is not None:
        print("z scale:", r.details["z_scale"])
    if args.json:
        Path(args.json).write_text(pres.to_json() + "\n")
    return {"presentation": pres.to_dict()}, [r], quiver_to_dot(pres.quiver, "Presentation")


def cmd_structcheck(args):
    if args.list or not args.name:
        for name in sorted(SUITE):
            print(name)
        if not args.list:
            raise UsageError("--name is required (use --list to see the checks)")
        return {"checks": sorted(SUITE)}, [], None
    try:
        r = run_named(args.name, n=args.n, m=args.m, dmax=args.dmax, samples=args.samples, seed=args.seed)
    except KeyError as exc:
        raise UsageError(f"--name: {exc.args[0]}")
    print(f"{r.name}: {'pass' if r.passed else 'FAIL'}")
    return {}, [r], None


def cmd_ideal_growth(args):
    P = parse_algebra(args.algebra)
    G = parse_group(args.group)
    act = make_action(P, G, args.variables)
    dmax = args.dmax if args.dmax is not None else 2 * G.size
    r = ideal_growth_probe(act, dmax)
    print("quotient dims:", " ".join(map(str, r["quotient_dims"])))
    print("fixed-point free:", r["fixed_point_free"], " theorem applies:", r["theorem_applies"])
    checks = []
    if r["theorem_applies"]:
        checks.append(CheckReport("quotient_vanishes", r["stabilized_zero"], r))
    else:
        print("hypothesis not met; reporting dimensions only")
    return r, checks, None


COMMANDS = {
    "algebra-info": cmd_algebra_info,
    "nf": cmd_nf,
    "center": cmd_center,
    "mckay": cmd_mckay,
    "invariants": cmd_invariants,
    "corner": cmd_corner,
    "verify-aut": cmd_verify_aut,
    "preproj": cmd_preproj,
    "structcheck": cmd_structcheck,
    "ideal-growth": cmd_ideal_growth,
}


def nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weylskew", description="Exact computations with homogenized Weyl algebras and skew group algebras.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--report", help="write a JSON report here")
        return sp

    s = common(sub.add_parser("algebra-info", help="generators, rules, dimensions and confluence"))
    s.add_argument("--algebra", required=True)
    s.add_argument("--dmax", type=nonneg, default=6)

    s = common(sub.add_parser("nf", help="normal form of an expression"))
    s.add_argument("--algebra", required=True)
    s.add_argument("--expr", required=True)
    s.add_argument("--order", type=int, default=1, help="root-of-unity order for the scalar z")

    s = common(sub.add_parser("center", help="center basis by degree"))
    s.add_argument("--algebra", required=True)
    s.add_argument("--degree", type=nonneg)
    s.add_argument("--dmax", type=nonneg, default=6)

    s = common(sub.add_parser("mckay", help="character table and McKay quiver"))
    s.add_argument("--group", required=True)
    s.add_argument("--dot")

    for name, helptext in (("invariants", "invariant basis by degree"), ("corner", "corner algebra dimensions and quiver")):
        s = common(sub.add_parser(name, help=helptext))
        s.add_argument("--algebra", required=True)
        s.add_argument("--group", required=True)
        s.add_argument("--variables", help="comma-separated generators the matrices act on")
        s.add_argument("--degree", type=nonneg)
        s.add_argument("--dmax", type=nonneg, default=6)
        if name == "corner":
            s.add_argument("--dot")

    s = common(sub.add_parser("verify-aut", help="check a block matrix against the automorphism criteria"))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--matrix", required=True)
    s.add_argument("--lambda", dest="lam", default="1")
    s.add_argument("--rho")
    s.add_argument("--order", type=int, default=1)

    s = common(sub.add_parser("preproj", help="build and verify a quiver presentation for a cyclic group"))
    s.add_argument("--group", required=True)
    s.add_argument("--family", choices=sorted(FAMILIES), default="mesh")
    s.add_argument("--dmax", type=nonneg, default=4)
    s.add_argument("--unsigned", action="store_true", help="use the all-plus relation sums")
    s.add_argument("--dot")
    s.add_argument("--json", help="write the presentation as JSON")

    s = common(sub.add_parser("structcheck", help="run a named verification"))
    s.add_argument("--name")
    s.add_argument("--list", action="store_true")
    s.add_argument("--n", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--dmax", type=nonneg)
    s.add_argument("--samples", type=int)
    s.add_argument("--seed", type=int)

    s = common(sub.add_parser("ideal-growth", help="dimensions of the quotient by the ideal of e"))
    s.add_argument("--algebra", required=True)
    s.add_argument("--group", required=True)
    s.add_argument("--variables")
    s.add_argument("--dmax", type=nonneg)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags and 0 for --help/--version
        return exc.code if isinstance(exc.code, int) else 2
    try:
        results, checks, dot = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    inputs = {k: v for k, v in vars(args).items() if k not in ("command", "report") and v is not None}
    if "lam" in inputs:
        inputs["lambda"] = inputs.pop("lam")
    report = {
        "schema": 1,
        "command": args.command,
        "inputs": inputs,
        "results": jsonable(results),
        "checks": [c.to_dict() for c in checks],
        "tool_version": __version__,
    }
    if getattr(args, "dot", None) and dot is not None:
        Path(args.dot).write_text(dot)
    if args.report:
        Path(args.report).write_text(json.dumps(report, sort_keys=True, indent=2) + "\n")
    failed = [c.name for c in checks if not c.passed and not c.details.get("skipped")]
    if failed:
        print("failed checks:", ", ".join(failed))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
