"""``hochlift`` command line.

Reports are JSON objects; ``--format text`` renders the same object as
indented ``key: value`` lines.  Exit codes: 0 affirmative, 1 a well-formed
negative answer (with a certificate in the report), 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .algebra import apply, center, ground_line, regular_bimodule, twisted_bimodule
from .azumaya import azumaya_check, center_preserved, e_M_projection, separability_element
from .errors import CenterNotPreserved, HochliftError, Infeasible
from .formats import (
    algebra_from_json,
    dump_json,
    endo_from_json,
    flat_lift_from_json,
    load_json,
    matrix_to_json,
    vector_to_json,
)
from .hochschild import (
    coboundary_solve,
    cochain_from_json,
    cochain_to_json,
    delta,
    hh_dim,
    is_cocycle,
    is_symmetric,
)
from .liftkit import antisym_check, decide_lift, poisson_center
from .selftest import DEFAULT_SEED, run_selftest
from .weyl import (
    WeylEndo,
    bracket_constants,
    generator_name,
    is_weyl_endo,
    poisson_preserves,
    relation_residuals,
    search_lift,
)


# ---------------------------------------------------------------- helpers


def _infeasible_json(R, exc: Infeasible) -> dict:
    out = {"row": exc.row}
    if exc.certificate is not None:
        out["reduced_row"] = vector_to_json(R, exc.certificate)
    left = getattr(exc, "left", None)
    if left is not None:
        out["left_certificate"] = vector_to_json(R, left)
    return out


def _module(args, A):
    if getattr(args, "endo", None):
        return twisted_bimodule(A, endo_from_json(load_json(args.endo), A))
    return regular_bimodule(A)


# ---------------------------------------------------------------- algebra


def cmd_algebra_validate(args):
    A = algebra_from_json(load_json(args.algebra))
    report = A.validate().as_dict()
    return (0 if report["associative"] and report["unital"] else 1), report


def cmd_algebra_center(args):
    A = algebra_from_json(load_json(args.algebra))
    Z = center(A)
    return 0, {"dim": Z.dim, "basis": matrix_to_json(A.ring, Z.basis)}


# ---------------------------------------------------------------- hochschild


def cmd_hochschild_dim(args):
    A = algebra_from_json(load_json(args.algebra))
    M = _module(args, A)
    degrees = [args.degree] if args.degree is not None else [0, 1, 2]
    return 0, {"hh_dim": {str(n): hh_dim(M, n) for n in degrees}}


def cmd_hochschild_cocycle_check(args):
    A = algebra_from_json(load_json(args.algebra))
    M = _module(args, A)
    c = cochain_from_json(load_json(args.cochain), M)
    ok = is_cocycle(c)
    report = {"cocycle": ok}
    if not ok:
        report["delta"] = cochain_to_json(delta(c))
    return (0 if ok else 1), report


def cmd_hochschild_solve(args):
    A = algebra_from_json(load_json(args.algebra))
    M = _module(args, A)
    c = cochain_from_json(load_json(args.cochain), M)
    report = {}
    if args.assert_formally_smooth:
        report["symmetric"] = is_symmetric(c)
    try:
        h = coboundary_solve(c)
    except Infeasible as exc:
        report.update({"solvable": False, "h": None, "certificate": _infeasible_json(A.ring, exc)})
        if args.assert_formally_smooth and A.is_commutative() and report["symmetric"]:
            # a symmetric cocycle on a formally smooth commutative algebra is a coboundary
            report["formal_smoothness_contradicted"] = True
        return 1, report
    report.update({"solvable": True, "h": cochain_to_json(h)})
    return 0, report


# ---------------------------------------------------------------- lift


def _lift_and_endo(args):
    L = flat_lift_from_json(load_json(args.lift))
    f = endo_from_json(load_json(args.endo), L.base)
    return L, f


def cmd_lift_decide(args):
    L, f = _lift_and_endo(args)
    decision = decide_lift(L, f)
    try:
        preserved = antisym_check(L, f).bracket_preserved
    except CenterNotPreserved:
        preserved = "center-not-preserved"
    report = {
        "liftable": decision.liftable,
        "lift_matrix": None if decision.lift is None else matrix_to_json(L.ring, decision.lift),
        "obstruction": None if decision.obstruction is None else cochain_to_json(decision.obstruction),
        "poisson_preserved": preserved,
    }
    if not decision.liftable:
        report["certificate"] = _infeasible_json(L.field, decision.infeasible)
    return (0 if decision.liftable else 1), report


def cmd_lift_poisson(args):
    L = flat_lift_from_json(load_json(args.lift))
    P = poisson_center(L)
    F = L.field
    axioms = P.check_axioms()
    report = {
        "center_dim": P.center.dim,
        "center_basis": matrix_to_json(F, P.center.basis),
        "bracket": [[vector_to_json(F, v) for v in row] for row in P.table],
        "axioms": axioms,
    }
    return (0 if all(axioms.values()) else 1), report


def cmd_lift_antisym(args):
    L, f = _lift_and_endo(args)
    F = L.field
    try:
        r = antisym_check(L, f)
    except CenterNotPreserved as exc:
        return 1, {
            "center_preserved": False,
            "witness": vector_to_json(F, exc.witness),
            "image": vector_to_json(F, apply(F, f, exc.witness)),
        }
    report = {
        "center_preserved": True,
        "identity_holds": r.identity_holds,
        "cocycle_symmetric": r.cocycle_symmetric,
        "bracket_preserved": r.bracket_preserved,
        "mismatches": [list(m) for m in r.mismatches],
        "defects": [
            {"pair": [i, j], "value": vector_to_json(F, r.rhs[i, j])}
            for i in range(len(r.rhs))
            for j in range(len(r.rhs))
            if np.any(r.rhs[i, j])
        ],
    }
    return (0 if r.bracket_preserved else 1), report


# ---------------------------------------------------------------- azumaya


def cmd_azumaya_check(args):
    A = algebra_from_json(load_json(args.algebra))
    report = azumaya_check(A).as_dict()
    return (0 if report["separable_over_center"] else 1), report


def cmd_azumaya_center_preserved(args):
    A = algebra_from_json(load_json(args.algebra))
    f = endo_from_json(load_json(args.endo), A)
    check = center_preserved(A, f)
    report = {
        "preserved": check.preserved,
        "witness": None if check.witness is None else vector_to_json(A.ring, check.witness),
    }
    if check.image is not None:
        report["image"] = vector_to_json(A.ring, check.image)
    return (0 if check.preserved else 1), report


def cmd_azumaya_separability(args):
    A = algebra_from_json(load_json(args.algebra))
    Z = ground_line(A) if args.over_ground else center(A)
    try:
        sep = separability_element(A, Z)
    except Infeasible as exc:
        return 1, {"found": False, "certificate": _infeasible_json(A.ring, exc)}
    F = A.ring
    terms = [
        {"left": A.labels[i], "right": A.labels[j], "coeff": F.element_to_json(c)}
        for i, j, c in sep.terms()
    ]
    P = e_M_projection(sep, regular_bimodule(A))
    idempotent = bool(np.array_equal(F.matmul(P, P), P))
    return 0, {"found": True, "terms": terms, "projection_idempotent": idempotent}


# ---------------------------------------------------------------- weyl


def _weyl_endo(args) -> WeylEndo:
    return WeylEndo.from_json(load_json(args.endo))


def cmd_weyl_endo_check(args):
    f = _weyl_endo(args)
    residuals = relation_residuals(f)
    bad = [
        {"pair": [generator_name(a, f.n), generator_name(b, f.n)], "residual": str(r)}
        for a, b, r in residuals
    ]
    return (0 if not bad else 1), {"valid": not bad, "violations": bad}


def _poisson_json(report, n):
    images = {generator_name(k, n).upper(): str(F) for k, F in enumerate(report.center_images)}
    mismatches = [
        {
            "pair": [generator_name(u, n).upper(), generator_name(v, n).upper()],
            "bracket": str(got),
            "expected": str(exp),
        }
        for u, v, got, exp in report.mismatches
    ]
    return images, mismatches


def cmd_weyl_decide(args):
    f = _weyl_endo(args)
    report = poisson_preserves(f)
    images, mismatches = _poisson_json(report, f.n)
    out = {"liftable": report.preserved, "center_images": images, "mismatches": mismatches}
    return (0 if report.preserved else 1), out


def cmd_weyl_lift(args):
    f = _weyl_endo(args)
    lifted = search_lift(f, args.degree_bound)
    verdict = poisson_preserves(f).preserved
    out = {
        "degree_bound": args.degree_bound,
        "found": lifted is not None,
        "lift": None if lifted is None else lifted.to_json(),
        "liftable": verdict,
    }
    if lifted is not None:
        out["relations_verified"] = is_weyl_endo(lifted)
    return (0 if lifted is not None else 1), out


def cmd_weyl_bracket_constants(args):
    B = bracket_constants(args.p, args.n)
    names = [generator_name(k, args.n).upper() for k in range(2 * args.n)]
    return 0, {"p": args.p, "n": args.n, "generators": names, "matrix": [list(r) for r in B]}


# ---------------------------------------------------------------- selftest


def cmd_selftest(args):
    report = run_selftest(args.seed, args.trials)
    return (0 if report["ok"] else 1), report


# ---------------------------------------------------------------- plumbing


def render_text(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        lines = []
        for v in obj:
            if isinstance(v, dict):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(v)}")
        return "\n".join(lines)
    return f"{pad}{json.dumps(obj)}"


def _is_flat(v) -> bool:
    items = v.values() if isinstance(v, dict) else v
    return all(not isinstance(x, (dict, list)) for x in items)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="hochlift", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    def group(name, help_):
        g = groups.add_parser(name, help=help_)
        return g.add_subparsers(dest="command", required=True)

    def command(sub, name, func, *positional, help_=None):
        p = sub.add_parser(name, parents=[common], help=help_)
        for arg in positional:
            p.add_argument(arg)
        p.set_defaults(func=func)
        return p

    alg = group("algebra", "structure-constant algebras")
    command(alg, "validate", cmd_algebra_validate, "algebra", help_="associativity, unit, commutativity")
    command(alg, "center", cmd_algebra_center, "algebra", help_="basis of the center")

    hh = group("hochschild", "Hochschild cochains")
    for name, func, extra in (
        ("dim", cmd_hochschild_dim, ()),
        ("cocycle-check", cmd_hochschild_cocycle_check, ("cochain",)),
        ("solve", cmd_hochschild_solve, ("cochain",)),
    ):
        p = command(hh, name, func, "algebra", *extra)
        p.add_argument("--endo", help="twist the regular bimodule by this endomorphism")
        if name == "dim":
            p.add_argument("--degree", type=int, choices=(0, 1, 2))
        if name == "solve":
            p.add_argument("--assert-formally-smooth", action="store_true")

    lift = group("lift", "first-order lifts of endomorphisms")
    command(lift, "decide", cmd_lift_decide, "lift", "endo")
    command(lift, "poisson", cmd_lift_poisson, "lift")
    command(lift, "antisym", cmd_lift_antisym, "lift", "endo")

    az = group("azumaya", "Azumaya diagnostics")
    command(az, "check", cmd_azumaya_check, "algebra")
    command(az, "center-preserved", cmd_azumaya_center_preserved, "algebra", "endo")
    p = command(az, "separability", cmd_azumaya_separability, "algebra")
    p.add_argument("--over-ground", action="store_true", help="tensor over k instead of the center")

    wy = group("weyl", "Weyl algebras in characteristic p")
    command(wy, "endo-check", cmd_weyl_endo_check, "endo")
    command(wy, "decide", cmd_weyl_decide, "endo")
    p = command(wy, "lift", cmd_weyl_lift, "endo")
    p.add_argument("--degree-bound", type=int, default=8)
    p = command(wy, "bracket-constants", cmd_weyl_bracket_constants)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, default=1)

    p = groups.add_parser("selftest", parents=[common], help="seeded invariant suites")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        code, report = args.func(args)
    except HochliftError as exc:
        code, report = 2, {"error": {"kind": exc.kind, "detail": str(exc)}}
    except (OSError, KeyError, TypeError, ValueError) as exc:
        code, report = 2, {"error": {"kind": "input", "detail": f"{type(exc).__name__}: {exc}"}}
    text = render_text(report) if args.format == "text" else dump_json(report)
    print(text, file=out)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
