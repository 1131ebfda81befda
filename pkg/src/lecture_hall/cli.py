"""Command line entry point: ``lhl <subcommand> ...``.

Every subcommand prints JSON on stdout.  Exit status is 0 on success, 1 when
a requested check fails, and 2 on usage errors or exceeded caps.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import LectureHallError, TooLarge, VolumeTooLarge
from .inversions import SSequence, s_derangement_enum, s_derangement_recursive, s_eulerian
from .lattice import LatticeSimplex, hstar, lecture_hall_simplex, local_hstar
from .permutations import (
    colored_derangement_poly,
    colored_eulerian,
    colored_excedance_poly,
    derangement_poly,
    eulerian_poly,
)
from .polynomial import (
    IntPolynomial,
    gamma_vector,
    is_gamma_nonnegative,
    is_log_concave,
    is_symmetric,
    is_unimodal,
    symmetric_decomposition,
)
from .posets import (
    OrderPolytope,
    Poset,
    betke_mcmullen_hstar,
    box_unimodality_report,
    ehrhart_hstar,
    is_reflexive,
    rank_sequence,
)
from .roots import is_real_rooted
from .verify import SUITES, Check, VerificationReport, emit_table, env_max_n, run_all, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

PROPERTIES = {
    "symmetric": lambda p, d: is_symmetric(p, d),
    "unimodal": lambda p, d: is_unimodal(p),
    "logconcave": lambda p, d: is_log_concave(p),
    "realrooted": lambda p, d: is_real_rooted(p),
    "gamma": lambda p, d: is_gamma_nonnegative(p, d),
}


class UsageError(Exception):
    pass


def _s_arg(text: str) -> SSequence:
    try:
        return SSequence.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _poly_arg(text: str) -> IntPolynomial:
    try:
        return IntPolynomial(int(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated coefficient list: {text!r}") from None


def _props_arg(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    unknown = [n for n in names if n not in PROPERTIES]
    if unknown:
        raise argparse.ArgumentTypeError(
            f"unknown properties {unknown}; choose from {', '.join(PROPERTIES)}"
        )
    return names


def _properties(p: IntPolynomial, d: int, names=None) -> dict:
    return {name: PROPERTIES[name](p, d) for name in (names or PROPERTIES)}


def _poly_payload(p: IntPolynomial, d: int, **extra) -> dict:
    return {"poly": p.to_json(), "degree_convention": d, "properties": _properties(p, d), **extra}


def _load_json(path: str, flag: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"{flag}: cannot read {path}: {exc}") from None


def _poset(args) -> Poset:
    data = _load_json(args.poset, "--poset")
    try:
        return Poset.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"--poset: {exc}") from None


def _order_polytope(args) -> OrderPolytope:
    P = _poset(args)
    s = args.s if args.s is not None else rank_sequence(P)
    if s.n != P.n:
        raise UsageError(f"--s has {s.n} entries but the poset has {P.n} elements")
    return OrderPolytope(P, s)


def _simplex(args) -> tuple[LatticeSimplex, int]:
    if (args.s is None) == (args.simplex is None):
        raise UsageError("give exactly one of --s and --simplex")
    if args.s is not None:
        return lecture_hall_simplex(args.s), args.s.n
    try:
        S = LatticeSimplex.from_json(_load_json(args.simplex, "--simplex"))
    except (TypeError, ValueError) as exc:
        raise UsageError(f"--simplex: {exc}") from None
    return S, S.dim


# subcommands -----------------------------------------------------------------


def cmd_eulerian(args):
    return _poly_payload(s_eulerian(args.s, args.stat), args.s.n), EXIT_OK


def cmd_derangement(args):
    if args.method == "recursive":
        p = s_derangement_recursive(args.s)
    else:
        p = s_derangement_enum(args.s, args.stat)
    return _poly_payload(p, args.s.n + 1, method=args.method), EXIT_OK


def cmd_classical(args):
    if args.kind == "eulerian":
        return _poly_payload(eulerian_poly(args.n), max(args.n - 1, 0)), EXIT_OK
    return _poly_payload(derangement_poly(args.n), args.n), EXIT_OK


def cmd_colored(args):
    if args.derangements:
        if args.stat != "exc":
            raise UsageError("--derangements counts excedances; use --stat exc")
        p = colored_derangement_poly(args.n, args.r)
    elif args.stat == "des":
        p = colored_eulerian(args.n, args.r)
    else:
        p = colored_excedance_poly(args.n, args.r)
    return _poly_payload(p, args.n), EXIT_OK


def cmd_hstar(args):
    S, d = _simplex(args)
    return _poly_payload(hstar(S, args.max_points), d), EXIT_OK


def cmd_local_hstar(args):
    S, d = _simplex(args)
    return _poly_payload(local_hstar(S, args.max_points), d + 1), EXIT_OK


def cmd_order_hstar(args):
    O = _order_polytope(args)
    h = betke_mcmullen_hstar(O) if args.method == "betke-mcmullen" else ehrhart_hstar(O)
    d = h.degree if args.degree is None else args.degree
    payload = _poly_payload(h, d, s=list(O.s.entries))
    payload["properties"]["reflexive"] = is_reflexive(h, max(h.degree, 0))
    return payload, EXIT_OK


def cmd_verify_bm(args):
    O = _order_polytope(args)
    a, b = ehrhart_hstar(O), betke_mcmullen_hstar(O)
    payload = {
        "s": list(O.s.entries),
        "ehrhart": a.to_json(),
        "betke_mcmullen": b.to_json(),
        "equal": a == b,
    }
    return payload, EXIT_OK if a == b else EXIT_FAIL


def box_report_table(O: OrderPolytope) -> VerificationReport:
    report = box_unimodality_report(O)
    checks = []
    for row in report.rows:
        face = "|".join(format(F, f"0{O.poset.n}b") for F in row.face)
        checks.append(
            Check(
                face,
                {"vertices": [list(v) for v in row.vertices], "local_hstar": row.local_hstar.to_json()},
                {"unimodal": True, "real_rooted": True},
                {"unimodal": row.unimodal, "real_rooted": row.real_rooted},
                row.unimodal and row.real_rooted,
            )
        )
    return VerificationReport("box-report", checks)


def cmd_box_report(args):
    table = box_report_table(_order_polytope(args))
    return emit_table(table, args.format), EXIT_OK if table.passed else EXIT_FAIL


def cmd_decompose(args):
    d = colored_derangement_poly(args.n, args.r)
    a, b = symmetric_decomposition(d, args.n)
    s = tuple(k * args.r for k in range(2, args.n + 1))
    mu = tuple(k * args.r for k in range(1, args.n + 1))
    ds = s_derangement_enum(s) if s else IntPolynomial()
    matches = a == ds and b.shift(1) == s_derangement_enum(mu)
    payload = _poly_payload(
        d,
        args.n,
        a=a.to_json(),
        b=b.to_json(),
        checks={
            "matches_s_derangements": matches,
            "a_real_rooted": is_real_rooted(a),
            "b_real_rooted": is_real_rooted(b),
        },
    )
    return payload, EXIT_OK if all(payload["checks"].values()) else EXIT_FAIL


def cmd_gamma(args):
    g = gamma_vector(args.poly, args.degree)
    payload = {
        "poly": args.poly.to_json(),
        "degree_convention": args.degree,
        "gamma": list(g.entries),
        "nonnegative": g.nonnegative,
    }
    return payload, EXIT_OK


def cmd_check(args):
    props = _properties(args.poly, args.degree, args.props)
    payload = {"poly": args.poly.to_json(), "degree_convention": args.degree, "properties": props}
    return payload, EXIT_OK if all(props.values()) else EXIT_FAIL


def cmd_verify(args):
    max_n = args.max_n if args.max_n is not None else env_max_n()
    if args.suite == "all":
        report = run_all(max_n=max_n, max_entry=args.max_entry, seed=args.seed)
    else:
        report = run_suite(args.suite, max_n=max_n, max_entry=args.max_entry, seed=args.seed)
    return emit_table(report, args.format), EXIT_OK if report.passed else EXIT_FAIL


# parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lhl", description="Lecture hall simplices, s-derangement polynomials and order polytopes."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eulerian", help="s-Eulerian polynomial")
    p.add_argument("--s", type=_s_arg, required=True)
    p.add_argument("--stat", choices=["asc", "des"], default="asc")
    p.set_defaults(func=cmd_eulerian)

    p = sub.add_parser("derangement", help="s-derangement polynomial")
    p.add_argument("--s", type=_s_arg, required=True)
    p.add_argument("--method", choices=["recursive", "enum"], default="recursive")
    p.add_argument("--stat", choices=["asc", "des"], default="asc", help="statistic for --method enum")
    p.set_defaults(func=cmd_derangement)

    for name in ("classical", "derangement-poly"):
        p = sub.add_parser(name, help="brute-force derangement or Eulerian polynomial of S_n")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--kind", choices=["derangement", "eulerian"], default="derangement")
        p.set_defaults(func=cmd_classical)

    p = sub.add_parser("colored", help="statistics over r-colored permutations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--stat", choices=["des", "exc"], default="des")
    p.add_argument("--derangements", action="store_true", help="restrict to colored derangements")
    p.set_defaults(func=cmd_colored)

    for name, func in (("hstar", cmd_hstar), ("local-hstar", cmd_local_hstar)):
        p = sub.add_parser(name, help=f"{name} of a lattice simplex")
        p.add_argument("--s", type=_s_arg, help="use the lecture hall simplex of s")
        p.add_argument("--simplex", help="JSON file holding a list of vertices")
        p.add_argument("--max-points", type=int, default=None)
        p.set_defaults(func=func)

    def poset_args(p):
        p.add_argument("--poset", required=True, help='JSON file like {"n": 3, "covers": [[1,3],[2,3]]}')
        p.add_argument("--s", type=_s_arg, help="defaults to rank + 1 for ranked posets")

    p = sub.add_parser("order-hstar", help="h*-polynomial of an s-lecture hall order polytope")
    poset_args(p)
    p.add_argument("--method", choices=["ehrhart", "betke-mcmullen"], default="ehrhart")
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(func=cmd_order_hstar)

    p = sub.add_parser("verify-bm", help="compare Ehrhart counting with the face decomposition")
    poset_args(p)
    p.set_defaults(func=cmd_verify_bm)

    p = sub.add_parser("box-report", help="local h* of every face of the canonical triangulation")
    poset_args(p)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_box_report)

    p = sub.add_parser("decompose", help="symmetric decomposition of the colored derangement polynomial")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("gamma", help="gamma vector of a symmetric polynomial")
    p.add_argument("--poly", type=_poly_arg, required=True, help="coefficients, constant term first")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("check", help="distributional properties of a polynomial")
    p.add_argument("--poly", type=_poly_arg, required=True, help="coefficients, constant term first")
    p.add_argument("--degree", type=int, default=None, help="symmetry degree; defaults to the degree")
    p.add_argument("--props", type=_props_arg, default=list(PROPERTIES))
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=[*SUITES, "all"], required=True)
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--max-entry", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "degree", 0) is None and args.command == "check":
        args.degree = max(args.poly.degree, 0)
    for flag in ("n", "r"):
        value = getattr(args, flag, None)
        if value is not None and value < (1 if flag == "r" else 0):
            print(f"lhl: error: --{flag} must be {'positive' if flag == 'r' else 'nonnegative'}", file=sys.stderr)
            return EXIT_USAGE
    try:
        payload, status = args.func(args)
    except UsageError as exc:
        print(f"lhl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TooLarge, VolumeTooLarge) as exc:
        print(f"lhl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LectureHallError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        return EXIT_FAIL
    if isinstance(payload, str):
        sys.stdout.write(payload if payload.endswith("\n") else payload + "\n")
    else:
        print(json.dumps(payload))
    return status


if __name__ == "__main__":
    sys.exit(main())
