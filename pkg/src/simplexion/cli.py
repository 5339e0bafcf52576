"""``simplexion`` command line: verify, search, equations, catalog, orbit.

Exit codes: 0 success, 1 not verified / validation failed, 2 usage error,
3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from .catalog import default_catalog, load_catalog, validate_family
from .errors import BudgetExceeded, DimensionMismatch, DomainViolation, Singular
from .linalg import MatZd, VecZd
from .polysys import gen_system, printed_system, solution_sets_equal
from .search import DEFAULT_BUDGET, DEFAULT_PERM_BUDGET, brute_force_perm, classify, search_affine
from .solution import AffineSolution, affine_from_index_map, verify_affine, verify_solution_tensor
from .symmetry import canonical_form, orbit

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

COMPARE_MODULI = {2: (2, 3, 5), 3: (2, 3)}


class UsageError(Exception):
    pass


def _dump(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def parse_matrix(text: str, n: int, D: int) -> MatZd:
    try:
        rows = [[int(x) for x in r.split(",")] for r in text.strip().split(";")]
    except ValueError:
        raise UsageError(f"cannot parse matrix {text!r}; expected 'a,b;c,d'") from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise UsageError(f"matrix {text!r} is not {n}x{n}")
    return MatZd(tuple(tuple(r) for r in rows), D)


def parse_vector(text: str | None, n: int, D: int) -> VecZd:
    if text is None:
        return VecZd.zeros(n, D)
    try:
        vals = [int(x) for x in text.strip().split(",")]
    except ValueError:
        raise UsageError(f"cannot parse vector {text!r}; expected 'b1,b2,...'") from None
    if len(vals) != n:
        raise UsageError(f"vector {text!r} does not have {n} entries")
    return VecZd(tuple(vals), D)


def _solution(args) -> AffineSolution:
    if args.n < 2 or args.d < 2:
        raise UsageError("need n >= 2 and d >= 2")
    return AffineSolution(parse_matrix(args.A, args.n, args.d),
                          parse_vector(args.B, args.n, args.d), "cli")


def cmd_verify(args) -> int:
    s = _solution(args)
    details = {}
    if args.level in ("matrix", "both"):
        details["matrix"] = verify_affine(s)
    if args.level in ("tensor", "both"):
        try:
            details["tensor"] = verify_solution_tensor(s)
        except Singular:
            details["tensor"] = False
            details["note"] = "A is singular, delta(A,B) is not a permutation"
    ok = all(v for k, v in details.items() if k != "note")
    _dump({"verified": ok, "level": args.level, "details": details,
           "solution": s.to_record()})
    return EXIT_OK if ok else EXIT_FALSE


def cmd_search(args) -> int:
    if args.mode == "perm":
        report = brute_force_perm(args.n, args.d, budget=args.budget or DEFAULT_PERM_BUDGET)
        for m, aff in zip(report.maps, report.affine_flags):
            rec = {"n": m.n, "d": m.D, "table": [int(x) for x in m.table], "affine": aff,
                   "verified": True}
            if aff:
                a = affine_from_index_map(m)
                rec.update(A=a.A.tolist(), B=a.B.tolist(), provenance=f"perm(n={m.n},d={m.D})")
            _dump(rec)
    else:
        report = search_affine(args.n, args.d, budget=args.budget or DEFAULT_BUDGET,
                               jobs=args.jobs)
        for s in report.solutions:
            _dump(s.to_record(verified=True))
    if not args.no_classify:
        classify(report, catalog=_catalog(args))
    _dump(report.summary())
    return EXIT_OK


def cmd_equations(args) -> int:
    if args.n not in (2, 3, 4):
        raise UsageError("equations: n must be 2, 3 or 4")
    system = gen_system(args.n, homogeneous=not args.inhomogeneous)
    if not args.compare:
        sys.stdout.write(system.to_text())
        return EXIT_OK
    if args.n not in COMPARE_MODULI:
        _dump({"n": args.n, "polynomials": len(system), "compare": None,
               "note": "no printed system for this n"})
        return EXIT_OK
    if args.n == 2:
        ref = printed_system("n2-5eq")
        if args.inhomogeneous:
            ref = ref.union(printed_system("n2-B-3eq"))
    else:
        if args.inhomogeneous:
            raise UsageError("no printed inhomogeneous system for n=3")
        ref = printed_system("n3-29eq")
    verdicts = {str(D): solution_sets_equal(system, ref, D) for D in COMPARE_MODULI[args.n]}
    _dump({"n": args.n, "polynomials": len(system), "printed": len(ref),
           "reference": ref.origin, "equal": verdicts})
    return EXIT_OK if all(verdicts.values()) else EXIT_FALSE


def _catalog(args):
    path = getattr(args, "catalog", None)
    return load_catalog(path) if path else default_catalog()


def cmd_catalog(args) -> int:
    cat = _catalog(args)
    if args.family == "all":
        fams = [f for f in cat if f.allows_modulus(args.d)]
    else:
        try:
            fams = [cat.get(args.family)]
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    ok = True
    for f in fams:
        rep = validate_family(f.id, args.d, mode=args.mode, k=args.k, seed=args.seed,
                              tensor=args.tensor, catalog=cat)
        ok &= rep.passed
        _dump(rep.to_dict())
    return EXIT_OK if ok else EXIT_FALSE


def cmd_orbit(args) -> int:
    s = _solution(args)
    orb = orbit(s, include_transpose=args.include_transpose)
    members = []
    for m in orb.sorted_members():
        rec = m.to_record(verified=verify_affine(m))
        rec["chain"] = [op.to_dict() for op in orb.chains[m]]
        members.append(rec)
    _dump({"size": len(orb), "canonical": canonical_form(s).to_record(),
           "include_transpose": args.include_transpose,
           "generators": [str(g) for g in orb.generators_used], "members": members})
    return EXIT_OK


def _add_solution_args(p):
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--A", required=True, help='rows separated by ";", entries by ","')
    p.add_argument("--B", default=None, help="comma separated, default all zeros")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="simplexion",
                                 description="Permutation-type solutions of n-simplex equations over Z_D.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check one (A, B)")
    _add_solution_args(p)
    p.add_argument("--level", choices=("matrix", "tensor", "both"), default="both")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="exhaustive search, JSON lines")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--mode", choices=("affine", "perm"), default="affine")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-classify", action="store_true")
    p.add_argument("--catalog", default=None, help="catalog JSON used for family matching")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("equations", help="generated polynomial system")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--inhomogeneous", action="store_true")
    p.add_argument("--compare", action="store_true")
    p.set_defaults(func=cmd_equations)

    p = sub.add_parser("catalog", help="validate catalog families")
    p.add_argument("--family", default="all")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--mode", choices=("exhaustive", "sample"), default="sample")
    p.add_argument("--k", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tensor", type=int, default=0, help="instances also checked at tensor level")
    p.add_argument("--catalog", default=None)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("orbit", help="symmetry orbit and canonical form")
    _add_solution_args(p)
    p.add_argument("--include-transpose", action="store_true")
    p.set_defaults(func=cmd_orbit)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, DomainViolation, DimensionMismatch, ValueError) as exc:
        print(f"simplexion: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"simplexion: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
