"""Command-line entry point: ``almostsquares {pipeline,search,family,tunnell,ecmap}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import ecmap, family, pipeline
from .arith import integer_sqrt, is_squarefree, sfp
from .tunnell import TunnellTables, tunnell_counts, tunnell_not_congruent


def _stages(text: str) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


def cmd_pipeline(args) -> int:
    report = pipeline.run_pipeline(
        args.bound,
        stages=args.stages,
        jobs=args.jobs,
        pell_cache=args.pell_cache,
        square_discriminant=args.square_discriminant,
    )
    if args.out:
        report.write(args.out, timestamp=args.timestamp)
    for name, count in report.stage_counts:
        print(f"{name:8s} {count}")
    return 0


def cmd_search(args) -> int:
    sols = pipeline.search_solutions(args.limit, args.bound)
    if args.out:
        pipeline.write_solutions_csv(sols, args.out)
    else:
        pipeline.dump_solutions_csv(sols, sys.stdout)
    print(f"{len(sols)} solutions", file=sys.stderr)
    return 0


def cmd_family(args) -> int:
    for m in range(args.terms):
        t = family.family_term(m)
        rec = {
            "m": m,
            "digits_a": len(str(t.a)),
            "digits_n": len(str(t.n)),
            **t.identities(),
            "bound": family.bound_check(t),
        }
        if args.full:
            rec.update(x=str(t.x), y=str(t.y), a=str(t.a), n=str(t.n))
        print(json.dumps(rec))
    return 0


def cmd_tunnell(args) -> int:
    n = args.n
    if n < 1:
        raise SystemExit("n must be positive")
    N = sfp(n)
    tables = TunnellTables(N if N % 2 else N // 2)
    with32, with8 = tunnell_counts(N, tables)
    print(json.dumps({
        "n": n,
        "squarefree_part": N,
        "squarefree": is_squarefree(n),
        "count_32": with32,
        "count_8": with8,
        "not_congruent": tunnell_not_congruent(N, tables),
    }))
    return 0


def cmd_ecmap(args) -> int:
    n = args.n
    a, b, c = sfp(n), sfp(n + 1), sfp(n + 2)
    x, y, z = (integer_sqrt(k // s)[0] for k, s in ((n, a), (n + 1, b), (n + 2, c)))
    P = ecmap.map_solution(a, b, c, n, x, y, z)
    print(json.dumps({
        "n": n,
        "abc": [a, b, c],
        "xyz": [x, y, z],
        "N": P.N,
        "X": str(P.X),
        "Y": str(P.Y),
        "on_curve": P.on_curve(),
        "torsion": ecmap.is_torsion(P),
    }))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="almostsquares", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pipeline", help="run the triple filters and report stage counts")
    p.add_argument("--bound", type=int, default=150)
    p.add_argument("--stages", type=_stages, default=list(pipeline.STAGES))
    p.add_argument("--out", help="JSON report path")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--pell-cache", help="text cache of fundamental Pell solutions")
    p.add_argument("--square-discriminant", choices=pipeline.SQUARE_DISCRIMINANT_POLICIES, default="skip")
    p.add_argument("--timestamp", help="fixed timestamp for reproducible reports")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("search", help="scan n <= limit for three small squarefree parts")
    p.add_argument("--limit", type=int, default=10**7)
    p.add_argument("--bound", type=int, default=150)
    p.add_argument("--out", help="CSV path (stdout if omitted)")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("family", help="emit verified members of the infinite family")
    p.add_argument("--terms", type=int, default=4)
    p.add_argument("--full", action="store_true", help="include full decimal values")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("tunnell", help="Tunnell's test for the squarefree part of N")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_tunnell)

    p = sub.add_parser("ecmap", help="map the solution at n onto its congruent-number curve")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_ecmap)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
