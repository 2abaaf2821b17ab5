"""Command line entry point.

    relthue [solve] --form 1,-9,-21,88,48 --m 5 --K 20 --eps 0.1 --eta 0.1
    relthue oracle  --form 1,-9,-21,88,48 --m 5 --K 20 --box 76,34,8,4
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from .abs_thue import SearchConfig
from .binary_form import gap_constants, isolate_roots, parse_form
from .constants import DEFAULT_EPS, DEFAULT_ETA, choose_parameters, compute_constants, parse_grid
from .errors import BoxTooLarge, InputError, NotAllRealDistinct, Reducible
from .oracle import DEFAULT_BUDGET, Box, brute_force_box
from .quad_field import make_field
from .rational import parse_rational, to_exact
from .reduction import solve_relative
from .report import SCHEMA, build_document, render_text

log = logging.getLogger("relthue")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_REDUCIBLE = 3
EXIT_NOT_REAL = 4
EXIT_BUDGET = 5


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from exc


def _radii(text: str) -> tuple[int, int, int, int]:
    vals = _int_list(text)
    if len(vals) != 4 or min(vals) < 0:
        raise argparse.ArgumentTypeError("expected four non-negative radii x1,x2,y1,y2")
    return tuple(vals)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--form", type=_int_list, required=True,
                   help="coefficients c0,...,cn of F, highest power of x first")
    p.add_argument("--m", type=int, required=True, help="squarefree m > 1, field Q(i*sqrt(m))")
    p.add_argument("--K", type=parse_rational, required=True, help="bound K >= 1")
    p.add_argument("--json", nargs="?", const="-", default=None, metavar="PATH",
                   help="write the JSON document to PATH (default stdout)")
    p.add_argument("--report", action="store_true", help="print the human-readable report")
    p.add_argument("--include-trivial", action=argparse.BooleanOptionalAction, default=True,
                   help="report the solution (0, 0)")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relthue",
        description="Solve relative Thue inequalities |F(x, y)| <= K over imaginary quadratic integers.")
    sub = parser.add_subparsers(dest="command")

    s = sub.add_parser("solve", help="run the reduction pipeline (default)")
    _common(s)
    s.add_argument("--eps", type=parse_rational, default=None)
    s.add_argument("--eta", type=parse_rational, default=None)
    s.add_argument("--auto-params", nargs="?", const="default", default=None, metavar="GRID",
                   help="choose (eps, eta) by the cost model; GRID is 'e1,e2,..:h1,h2,..'")
    s.add_argument("--weight", type=parse_rational, default=1,
                   help="cost-model weight per absolute equation")
    s.add_argument("--y-max", type=int, default=SearchConfig.y_max,
                   help="absolute solver is exhaustive for |y| up to this bound")
    s.add_argument("--convergent-depth", type=int, default=0)
    s.add_argument("--window-pad", type=int, default=0)
    s.add_argument("--oracle-box", type=_radii, default=None, metavar="X1,X2,Y1,Y2",
                   help="also brute-force the symmetric box with these coordinate radii")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    o = sub.add_parser("oracle", help="brute-force a coordinate box")
    _common(o)
    o.add_argument("--box", type=_radii, required=True, metavar="X1,X2,Y1,Y2")
    o.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return parser


def _emit(args, doc: dict, text: str):
    want_json = args.json is not None
    want_report = args.report or not want_json
    if want_report:
        stream = sys.stderr if want_json and args.json == "-" else sys.stdout
        print(text, file=stream)
    if want_json:
        payload = json.dumps(doc, indent=2)
        if args.json == "-":
            print(payload)
        else:
            with open(args.json, "w") as fh:
                fh.write(payload + "\n")


def _run_oracle(F, field, K, radii, budget, include_trivial):
    box = Box.symmetric(*radii)
    t0 = time.perf_counter()
    sols = brute_force_box(F, field, K, box, budget, include_trivial)
    return box, sols, time.perf_counter() - t0


def cmd_solve(args) -> int:
    F = parse_form(args.form)
    field = make_field(args.m)
    K = args.K
    t0 = time.perf_counter()
    roots = isolate_roots(F)
    A, B = gap_constants(roots)
    n = F.degree
    param_cost = None
    if args.auto_params is not None:
        grid = parse_grid(args.auto_params)
        consts, param_cost = choose_parameters(A, B, K, n, field.m, roots.max_abs_upper(),
                                               grid, args.weight)
    else:
        eps = args.eps if args.eps is not None else DEFAULT_EPS
        eta = args.eta if args.eta is not None else DEFAULT_ETA
        consts = compute_constants(A, B, K, n, field.m, eps, eta)
    config = SearchConfig(args.y_max, args.window_pad, args.convergent_depth)
    plan, result = solve_relative(F, field, K, consts, roots, config, args.include_trivial)
    elapsed = time.perf_counter() - t0
    log.info("pipeline finished in %.2f s", elapsed)

    request = {
        "command": "solve", "form": list(F.coeffs), "m": field.m, "K": to_exact(K),
        "eps": None if args.eps is None else to_exact(args.eps),
        "eta": None if args.eta is None else to_exact(args.eta),
        "auto_params": args.auto_params, "weight": to_exact(args.weight),
        "y_max": args.y_max, "convergent_depth": args.convergent_depth,
        "window_pad": args.window_pad, "include_trivial": args.include_trivial,
        "oracle_box": None if args.oracle_box is None else list(args.oracle_box),
    }
    oracle = None
    if args.oracle_box is not None:
        box, sols, dt = _run_oracle(F, field, K, args.oracle_box, args.budget,
                                    args.include_trivial)
        mine = result.restricted(box.ranges)
        oracle = {"box": box.to_json(), "count": len(sols.solutions),
                  "solutions": [list(q) for q in sols.sorted()],
                  "matches_pipeline": mine == sols.solutions,
                  "seconds": round(dt, 3)}
    doc = build_document(request, F, field, roots, A, B, consts, plan, result,
                         param_cost, oracle)
    doc["seconds"] = round(elapsed, 3)
    _emit(args, doc, render_text(doc))
    if oracle is not None and not oracle["matches_pipeline"]:
        log.error("oracle disagrees with the pipeline")
        return 1
    return EXIT_OK


def cmd_oracle(args) -> int:
    F = parse_form(args.form)
    field = make_field(args.m)
    box, sols, dt = _run_oracle(F, field, args.K, args.box, args.budget, args.include_trivial)
    doc = {"schema": SCHEMA,
           "input": {"command": "oracle", "form": list(F.coeffs), "m": field.m,
                     "K": to_exact(args.K), "box": box.to_json(),
                     "include_trivial": args.include_trivial},
           "result": sols.to_json(), "seconds": round(dt, 3)}
    lines = [f"oracle: |F(x, y)| <= {to_exact(args.K)} over box {box.to_json()}",
             f"solutions (x1, x2, y1, y2), up to sign: {len(sols.solutions)}"]
    lines += ["  ({}, {}, {}, {})".format(*q) for q in sols.sorted()]
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in ("solve", "oracle", "-h", "--help"):
        argv.insert(0, "solve")
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    handler = cmd_oracle if args.command == "oracle" else cmd_solve
    try:
        return handler(args)
    except Reducible as exc:
        print(f"error: reducible form: {exc}", file=sys.stderr)
        return EXIT_REDUCIBLE
    except NotAllRealDistinct as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_REAL
    except BoxTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
