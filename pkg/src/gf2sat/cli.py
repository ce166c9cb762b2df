"""Command-line front end: solve, bench and gen subcommands.

Exit codes follow the competition convention: 10 when every input was
satisfied (a verified model was printed), 0 for unknown, 1 on I/O, parse or
usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import run_bench
from .config import SolverConfig
from .driver import SATISFIED, solve
from .formula import DimacsError, parse_dimacs
from .generator import generate_parity

EXIT_SAT = 10
EXIT_UNKNOWN = 0
EXIT_ERROR = 1


def _config_from_args(args) -> SolverConfig:
    return SolverConfig(
        theta_multiplier=args.theta_mult,
        theta_offset=args.theta_off,
        radius=args.radius,
        flip_multiplier=args.flip_mult,
        theta_override=args.theta,
    )


def _print_model(model, num_vars: int, out):
    line = "v"
    for v in range(1, num_vars + 1):
        token = f" {v}" if model[v] else f" -{v}"
        if len(line) + len(token) > 76:
            print(line, file=out)
            line = "v"
        line += token
    line += " 0"
    print(line, file=out)


def _cmd_solve(args) -> int:
    cfg = _config_from_args(args)
    all_sat = True
    for path in args.files:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            print(f"c error: {exc}", file=sys.stderr)
            return EXIT_ERROR
        try:
            formula = parse_dimacs(text)
        except DimacsError as exc:
            print(f"c parse error in {path}: {exc}", file=sys.stderr)
            return EXIT_ERROR
        for warning in formula.stats.warnings:
            print(f"c warning: {path}: {warning}", file=sys.stderr)
        result = solve(formula, cfg, collect_trace=args.trace)
        if args.trace:
            for t, n, c, v in result.trace:
                print(f"t {t} f {n} c {c} v {v}", file=sys.stderr)
        if args.stats:
            with open(args.stats, "a") as fh:
                fh.write(f"file={path}\n")
                fh.write(result.flat_stats())
        print(f"c {path}: {result.stats.get('time_total', 0.0)}s "
              f"backend={result.stats.get('backend')}")
        if result.status == SATISFIED:
            print("s SATISFIABLE")
            _print_model(result.model, formula.num_vars, sys.stdout)
        else:
            print(f"c reason: {result.reason}")
            print("s UNKNOWN")
            all_sat = False
    return EXIT_SAT if all_sat and args.files else EXIT_UNKNOWN


def _cmd_bench(args) -> int:
    cfg = _config_from_args(args)
    report = run_bench(args.files, cfg, args.reps)
    print(report.to_text(), end="")
    if args.report:
        Path(args.report).write_text(report.to_flat_records())
    return EXIT_UNKNOWN


def _cmd_gen(args) -> int:
    try:
        instance = generate_parity(args.bits, args.samples, args.noise,
                                   args.seed)
    except ValueError as exc:
        print(f"c generator error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    Path(args.out).write_text(instance.dimacs())
    print(f"c wrote {args.out}: {instance.formula.num_vars} vars, "
          f"{len(instance.formula.clauses)} clauses")
    return EXIT_UNKNOWN


def _add_solver_options(p):
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--theta", type=int, default=None,
                   help="absolute frequent-variable threshold")
    p.add_argument("--theta-mult", type=int, default=3)
    p.add_argument("--theta-off", type=int, default=2)
    p.add_argument("--flip-mult", type=int, default=2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gf2sat",
        description="Hybrid SAT solver for parity-structured CNF instances",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve DIMACS CNF files")
    p_solve.add_argument("files", nargs="+")
    _add_solver_options(p_solve)
    p_solve.add_argument("--trace", action="store_true",
                         help="print flip trace lines to stderr")
    p_solve.add_argument("--stats", default=None,
                         help="append flat key=value stats to this file")
    p_solve.set_defaults(func=_cmd_solve)

    p_bench = sub.add_parser("bench", help="benchmark a list of files")
    p_bench.add_argument("files", nargs="*")
    _add_solver_options(p_bench)
    p_bench.add_argument("--reps", type=int, default=1)
    p_bench.add_argument("--report", default=None,
                         help="write flat per-instance records here")
    p_bench.set_defaults(func=_cmd_bench)

    p_gen = sub.add_parser("gen", help="generate a planted parity instance")
    p_gen.add_argument("--bits", type=int, required=True)
    p_gen.add_argument("--samples", type=int, required=True)
    p_gen.add_argument("--noise", type=int, default=0)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=_cmd_gen)
    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_UNKNOWN
    return args.func(args)


def main() -> None:
    sys.exit(run_cli())
