"""Command-line front end.

By default the encoding is written to standard output so it can be piped
into a grounder and solver::

    adfasp -adm -cred a instance.adf | clingo

``--solve`` runs the solver itself and prints decoded interpretations,
``--oracle`` answers with the brute-force reference semantics instead.

Exit status: 0 for a yes answer or a nonempty result, 1 for no or empty,
2 for usage and input errors, 3 when the solver fails.
"""

from __future__ import annotations

import argparse
import sys

from . import adf_encoder, grappa_encoder, oracle
from .asp import render
from .decompose import decompose
from .parser import ParseError, parse_adf, parse_grappa
from .solver import SolverConfig, SolverError, decide, solve

ADF_FLAGS = ("adm", "com", "prf", "grd", "stb")
GRAPPA_FLAGS = ("adm", "com", "prf")

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_SOLVER = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        self.exit(EXIT_USAGE, f"\n{self.prog}: error: {message}\n")

    def _get_option_tuples(self, option_string):
        # no prefix matching, not even for single-dash flags like -ad
        return []


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="adfasp",
        description="Compile ADF or GRAPPA instances to ASP, or solve them.",
        allow_abbrev=False,
    )
    sem = p.add_mutually_exclusive_group(required=True)
    sem.add_argument("-adm", dest="sigma", action="store_const", const="adm", help="admissible interpretations")
    sem.add_argument("-com", dest="sigma", action="store_const", const="com", help="complete interpretations")
    sem.add_argument("-prf", dest="sigma", action="store_const", const="prf", help="preferred interpretations")
    sem.add_argument("-grd", dest="sigma", action="store_const", const="grd", help="grounded interpretation (ADF only)")
    sem.add_argument("-stb", dest="sigma", action="store_const", const="stb", help="stable interpretations (ADF only)")
    q = p.add_mutually_exclusive_group()
    q.add_argument("-cred", metavar="s", help="check credulous acceptance of statement s")
    q.add_argument("-scep", "-skept", dest="skept", metavar="s", help="check skeptical acceptance of statement s")
    p.add_argument("input", help="instance file, or - for standard input")
    p.add_argument("--grappa", action="store_true", help="read a GRAPPA instance instead of an ADF")
    p.add_argument("--solve", action="store_true", help="run the solver and print the results")
    p.add_argument("--oracle", action="store_true", help="answer with the brute-force semantics (implies --solve)")
    p.add_argument("--solver", metavar="CMD", help="solver command (default: $ADFASP_SOLVER, clingo, python -m clingo)")
    p.add_argument("--preprocessor", metavar="CMD", help="rule decomposer to pipe the program through before solving")
    p.add_argument("--no-decompose", action="store_true", help="do not split long rules before solving")
    p.add_argument("--decompose", dest="emit_decomposed", action="store_true", help="split long rules in the printed encoding")
    p.add_argument("--time-limit", type=float, metavar="SEC", help="solver time limit in seconds")
    return p


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.grappa and args.sigma not in GRAPPA_FLAGS:
        parser.error(f"-{args.sigma} is not available for GRAPPA instances")
    try:
        data = _read(args.input)
    except OSError as exc:
        print(f"adfasp: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        inst = parse_grappa(data) if args.grappa else parse_adf(data)
    except ParseError as exc:
        where = f"{exc.line}:{exc.column}: " if exc.line else ""
        print(f"{args.input}:{where}{exc.kind}: {exc.message}", file=sys.stderr)
        return EXIT_USAGE
    query = ("cred", args.cred) if args.cred else ("skept", args.skept) if args.skept else None
    if query and query[1] not in inst.statements:
        print(f"adfasp: unknown statement {query[1]!r}", file=sys.stderr)
        return EXIT_USAGE

    if args.oracle:
        if args.grappa:
            results = oracle.enumerate_grappa(inst, args.sigma)
        else:
            results = oracle.enumerate_adf(inst, args.sigma)
        return _report(results, query)

    try:
        if args.grappa:
            program = grappa_encoder.encode_grappa(inst, args.sigma)
        else:
            program = adf_encoder.encode(inst, args.sigma)
    except ValueError as exc:
        print(f"adfasp: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if query:
        program = adf_encoder.attach_query(program, query[0], query[1], inst.statements)

    if not args.solve:
        sys.stdout.write(render(decompose(program) if args.emit_decomposed else program))
        return EXIT_YES

    cfg = SolverConfig(args.solver, args.preprocessor, 0, args.time_limit, not args.no_decompose)
    try:
        if query:
            yes = decide(program, cfg)
            print("YES" if yes else "NO")
            return EXIT_YES if yes else EXIT_NO
        report = solve(program, inst.statements, cfg)
    except SolverError as exc:
        print(f"adfasp: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    return _report(report.distinct(), None)


def _report(results, query) -> int:
    if query:
        yes = oracle.accepted(results, query[1], query[0])
        print("YES" if yes else "NO")
        return EXIT_YES if yes else EXIT_NO
    lines = sorted(str(v) for v in results)
    if not lines:
        print("UNSATISFIABLE")
        return EXIT_NO
    for line in lines:
        print(line)
    return EXIT_YES


if __name__ == "__main__":
    raise SystemExit(main())
