"""Command-line front end.

Exit status: 0 on success, 1 on a usage error, 2 when the input is outside
the domain of the computation, 3 when a check suite reports a failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from urntubes import checks, emit
from urntubes.draws import DrawMode, draw_pmf
from urntubes.errors import ConditioningError, DomainError, ResourceError
from urntubes.firstfull import firstfull, points_share
from urntubes.mmo import trace_record
from urntubes.negative import negative, negative_via_mmo
from urntubes.numeric import parse_rational
from urntubes.textspec import parse_multiset, parse_urn

DEFAULT_TAIL_EPS = Fraction(1, 1000)
ENV_FORMAT = "URNTUBES_FORMAT"

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_FAILED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _mode(text: str) -> DrawMode:
    try:
        return DrawMode.parse(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    default = os.environ.get(ENV_FORMAT) or "table"
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=emit.FORMATS, default=argparse.SUPPRESS,
                     help=f"output format (default {default}, or ${ENV_FORMAT})")

    parser = _Parser(prog="urntubes", parents=[fmt],
                     description="Exact draw, first-full and negative distributions for urns and tubes.")
    parser.set_defaults(format=default)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("draw", parents=[fmt], help="distribution of a K-ball draw")
    p.add_argument("--mode", type=_mode, required=True)
    p.add_argument("--urn", required=True)
    p.add_argument("-k", type=int, required=True)

    p = sub.add_parser("first-full", parents=[fmt], help="which tube fills first")
    p.add_argument("--mode", type=_mode, required=True)
    p.add_argument("--urn", required=True)
    p.add_argument("--tubes", required=True)

    p = sub.add_parser("negative", parents=[fmt], help="number of draws until all tubes are full")
    p.add_argument("--mode", type=_mode, required=True)
    p.add_argument("--urn", required=True)
    p.add_argument("--tubes", required=True)
    cut = p.add_mutually_exclusive_group()
    cut.add_argument("--kmax", type=int)
    cut.add_argument("--tail-eps", type=_rational,
                     help=f"stop once the tail bound is below this (default {DEFAULT_TAIL_EPS})")
    p.add_argument("--trace", action="store_true",
                   help="write one JSON line per automaton step to stderr")

    p = sub.add_parser("points", parents=[fmt], help="fair division of an interrupted game")
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--wins-a", type=int)
    p.add_argument("--wins-b", type=int)
    p.add_argument("--prob", type=_rational, required=True, help="A's chance to win a round")
    p.add_argument("--stake", type=_rational, default=Fraction(1))
    p.add_argument("--grid", action="store_true", help="A's share for every unfinished score")

    p = sub.add_parser("check", parents=[fmt], help="run a randomised self-check suite")
    p.add_argument("--suite", choices=checks.SUITES, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    return parser


def _draw(args) -> tuple[str, int]:
    urn = parse_urn(args.urn, args.mode is DrawMode.MULTINOMIAL)
    if args.k < 0:
        raise DomainError("K must be a natural number")
    return emit.emit_dist(draw_pmf(args.mode, urn, args.k), args.format), EXIT_OK


def _first_full(args) -> tuple[str, int]:
    urn = parse_urn(args.urn, args.mode is DrawMode.MULTINOMIAL)
    tubes = parse_multiset(args.tubes)
    return emit.emit_dist(firstfull(args.mode, urn, tubes), args.format), EXIT_OK


def _negative(args) -> tuple[str, int]:
    urn = parse_urn(args.urn, args.mode is DrawMode.MULTINOMIAL)
    tubes = parse_multiset(args.tubes)
    if args.mode is DrawMode.HYPERGEOMETRIC:
        result = negative(args.mode, urn, tubes)
    elif args.kmax is not None:
        result = negative(args.mode, urn, tubes, k_max=args.kmax)
    else:
        eps = DEFAULT_TAIL_EPS if args.tail_eps is None else args.tail_eps
        result = negative(args.mode, urn, tubes, tail_eps=eps)
    if args.trace:
        def on_step(n, emitted, running):
            print(json.dumps(trace_record(n, emitted, running), sort_keys=True), file=args.stderr)

        k_max = None if args.mode is DrawMode.HYPERGEOMETRIC else result.k_max
        negative_via_mmo(args.mode, urn, tubes, k_max=k_max, on_step=on_step)
    return emit.emit_natdist(result, args.format), EXIT_OK


def _points(args) -> tuple[str, int]:
    if args.grid:
        cells = [(a, b, points_share(args.target, a, b, args.prob, args.stake)[1])
                 for a in range(args.target) for b in range(args.target)]
        return emit.emit_grid(cells, args.format), EXIT_OK
    if args.wins_a is None or args.wins_b is None:
        raise UsageError("--wins-a and --wins-b are required unless --grid is given")
    rho, share = points_share(args.target, args.wins_a, args.wins_b, args.prob, args.stake)
    return emit.emit_points(rho, share, args.format), EXIT_OK


def _check(args) -> tuple[str, int]:
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    reports = checks.run_suite(args.suite, args.seed, args.trials)
    text = emit.emit_reports(args.suite, args.seed, args.trials, reports, args.format)
    return text, EXIT_OK if all(r.holds for r in reports) else EXIT_FAILED


_COMMANDS = {
    "draw": _draw,
    "first-full": _first_full,
    "negative": _negative,
    "points": _points,
    "check": _check,
}


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        parser = build_parser()
        if os.environ.get(ENV_FORMAT, "table") not in emit.FORMATS:
            raise UsageError(f"{ENV_FORMAT} must be one of {', '.join(emit.FORMATS)}")
        try:
            args = parser.parse_args(argv)
            args.stderr = stderr
        except SystemExit as exc:  # --help
            return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
        text, code = _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"urntubes: usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except (DomainError, ConditioningError, ResourceError) as exc:
        print(f"urntubes: error: {exc}", file=stderr)
        return EXIT_DOMAIN
    stdout.write(text)
    if code == EXIT_FAILED:
        print("urntubes: some checks failed", file=stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
