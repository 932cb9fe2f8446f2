"""Command-line harness.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import format_report, run_bench
from .harness import run_commands, verify_commands
from .ledger import Ledger
from .trace import (SnapshotFormatError, TraceParseError, dump_snapshot, format_stats,
                    generate_trace, load_snapshot, parse_trace)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _read_trace(path: str):
    if path == "-":
        return list(parse_trace(sys.stdin))
    with open(path) as fp:
        return list(parse_trace(fp))


def _load(path: str | None) -> Ledger:
    if path is None:
        return Ledger()
    with open(path) as fp:
        return load_snapshot(fp)


def cmd_run(args) -> int:
    ledger = _load(args.restore)
    result = run_commands(_read_trace(args.trace), ledger)
    for line in result.output:
        print(line)
    for line in result.errors:
        print(f"error: {line}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.gen is not None:
        try:
            lines = generate_trace(args.gen, args.seed, time_range=args.time_range,
                                   kinds=args.kinds)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        if args.emit:
            Path(args.emit).write_text("\n".join(lines) + "\n")
        commands = list(parse_trace(lines))
    elif args.trace is not None:
        commands = _read_trace(args.trace)
    else:
        print("verify needs a trace file or --gen N", file=sys.stderr)
        return EXIT_USAGE
    report = verify_commands(commands, paranoid=args.paranoid)
    print(report)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        print(f"bad --sizes {args.sizes!r}", file=sys.stderr)
        return EXIT_USAGE
    if not sizes or min(sizes) < 2:
        print("--sizes needs integers >= 2", file=sys.stderr)
        return EXIT_USAGE
    print(format_report(run_bench(sizes, seed=args.seed, ops=args.ops)))
    return EXIT_OK


def cmd_snapshot(args) -> int:
    ledger = _load(args.restore)
    if args.trace:
        result = run_commands(_read_trace(args.trace), ledger)
        for line in result.errors:
            print(f"error: {line}", file=sys.stderr)
    with open(args.out, "w") as fp:
        dump_snapshot(ledger, fp)
    return EXIT_OK


def cmd_restore(args) -> int:
    ledger = _load(args.snapshot)
    problems = ledger.validate()
    if problems:
        print("\n".join(problems), file=sys.stderr)
        return EXIT_FAIL
    print(format_stats(ledger))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="binset", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="execute a trace and print query answers")
    p.add_argument("trace", help="trace file, or - for stdin")
    p.add_argument("--restore", metavar="SNAPSHOT", help="start from a snapshot")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="check a trace against the brute-force oracle")
    p.add_argument("trace", nargs="?", help="trace file, or - for stdin")
    p.add_argument("--paranoid", action="store_true",
                   help="validate the tree after every mutation")
    p.add_argument("--gen", type=int, metavar="N", help="generate an N-command trace")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-range", type=int, default=64,
                   help="timestamps of generated traces lie in [0, RANGE)")
    p.add_argument("--kinds", default="RFAQMS", help="commands the generator may emit")
    p.add_argument("--emit", metavar="FILE", help="write the generated trace here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="measure node visits and time per operation")
    p.add_argument("--sizes", default="1024,16384,262144", help="comma-separated sizes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ops", type=int, default=10_000, help="operations timed per size")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("snapshot", help="write ledger state to a file")
    p.add_argument("out")
    p.add_argument("--trace", help="trace to run before writing")
    p.add_argument("--restore", metavar="SNAPSHOT", help="start from a snapshot")
    p.set_defaults(func=cmd_snapshot)

    p = sub.add_parser("restore", help="load and check a snapshot, print its stats")
    p.add_argument("snapshot")
    p.set_defaults(func=cmd_restore)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (TraceParseError, SnapshotFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
