"""Trace and snapshot formats.

A trace has one command per line; ``#`` starts a comment::

    R <bw> <t0> <t1>          reserve
    F <bw> <t0> <t1>          free
    A <bw> <t0> <t1> <cap>    admit (prints "accept" or "reject")
    Q <t0> <t1>               max reserved
    M <t0> <t1>               min reserved
    S                         stats

A snapshot is ``binset-snapshot v1`` followed by ``E <time> <delta>`` lines in
ascending time and ``R <id> <bw> <t0> <t1> [label]`` lines in ascending id.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

from .core import check_bandwidth, check_time
from .ledger import Interval, Ledger, ReservationRecord

ARITY = {"R": 3, "F": 3, "A": 4, "Q": 2, "M": 2, "S": 0}
SNAPSHOT_HEADER = "binset-snapshot v1"


class TraceParseError(ValueError):
    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class SnapshotFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Command:
    op: str
    args: tuple[int, ...]
    lineno: int = 0

    def __str__(self) -> str:
        return " ".join([self.op, *map(str, self.args)])


def parse_line(line: str, lineno: int = 0) -> Command | None:
    text = line.split("#", 1)[0].strip()
    if not text:
        return None
    op, *fields = text.split()
    if op not in ARITY:
        raise TraceParseError(lineno, f"unknown command {op!r}")
    if len(fields) != ARITY[op]:
        raise TraceParseError(lineno, f"{op} takes {ARITY[op]} arguments, got {len(fields)}")
    try:
        args = tuple(int(f, 10) for f in fields)
    except ValueError:
        raise TraceParseError(lineno, f"bad integer in {text!r}") from None
    times = args[1:3] if op in "RFA" else args
    if times and not times[0] < times[1]:
        raise TraceParseError(lineno, f"empty or reversed interval in {text!r}")
    return Command(op, args, lineno)


def parse_trace(lines: Iterable[str]) -> Iterator[Command]:
    for lineno, line in enumerate(lines, 1):
        command = parse_line(line, lineno)
        if command is not None:
            yield command


def execute(ledger: Ledger, command: Command) -> str | None:
    """Apply one command; return its output line, if it has one."""
    op, args = command.op, command.args
    if op == "R":
        ledger.reserve(*args)
    elif op == "F":
        ledger.free(*args)
    elif op == "A":
        return "accept" if ledger.admit(*args) else "reject"
    elif op == "Q":
        return str(ledger.max_reserved(*args))
    elif op == "M":
        return str(ledger.min_reserved(*args))
    elif op == "S":
        return format_stats(ledger)
    return None


def format_stats(ledger: Ledger) -> str:
    s = ledger.stats()
    return (f"event_count={s.event_count} node_count={s.node_count} "
            f"height={s.height} record_count={s.record_count}")


WEIGHTS = {"R": 30, "F": 17, "A": 10, "Q": 20, "M": 15, "S": 8}


def generate_trace(length: int, seed: int, time_range: int = 64,
                   max_bandwidth: int = 20, kinds: str = "RFAQMS") -> list[str]:
    """Random trace; a small ``time_range`` forces merges and cancellations.

    Most frees cancel an earlier reservation exactly.  Queries may start
    before and end after the event span.
    """
    if not kinds or set(kinds) - set(WEIGHTS):
        raise ValueError(f"kinds must be a non-empty subset of {''.join(WEIGHTS)!r}")
    if time_range < 1:
        raise ValueError("time_range must be positive")
    rng = random.Random(seed)
    ops = [op for op in WEIGHTS if op in kinds]
    weights = [WEIGHTS[op] for op in ops]
    live: list[tuple[int, int, int]] = []
    lines = []
    for op in rng.choices(ops, weights, k=length):
        if op == "S":
            lines.append("S")
        elif op in "QM":
            q0 = rng.randrange(-2, time_range + 2)
            q1 = rng.randrange(q0 + 1, time_range + 4)
            lines.append(f"{op} {q0} {q1}")
        else:
            t0 = rng.randrange(time_range)
            t1 = rng.randrange(t0 + 1, time_range + 1)
            bw = rng.randint(1, max_bandwidth)
            if op == "R":
                live.append((bw, t0, t1))
                lines.append(f"R {bw} {t0} {t1}")
            elif op == "F":
                if live and rng.random() < 0.8:
                    bw, t0, t1 = live.pop(rng.randrange(len(live)))
                lines.append(f"F {bw} {t0} {t1}")
            else:
                cap = rng.randint(0, 4 * max_bandwidth)
                lines.append(f"A {bw} {t0} {t1} {cap}")
    return lines


# -- snapshots ---------------------------------------------------------------

def dump_snapshot(ledger: Ledger, fp: IO[str]) -> None:
    fp.write(SNAPSHOT_HEADER + "\n")
    for time, delta in ledger.tree.events():
        fp.write(f"E {time} {delta}\n")
    for rid in sorted(ledger.records):
        r = ledger.records[rid]
        line = f"R {r.id} {r.bandwidth} {r.interval.start} {r.interval.end}"
        if r.label:
            line += " " + r.label
        fp.write(line + "\n")


def load_snapshot(fp: IO[str]) -> Ledger:
    """Parse a snapshot completely, then build a fresh ledger from it."""
    lines = fp.read().splitlines()
    if not lines or lines[0].strip() != SNAPSHOT_HEADER:
        raise SnapshotFormatError(f"missing {SNAPSHOT_HEADER!r} header")
    events: list[tuple[int, int]] = []
    records: list[ReservationRecord] = []
    for lineno, line in enumerate(lines[1:], 2):
        if not line.strip():
            continue
        try:
            if line.startswith("E "):
                fields = line.split()
                if len(fields) != 3:
                    raise ValueError("expected 'E time delta'")
                time, delta = check_time(int(fields[1])), check_bandwidth(int(fields[2]))
                if delta == 0:
                    raise ValueError("zero event")
                if records:
                    raise ValueError("event after reservation records")
                if events and time <= events[-1][0]:
                    raise ValueError("event times not strictly ascending")
                events.append((time, delta))
            elif line.startswith("R "):
                fields = line.split(" ", 5)
                if len(fields) < 5:
                    raise ValueError("expected 'R id bw t0 t1 [label]'")
                rid, bw, t0, t1 = (int(f) for f in fields[1:5])
                label = fields[5] if len(fields) > 5 else None
                if bw <= 0 or t0 > t1:
                    raise ValueError("invalid reservation")
                if records and rid <= records[-1].id:
                    raise ValueError("reservation ids not strictly ascending")
                records.append(ReservationRecord(rid, check_bandwidth(bw),
                                                 Interval(check_time(t0), check_time(t1)),
                                                 label))
            else:
                raise ValueError(f"unknown line type {line[:1]!r}")
        except (ValueError, OverflowError) as exc:
            raise SnapshotFormatError(f"line {lineno}: {exc}") from None
    try:
        return Ledger.from_state(events, records)
    except (ValueError, OverflowError) as exc:
        raise SnapshotFormatError(str(exc)) from None
