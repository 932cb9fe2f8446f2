"""Run traces against a ledger, optionally in lockstep with the oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .ledger import Ledger
from .oracle import OracleLedger
from .trace import Command, execute


@dataclass
class RunResult:
    output: list[str] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)


def run_commands(commands: Iterable[Command], ledger: Ledger | None = None) -> RunResult:
    """Execute commands; execution errors are collected and the run continues."""
    ledger = Ledger() if ledger is None else ledger
    result = RunResult()
    for command in commands:
        try:
            line = execute(ledger, command)
        except (ValueError, OverflowError, KeyError) as exc:
            result.errors.append(f"line {command.lineno}: {command}: {exc}")
            continue
        if line is not None:
            result.output.append(line)
    return result


@dataclass
class VerifyReport:
    commands: int = 0
    checks: int = 0
    failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    def __str__(self) -> str:
        if self.failure:
            return f"FAIL {self.failure}"
        return f"ok: {self.commands} commands, {self.checks} answers checked"


def verify_commands(commands: Iterable[Command], paranoid: bool = False,
                    ledger: Ledger | None = None) -> VerifyReport:
    """Compare every answer with the oracle; stop at the first divergence.

    With ``paranoid`` the tree is also validated after every mutation, and the
    node count is checked against the event count.
    """
    ledger = Ledger() if ledger is None else ledger
    oracle = OracleLedger()
    for time, delta in ledger.tree.events():
        oracle.add_event(time, delta)
    report = VerifyReport()

    def fail(command: Command, message: str) -> VerifyReport:
        report.failure = f"line {command.lineno}: {command}: {message}"
        return report

    for command in commands:
        report.commands += 1
        op, args = command.op, command.args
        if op in "RF":
            bw, t0, t1 = args
            if bw <= 0:
                continue
            (ledger.reserve if op == "R" else ledger.free)(bw, t0, t1)
            (oracle.reserve if op == "R" else oracle.free)(bw, t0, t1)
        elif op == "A":
            if args[0] <= 0 or args[3] < 0:
                continue
            got, want = ledger.admit(*args), oracle.admit(*args)
            report.checks += 1
            if got != want:
                return fail(command, f"admit ledger={got} oracle={want}")
        elif op in "QM":
            if op == "Q":
                got, want = ledger.max_reserved(*args), oracle.max_reserved(*args)
            else:
                got, want = ledger.min_reserved(*args), oracle.min_reserved(*args)
            report.checks += 1
            if got != want:
                return fail(command, f"ledger={got} oracle={want}")
        elif op == "S":
            report.checks += 1
            if ledger.tree.event_count != len(oracle):
                return fail(command, f"event_count ledger={ledger.tree.event_count} "
                                     f"oracle={len(oracle)}")
        if paranoid and op in "RFA":
            problems = ledger.validate()
            if problems:
                return fail(command, "invalid tree: " + "; ".join(problems[:5]))
    if ledger.events() != oracle.events:
        report.failure = "final event lists differ"
    return report
