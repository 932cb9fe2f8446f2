"""Scaling benchmark: instrumented node visits and wall time per operation."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass

from .core import AVL_HEIGHT_FACTOR
from .ledger import Ledger


@dataclass
class BenchRow:
    n: int
    events: int
    height: int
    height_bound: float
    ops: int
    visits_per_op: float
    us_per_op: float

    @property
    def visits_per_log2n(self) -> float:
        return self.visits_per_op / math.log2(self.n)


def bench_size(n: int, seed: int = 0, ops: int = 10_000) -> BenchRow:
    """Build ``n`` random reservations, then time a steady-state op mix.

    Each round cancels one reservation, makes a new one and runs a max and a
    min query, i.e. six tree operations, so the size stays at ``n``.  The
    height bound is computed for the number of events actually stored.
    """
    rng = random.Random(seed)
    horizon = 64 * n
    ledger = Ledger()
    live = []

    def new_reservation() -> None:
        t0 = rng.randrange(horizon)
        t1 = t0 + rng.randint(1, horizon // 8 + 1)
        live.append(ledger.reserve(rng.randint(1, 1000), t0, t1))

    for _ in range(n):
        new_reservation()

    tree = ledger.tree
    rounds = -(-ops // 6)
    tree.visits = 0
    started = time.perf_counter()
    for _ in range(rounds):
        rid = live.pop(rng.randrange(len(live)))
        ledger.free_by_id(rid)
        new_reservation()
        q0 = rng.randrange(horizon)
        q1 = q0 + rng.randint(1, horizon // 4)
        ledger.max_reserved(q0, q1)
        ledger.min_reserved(q0, q1)
    elapsed = time.perf_counter() - started
    total_ops = 6 * rounds
    return BenchRow(
        n=n,
        events=tree.event_count,
        height=tree.height,
        height_bound=AVL_HEIGHT_FACTOR * math.log2(tree.event_count + 2),
        ops=total_ops,
        visits_per_op=tree.visits / total_ops,
        us_per_op=1e6 * elapsed / total_ops,
    )


def run_bench(sizes, seed: int = 0, ops: int = 10_000) -> list[BenchRow]:
    return [bench_size(n, seed + i, ops) for i, n in enumerate(sizes)]


def format_report(rows: list[BenchRow]) -> str:
    lines = [f"{'n':>8} {'events':>8} {'height':>6} {'bound':>6} "
             f"{'visits/op':>10} {'/log2n':>7} {'us/op':>8}"]
    for r in rows:
        lines.append(f"{r.n:>8} {r.events:>8} {r.height:>6} {r.height_bound:>6.1f} "
                     f"{r.visits_per_op:>10.2f} {r.visits_per_log2n:>7.3f} {r.us_per_op:>8.1f}")
    if len(rows) > 1:
        first, last = rows[0], rows[-1]
        growth = last.visits_per_op / first.visits_per_op
        allowed = math.log2(last.n) / math.log2(first.n)
        lines.append(f"visits growth {growth:.3f} vs log2 growth {allowed:.3f}")
    return "\n".join(lines)
