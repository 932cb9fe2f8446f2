"""Exit criteria.  Each test records a PASS/FAIL line shown in the pytest summary."""

import io
import itertools
import math
import random
import time
from collections import Counter

import pytest

from binset import BinSeT, Ledger, OracleLedger, PrefixSumArray, core
from binset.bench import run_bench
from binset.harness import verify_commands
from binset.trace import dump_snapshot, generate_trace, load_snapshot, parse_trace

from conftest import record_acceptance
from helpers import aggregate_mismatches

TRACE_COUNT = 1000
MAX_TRACE_LENGTH = 10_000
TIME_RANGES = (8, 16, 32, 64)
BENCH_SIZES = (1 << 10, 1 << 14, 1 << 18)
BENCH_OPS = 10_000
LOG_SLACK = 1.3


def trace_suite():
    """Reproducible suite: log-uniform lengths up to 10^4, small time ranges."""
    rng = random.Random(20240601)
    for i in range(TRACE_COUNT):
        if i % 100 == 0:
            length = MAX_TRACE_LENGTH
        else:
            length = int(math.exp(rng.uniform(0, math.log(MAX_TRACE_LENGTH))))
        time_range = rng.choice(TIME_RANGES)
        lines = generate_trace(length, seed=i, time_range=time_range, kinds="RFQM")
        yield i, list(parse_trace(lines))


def test_criterion_1_oracle_equivalence():
    started = time.perf_counter()
    failures, commands, checks = [], 0, 0
    for i, trace in trace_suite():
        report = verify_commands(trace)
        commands += report.commands
        checks += report.checks
        if not report.ok:
            failures.append(f"trace {i}: {report.failure}")
    elapsed = time.perf_counter() - started
    detail = (f"{TRACE_COUNT} traces, {commands} commands, {checks} answers, "
              f"{len(failures)} divergences, {elapsed:.1f}s")
    record_acceptance("1 oracle equivalence", not failures, detail)
    assert not failures, failures[:3]


def live_reservations(trace) -> int:
    """Reservations whose events are still present: frees cancel an identical one."""
    live = Counter()
    for c in trace:
        if c.op == "R":
            live[(+1, *c.args)] += 1
        elif c.op == "F":
            if live[(+1, *c.args)]:
                live[(+1, *c.args)] -= 1
            else:
                live[(-1, *c.args)] += 1
    return sum(live.values())


def test_criteria_2_and_5_invariants_after_every_mutation():
    # Paranoid mode validates the whole tree after each mutation, including
    # node_count == 2 * event_count - 1.
    invariant_failures, space_failures = [], []
    for i, trace in trace_suite():
        ledger = Ledger()
        report = verify_commands(trace, paranoid=True, ledger=ledger)
        if not report.ok:
            invariant_failures.append(f"trace {i}: {report.failure}")
        stats = ledger.stats()
        if stats.event_count and stats.node_count != 2 * stats.event_count - 1:
            space_failures.append(f"trace {i}: {stats}")
        if stats.event_count > 2 * live_reservations(trace):
            space_failures.append(f"trace {i}: {stats.event_count} events for "
                                  f"{live_reservations(trace)} live reservations")
    record_acceptance("2 structural invariants", not invariant_failures,
                      f"{len(invariant_failures)} traces with violations")
    record_acceptance("5 space", not space_failures,
                      f"{len(space_failures)} traces breaking node/event counts")
    assert not invariant_failures, invariant_failures[:3]
    assert not space_failures, space_failures[:3]


@pytest.mark.parametrize("k", [5, 6, 7])
def test_criterion_3_rotations_exhaustive(k, monkeypatch):
    rotations = Counter()
    for name in ("rotate_left", "rotate_right", "rotate_left_right", "rotate_right_left"):
        original = getattr(core, name)
        monkeypatch.setattr(core, name, _counting(original, rotations))
    rng = random.Random(k)
    times = sorted(rng.sample(range(100), k))
    values = [rng.choice([-1, 1]) * rng.randint(1, 9) for _ in range(k)]
    events = list(zip(times, values))
    endpoints = times + [times[-1] + 1]
    pairs = [(a, b) for a, b in itertools.combinations(endpoints, 2)]
    oracle = OracleLedger()
    for t, d in events:
        oracle.add_event(t, d)
    expected = [(oracle.max_reserved(a, b), oracle.min_reserved(a, b)) for a, b in pairs]

    failures, shapes = [], set()
    for order in itertools.permutations(events):
        tree = BinSeT(order)
        problems = aggregate_mismatches(tree) + tree.validate()
        answers = [(tree.max_reserved(a, b), tree.min_reserved(a, b)) for a, b in pairs]
        if problems or answers != expected:
            failures.append((order, problems[:2]))
        shapes.add(_shape(tree.root))
    single = rotations["rotate_left"] + rotations["rotate_right"]
    double = rotations["rotate_left_right"] + rotations["rotate_right_left"]
    ok = not failures and single > 0 and double > 0
    record_acceptance(f"3 rotations k={k}", ok,
                      f"{math.factorial(k)} orders, {len(shapes)} distinct shapes, "
                      f"{single} single / {double} double rotations, "
                      f"{len(pairs)} queries each, {len(failures)} failures")
    assert ok, failures[:3]


def _counting(rotate, counter):
    def wrapped(node):
        counter[rotate.__name__] += 1
        return rotate(node)
    return wrapped


def _shape(node):
    return None if node is None else (node.tau, _shape(node.left), _shape(node.right))


def test_criterion_4_logarithmic_behaviour():
    rows = run_bench(BENCH_SIZES, seed=0, ops=BENCH_OPS)
    first = rows[0]
    ok = True
    parts = []
    for row in rows:
        growth = row.visits_per_op / first.visits_per_op
        allowed = LOG_SLACK * math.log2(row.n) / math.log2(first.n)
        height_ok = row.height <= row.height_bound
        ok &= growth <= allowed and height_ok and row.ops >= BENCH_OPS
        parts.append(f"n=2^{int(math.log2(row.n))}: {row.visits_per_op:.1f} visits/op "
                     f"(x{growth:.2f} <= {allowed:.2f}), height {row.height} "
                     f"<= {row.height_bound:.1f} for {row.events} events")
    record_acceptance("4 logarithmic behaviour", ok, "; ".join(parts))
    assert ok, parts


def random_ledger(rng, reservations=30, horizon=200):
    ledger = Ledger()
    for _ in range(reservations):
        t0 = rng.randrange(horizon)
        ledger.reserve(rng.randint(1, 20), t0, t0 + rng.randint(1, horizon // 4))
    for _ in range(reservations // 4):
        t0 = rng.randrange(horizon)
        ledger.free(rng.randint(1, 20), t0, t0 + rng.randint(1, horizon // 4))
    return ledger


def all_answers(ledger, endpoints):
    points = sorted(set(endpoints))
    points = [points[0] - 1] + points + [points[-1] + 1]
    return [(ledger.max_reserved(a, b), ledger.min_reserved(a, b))
            for a, b in itertools.combinations(points, 2)]


def test_criterion_6_cancellation():
    rng = random.Random(6)
    failures = 0
    for _ in range(100):
        ledger = random_ledger(rng)
        t0 = rng.randrange(200)
        bw, t1 = rng.randint(1, 20), t0 + rng.randint(1, 50)
        endpoints = [t for t, _ in ledger.events()] + [t0, t1]
        count, answers = ledger.tree.event_count, all_answers(ledger, endpoints)
        ledger.reserve(bw, t0, t1)
        ledger.free(bw, t0, t1)
        if (ledger.tree.event_count != count or all_answers(ledger, endpoints) != answers
                or ledger.validate()):
            failures += 1
    record_acceptance("6 cancellation", failures == 0, f"100 ledgers, {failures} failures")
    assert failures == 0


def test_criterion_7_prefix_sums():
    rng = random.Random(7)
    n = 64
    v, array = PrefixSumArray(n), [0] * (2 * n + 1)
    mismatches = 0
    for step in range(1000):
        # Indices beyond n grow the array.
        i = rng.randint(1, n if step < 500 else 2 * n)
        x = rng.randint(-100, 100)
        v.update(i, x)
        array[i] += x
        prefix = list(itertools.accumulate(array[: len(v) + 1]))
        mismatches += sum(v.retrieve(m) != prefix[m] for m in range(1, len(v) + 1))
    ok = mismatches == 0 and len(v) > n
    record_acceptance("7 prefix sums", ok,
                      f"1000 updates, final length {len(v)}, {mismatches} mismatches")
    assert ok


def test_criterion_8_snapshot_round_trip():
    rng = random.Random(8)
    failures = 0
    for _ in range(100):
        ledger = random_ledger(rng, reservations=rng.randint(0, 60))
        buf = io.StringIO()
        dump_snapshot(ledger, buf)
        restored = load_snapshot(io.StringIO(buf.getvalue()))
        same = restored.tree.event_count == ledger.tree.event_count
        for _ in range(100):
            q0 = rng.randrange(-10, 260)
            q1 = q0 + rng.randint(1, 100)
            same &= (restored.max_reserved(q0, q1) == ledger.max_reserved(q0, q1)
                     and restored.min_reserved(q0, q1) == ledger.min_reserved(q0, q1))
        failures += not same
    record_acceptance("8 snapshot round trip", failures == 0, f"100 ledgers, {failures} failures")
    assert failures == 0
