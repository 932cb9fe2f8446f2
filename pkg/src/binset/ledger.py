"""Bandwidth reservation ledger on top of :class:`~binset.core.BinSeT`."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .core import BinSeT, check_bandwidth, check_time


class Interval(NamedTuple):
    """Half-open time interval ``[start, end)``."""

    start: int
    end: int


class ReservationNotFound(KeyError):
    pass


@dataclass(frozen=True)
class ReservationRecord:
    id: int
    bandwidth: int
    interval: Interval
    label: str | None = None


class LedgerStats(NamedTuple):
    event_count: int
    node_count: int
    height: int
    record_count: int


def _positive(bandwidth) -> int:
    bandwidth = check_bandwidth(bandwidth)
    if bandwidth <= 0:
        raise ValueError(f"bandwidth must be positive, got {bandwidth}")
    return bandwidth


def _interval(start, end, allow_empty: bool = False) -> Interval:
    start, end = check_time(start), check_time(end)
    if start > end or (start == end and not allow_empty):
        raise ValueError(f"invalid interval [{start}, {end})")
    return Interval(start, end)


class Ledger:
    """Reservations of a single resource over time.

    A reservation of ``B`` units over ``[t0, t1)`` is stored as the events
    ``(t0, +B)`` and ``(t1, -B)``.  Freeing is the same with the signs
    swapped and is never checked against existing reservations, so the
    reserved amount may go negative.  Before the first event the reserved
    amount is 0.

    >>> ledger = Ledger()
    >>> ledger.reserve(5, 1, 10)
    1
    >>> ledger.reserve(3, 5, 20)
    2
    >>> ledger.max_reserved(1, 20), ledger.max_reserved(1, 5)
    (8, 5)
    """

    def __init__(self) -> None:
        self.tree = BinSeT()
        self.records: dict[int, ReservationRecord] = {}
        self.next_id = 1

    def __repr__(self) -> str:
        return (f"Ledger(events={self.tree.event_count}, "
                f"records={len(self.records)})")

    def reserve(self, bandwidth: int, start: int, end: int, label: str | None = None) -> int:
        """Reserve ``bandwidth`` units over ``[start, end)`` and return its id.

        An empty interval (``start == end``) still gets an id but adds nothing.
        """
        bandwidth = _positive(bandwidth)
        interval = _interval(start, end, allow_empty=True)
        if label is not None and ("\n" in label or "\r" in label):
            raise ValueError("labels must be single-line")
        if interval.start != interval.end:
            self.tree.apply([(interval.start, bandwidth), (interval.end, -bandwidth)])
        rid = self.next_id
        self.next_id += 1
        self.records[rid] = ReservationRecord(rid, bandwidth, interval, label)
        return rid

    def free(self, bandwidth: int, start: int, end: int) -> None:
        """Release ``bandwidth`` units over ``[start, end)`` unconditionally."""
        bandwidth = _positive(bandwidth)
        interval = _interval(start, end, allow_empty=True)
        self.adjust(-bandwidth, *interval)

    def adjust(self, delta: int, start: int, end: int) -> None:
        """Add a signed amount over ``[start, end)`` without keeping a record."""
        delta = check_bandwidth(delta)
        start, end = _interval(start, end, allow_empty=True)
        if delta and start != end:
            self.tree.apply([(start, delta), (end, -delta)])

    def free_by_id(self, rid: int) -> ReservationRecord:
        """Cancel a reservation made by :meth:`reserve` and return its record."""
        try:
            record = self.records[rid]
        except KeyError:
            raise ReservationNotFound(rid) from None
        self.adjust(-record.bandwidth, *record.interval)
        del self.records[rid]
        return record

    def max_reserved(self, start: int, end: int) -> int:
        return self._query(start, end, maximize=True)

    def min_reserved(self, start: int, end: int) -> int:
        return self._query(start, end, maximize=False)

    def reserved_at(self, time: int) -> int:
        return self.tree.reserved_at(check_time(time))

    def _query(self, start: int, end: int, maximize: bool) -> int:
        start, end = _interval(start, end)
        tree = self.tree
        if tree.root is None:
            return 0
        best = None
        if start < tree.t_first:
            best = 0
            start = tree.t_first
            if end <= start:
                return 0
        if start > tree.t_last:
            return tree.total
        end = min(end, tree.t_last + 1)
        if maximize:
            value = tree.max_reserved(start, end)
            return value if best is None else max(best, value)
        value = tree.min_reserved(start, end)
        return value if best is None else min(best, value)

    def admit(self, bandwidth: int, start: int, end: int, capacity: int,
              label: str | None = None) -> bool:
        """Reserve only if the peak over the interval stays within ``capacity``."""
        bandwidth = _positive(bandwidth)
        capacity = check_bandwidth(capacity)
        if capacity < 0:
            raise ValueError(f"capacity must be non-negative, got {capacity}")
        if self.max_reserved(start, end) + bandwidth > capacity:
            return False
        self.reserve(bandwidth, start, end, label)
        return True

    def stats(self) -> LedgerStats:
        tree = self.tree
        return LedgerStats(tree.event_count, tree.node_count, tree.height, len(self.records))

    def validate(self) -> list[str]:
        return self.tree.validate()

    def events(self) -> list[tuple[int, int]]:
        return list(self.tree.events())

    @classmethod
    def from_state(cls, events: Iterable[tuple[int, int]],
                   records: Iterable[ReservationRecord]) -> "Ledger":
        """Rebuild a ledger from stored events and reservation records."""
        ledger = cls()
        for time, delta in events:
            ledger.tree.add_event(time, delta)
        for record in records:
            if record.id in ledger.records:
                raise ValueError(f"duplicate reservation id {record.id}")
            ledger.records[record.id] = record
        ledger.next_id = max(ledger.records, default=0) + 1
        return ledger
