"""Brute-force reference ledger.

Events live in a plain sorted list and every query rescans it, so each
answer follows directly from the definition: the reserved amount at ``t`` is
the sum of all event deltas at times ``<= t`` (0 before the first event).
"""

from __future__ import annotations


class OracleLedger:

    def __init__(self) -> None:
        self.events: list[tuple[int, int]] = []

    def __len__(self) -> int:
        return len(self.events)

    def add_event(self, time: int, delta: int) -> None:
        if delta == 0:
            return
        for i, (t, d) in enumerate(self.events):
            if t == time:
                if d + delta == 0:
                    del self.events[i]
                else:
                    self.events[i] = (t, d + delta)
                return
            if t > time:
                self.events.insert(i, (time, delta))
                return
        self.events.append((time, delta))

    def reserve(self, bandwidth: int, start: int, end: int) -> None:
        if start < end:
            self.add_event(start, bandwidth)
            self.add_event(end, -bandwidth)

    def free(self, bandwidth: int, start: int, end: int) -> None:
        self.reserve(-bandwidth, start, end)

    def reserved_at(self, time: int) -> int:
        return sum(d for t, d in self.events if t <= time)

    def _values(self, start: int, end: int) -> list[int]:
        """Every value the step function takes on ``[start, end)``."""
        running = 0
        values = []
        for t, d in self.events:
            if t >= end:
                break
            if t > start and not values:
                values.append(running)
            running += d
            if t > start:
                values.append(running)
        if not values:
            values.append(running)
        return values

    def max_reserved(self, start: int, end: int) -> int:
        assert start < end
        return max(self._values(start, end))

    def min_reserved(self, start: int, end: int) -> int:
        assert start < end
        return min(self._values(start, end))

    def admit(self, bandwidth: int, start: int, end: int, capacity: int) -> bool:
        if self.max_reserved(start, end) + bandwidth > capacity:
            return False
        self.reserve(bandwidth, start, end)
        return True
