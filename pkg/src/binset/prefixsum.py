"""Dynamic prefix sums answered by a reservation ledger.

Adding ``x`` at index ``i`` reserves ``x`` over ``[i, +inf)``, so the
reserved amount at ``m`` is ``V(1) + ... + V(m)``.  A single far-right
timestamp stands in for ``+inf``; the array can therefore grow without
moving any stored event.
"""

from __future__ import annotations

import operator

from .core import INT64_MAX
from .ledger import Ledger

INFINITY = INT64_MAX


class PrefixSumArray:
    """Array ``V(1..n)`` of integers with point updates and prefix sums.

    >>> v = PrefixSumArray(4)
    >>> v.update(2, 5)
    >>> v.retrieve(1), v.retrieve(2), v.retrieve(4)
    (0, 5, 5)
    """

    def __init__(self, n: int = 0) -> None:
        if n < 0:
            raise ValueError("length must be non-negative")
        self.n = n
        self.ledger = Ledger()

    def __len__(self) -> int:
        return self.n

    def update(self, i: int, x: int) -> None:
        """``V(i) += x``; indices past the end grow the array."""
        i = operator.index(i)
        if not 1 <= i < INFINITY:
            raise IndexError(f"index {i} out of range")
        self.ledger.adjust(x, i, INFINITY)
        if i > self.n:
            self.n = i

    def retrieve(self, m: int) -> int:
        """``V(1) + ... + V(m)``."""
        m = self._check(m)
        return self.ledger.max_reserved(m, m + 1)

    def range_sum(self, i: int, j: int) -> int:
        """``V(i) + ... + V(j)``."""
        i, j = self._check(i), self._check(j)
        if i > j:
            raise IndexError(f"empty range [{i}, {j}]")
        if i == 1:
            return self.retrieve(j)
        return self.retrieve(j) - self.retrieve(i - 1)

    def __getitem__(self, i: int) -> int:
        return self.range_sum(i, i)

    def _check(self, m) -> int:
        m = operator.index(m)
        if not 1 <= m <= self.n:
            raise IndexError(f"index {m} outside 1..{self.n}")
        return m
