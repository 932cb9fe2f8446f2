"""AVL-balanced binary segment tree over reservation events.

Leaves hold reservation events ``(time, delta)``.  Every internal node stores,
in its own local frame (value 0 just before its first event):

* ``delta``  -- total change over the events below it,
* ``mu_max`` / ``mu_min`` -- largest / smallest running sum after each event,
* ``tau``    -- time of the left-most event in the right subtree.

The running sum after the events up to time ``t`` is the reserved bandwidth at
``t``; range max/min queries walk at most two root-to-leaf paths.
"""

from __future__ import annotations

import math
import operator
from typing import Iterable, Iterator, NamedTuple

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1

# Fibonacci bound for AVL trees, measured in edges.
AVL_HEIGHT_FACTOR = 1.44


class BandwidthOverflowError(OverflowError):
    """An aggregate left the signed 64-bit range."""


def check_time(value) -> int:
    value = operator.index(value)
    if not INT64_MIN <= value <= INT64_MAX:
        raise ValueError(f"timestamp {value} outside the signed 64-bit range")
    return value


def check_bandwidth(value) -> int:
    value = operator.index(value)
    if not INT64_MIN <= value <= INT64_MAX:
        raise BandwidthOverflowError(f"bandwidth {value} outside the signed 64-bit range")
    return value


class Node:
    __slots__ = ("mu_max", "mu_min", "delta", "tau", "height", "left", "right")

    def __init__(self, tau: int, value: int) -> None:
        self.tau = tau
        self.delta = self.mu_max = self.mu_min = value
        self.height = 1
        self.left: Node | None = None
        self.right: Node | None = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def __repr__(self) -> str:
        kind = "Leaf" if self.left is None else "Node"
        return (f"{kind}(tau={self.tau}, delta={self.delta}, mu_max={self.mu_max}, "
                f"mu_min={self.mu_min}, height={self.height})")


def pull(node: Node) -> None:
    """Recompute an internal node's aggregates and height from its children."""
    left, right = node.left, node.right
    node.delta = left.delta + right.delta
    node.mu_max = max(left.mu_max, left.delta + right.mu_max)
    node.mu_min = min(left.mu_min, left.delta + right.mu_min)
    node.height = 1 + max(left.height, right.height)


# Rotations.  The promoted node inherits the old subtree root's aggregates
# (the covered events are the same); only the demoted nodes are recomputed,
# and they must be computed from the *old* root values first.

def rotate_left(b: Node) -> Node:
    """Right-heavy single rotation: b(A, d(C, E)) -> d(b(A, C), E)."""
    d = b.right
    a, c, e = b.left, d.left, d.right
    d.delta, d.mu_max, d.mu_min = b.delta, b.mu_max, b.mu_min
    b.delta = b.delta - e.delta
    b.mu_max = max(a.mu_max, a.delta + c.mu_max)
    b.mu_min = min(a.mu_min, a.delta + c.mu_min)
    b.right = c
    b.height = 1 + max(a.height, c.height)
    d.left = b
    d.height = 1 + max(b.height, e.height)
    return d


def rotate_right(b: Node) -> Node:
    """Left-heavy single rotation: b(d(A, C), E) -> d(A, b(C, E))."""
    d = b.left
    a, c, e = d.left, d.right, b.right
    d.delta, d.mu_max, d.mu_min = b.delta, b.mu_max, b.mu_min
    b.delta = b.delta - a.delta
    b.mu_max = max(c.mu_max, c.delta + e.mu_max)
    b.mu_min = min(c.mu_min, c.delta + e.mu_min)
    b.left = c
    b.height = 1 + max(c.height, e.height)
    d.right = b
    d.height = 1 + max(a.height, b.height)
    return d


def rotate_right_left(b: Node) -> Node:
    """Right-left double rotation: b(A, f(d(C, E), G)) -> d(b(A, C), f(E, G))."""
    f = b.right
    d = f.left
    a, c, e, g = b.left, d.left, d.right, f.right
    old_delta = b.delta
    d.delta, d.mu_max, d.mu_min = b.delta, b.mu_max, b.mu_min
    f.delta = f.delta - c.delta
    f.mu_max = max(e.mu_max, e.delta + g.mu_max)
    f.mu_min = min(e.mu_min, e.delta + g.mu_min)
    b.delta = old_delta - f.delta
    b.mu_max = max(a.mu_max, a.delta + c.mu_max)
    b.mu_min = min(a.mu_min, a.delta + c.mu_min)
    b.right = c
    f.left = e
    d.left, d.right = b, f
    b.height = 1 + max(a.height, c.height)
    f.height = 1 + max(e.height, g.height)
    d.height = 1 + max(b.height, f.height)
    return d


def rotate_left_right(b: Node) -> Node:
    """Left-right double rotation: b(f(A, d(C, E)), G) -> d(f(A, C), b(E, G))."""
    f = b.left
    d = f.right
    a, c, e, g = f.left, d.left, d.right, b.right
    old_delta = b.delta
    d.delta, d.mu_max, d.mu_min = b.delta, b.mu_max, b.mu_min
    f.delta = f.delta - e.delta
    f.mu_max = max(a.mu_max, a.delta + c.mu_max)
    f.mu_min = min(a.mu_min, a.delta + c.mu_min)
    b.delta = old_delta - f.delta
    b.mu_max = max(e.mu_max, e.delta + g.mu_max)
    b.mu_min = min(e.mu_min, e.delta + g.mu_min)
    f.right = c
    b.left = e
    d.left, d.right = f, b
    f.height = 1 + max(a.height, c.height)
    b.height = 1 + max(e.height, g.height)
    d.height = 1 + max(f.height, b.height)
    return d


def rotate_single(node: Node) -> Node:
    """Single rotation towards the lighter side of ``node``."""
    if node.left.height < node.right.height:
        return rotate_left(node)
    return rotate_right(node)


def rotate_double(node: Node) -> Node:
    """Double rotation towards the lighter side of ``node``."""
    if node.left.height < node.right.height:
        return rotate_right_left(node)
    return rotate_left_right(node)


class TreeStats(NamedTuple):
    event_count: int
    node_count: int
    height: int


class BinSeT:
    """Dynamic set of reservation events answering range max/min queries.

    ``add_event`` merges events at equal times and drops leaves whose value
    reaches zero.  ``max_reserved(start, end)`` and ``min_reserved`` work on
    the half-open span ``[t_first, t_last + 1)``; the value after ``t_last``
    is constant, so that span covers every distinct value.  Callers needing
    the zero baseline before ``t_first`` wrap the tree (see ``Ledger``).

    ``visits`` counts nodes touched by updates and queries.
    """

    def __init__(self, events: Iterable[tuple[int, int]] = ()) -> None:
        self.root: Node | None = None
        self.t_first: int | None = None
        self.t_last: int | None = None
        self.event_count = 0
        self.node_count = 0
        self.visits = 0
        self._abs_total = 0
        self._journal: dict[int, tuple] | None = None
        self._created: list[Node] = []
        self._removed = False
        self._leftmost: int | None = None
        events = list(events)
        if events:
            self.apply(events)

    def __len__(self) -> int:
        return self.event_count

    def __bool__(self) -> bool:
        return self.root is not None

    @property
    def height(self) -> int:
        return 0 if self.root is None else self.root.height

    @property
    def total(self) -> int:
        """Reserved bandwidth after the last event."""
        return 0 if self.root is None else self.root.delta

    def stats(self) -> TreeStats:
        return TreeStats(self.event_count, self.node_count, self.height)

    def events(self) -> Iterator[tuple[int, int]]:
        """Yield stored events ``(time, delta)`` in ascending time."""
        stack: list[Node] = []
        node = self.root
        while stack or node is not None:
            while node is not None:
                stack.append(node)
                node = node.left
            node = stack.pop()
            if node.left is None:
                yield node.tau, node.delta
                node = None
            else:
                node = node.right

    # -- updates ----------------------------------------------------------

    def add_event(self, time: int, delta: int) -> None:
        """Add ``delta`` to the event at ``time``; zero-valued events vanish."""
        self.apply([(time, delta)])

    def apply(self, events: Iterable[tuple[int, int]]) -> None:
        """Add several events atomically.

        Raises ``BandwidthOverflowError`` and leaves the tree untouched if any
        stored value would leave the signed 64-bit range.
        """
        batch = []
        for time, delta in events:
            time, delta = check_time(time), operator.index(delta)
            if delta:
                batch.append((time, delta))
        if not batch:
            return
        # Every stored value is a sum of leaf values, so |value| <= sum |leaf|.
        bound = self._abs_total + sum(abs(d) for _, d in batch)
        if bound <= INT64_MAX:
            for time, delta in batch:
                self._add_one(time, delta)
            return

        saved = (self.root, self.t_first, self.t_last, self.event_count,
                 self.node_count, self._abs_total)
        self._journal, self._created = {}, []
        try:
            for time, delta in batch:
                self._add_one(time, delta)
            touched = [node for node, _ in self._journal.values()] + self._created
            overflow = any(not (INT64_MIN <= v <= INT64_MAX)
                           for node in touched
                           for v in (node.delta, node.mu_max, node.mu_min))
        except BaseException:
            self._rollback(saved)
            raise
        if overflow:
            self._rollback(saved)
            raise BandwidthOverflowError("reserved bandwidth leaves the signed 64-bit range")
        self._journal, self._created = None, []

    def _rollback(self, saved) -> None:
        for node, state in self._journal.values():
            (node.mu_max, node.mu_min, node.delta, node.tau,
             node.height, node.left, node.right) = state
        (self.root, self.t_first, self.t_last, self.event_count,
         self.node_count, self._abs_total) = saved
        self._journal, self._created = None, []

    def _touch(self, node: Node) -> None:
        journal = self._journal
        if journal is not None and id(node) not in journal:
            journal[id(node)] = (node, (node.mu_max, node.mu_min, node.delta, node.tau,
                                        node.height, node.left, node.right))

    def _add_one(self, time: int, delta: int) -> None:
        if self.root is None:
            leaf = Node(time, delta)
            if self._journal is not None:
                self._created.append(leaf)
            self.root = leaf
            self.t_first = self.t_last = time
            self.event_count = self.node_count = 1
            self._abs_total = abs(delta)
            self.visits += 1
            return
        self._removed = False
        self._leftmost = None
        self.root = self._add(self.root, time, delta)
        if self.root is None:
            self.t_first = self.t_last = None
            return
        if self._removed:
            if time == self.t_first:
                self.t_first = self._leftmost
            elif time == self.t_last:
                node = self.root
                while node.right is not None:
                    self.visits += 1
                    node = node.right
                self.t_last = node.tau
        else:
            if time < self.t_first:
                self.t_first = time
            elif time > self.t_last:
                self.t_last = time

    def _add(self, node: Node, time: int, delta: int) -> Node | None:
        self.visits += 1
        if node.left is None:
            if time != node.tau:
                return self._insert(node, time, delta)
            self._touch(node)
            value = node.delta + delta
            self._abs_total += abs(value) - abs(node.delta)
            if value:
                node.delta = node.mu_max = node.mu_min = value
                return node
            self._removed = True
            self.event_count -= 1
            self.node_count -= 1
            return None

        self._touch(node)
        if time < node.tau:
            child = self._add(node.left, time, delta)
            if child is None:
                # The right sibling replaces this node; its first event is tau.
                self._leftmost = node.tau
                self.node_count -= 1
                return node.right
            node.left = child
        else:
            child = self._add(node.right, time, delta)
            if child is None:
                self.node_count -= 1
                return node.left
            node.right = child
            if self._removed and node.tau == time:
                node.tau = self._leftmost

        left, right = node.left, node.right
        node.delta += delta
        node.mu_max = max(left.mu_max, left.delta + right.mu_max)
        node.mu_min = min(left.mu_min, left.delta + right.mu_min)
        return self._rebalance(node)

    def _insert(self, leaf: Node, time: int, delta: int) -> Node:
        new_leaf = Node(time, delta)
        parent = Node(0, 0)
        if leaf.tau < time:
            parent.left, parent.right = leaf, new_leaf
        else:
            parent.left, parent.right = new_leaf, leaf
        parent.tau = parent.right.tau
        pull(parent)
        if self._journal is not None:
            self._created += (new_leaf, parent)
        self.event_count += 1
        self.node_count += 2
        self._abs_total += abs(delta)
        return parent

    def _rebalance(self, node: Node) -> Node:
        left, right = node.left, node.right
        lh, rh = left.height, right.height
        if lh - rh > 1:
            self._touch(left)
            if left.left.height >= left.right.height:
                self.visits += 1
                return rotate_right(node)
            self._touch(left.right)
            self.visits += 2
            return rotate_left_right(node)
        if rh - lh > 1:
            self._touch(right)
            if right.right.height >= right.left.height:
                self.visits += 1
                return rotate_left(node)
            self._touch(right.left)
            self.visits += 2
            return rotate_right_left(node)
        node.height = 1 + (lh if lh > rh else rh)
        return node

    # -- queries ----------------------------------------------------------

    def max_reserved(self, start: int, end: int) -> int:
        """Largest reserved value over ``[start, end)`` inside the event span."""
        lo, hi = self._span(start, end)
        return self._query_max(self.root, lo, hi, start, end)

    def min_reserved(self, start: int, end: int) -> int:
        """Smallest reserved value over ``[start, end)`` inside the event span."""
        lo, hi = self._span(start, end)
        return self._query_min(self.root, lo, hi, start, end)

    def _span(self, start: int, end: int) -> tuple[int, int]:
        if self.root is None:
            raise ValueError("query on an empty tree")
        lo, hi = self.t_first, self.t_last + 1
        if not lo <= start < end <= hi:
            raise ValueError(f"query [{start}, {end}) not inside the event span [{lo}, {hi})")
        return lo, hi

    def _query_max(self, node: Node, lo: int, hi: int, q0: int, q1: int) -> int:
        self.visits += 1
        # A leaf's value is constant over its whole span.
        if node.left is None or (q0 == lo and q1 == hi):
            return node.mu_max
        tau = node.tau
        if q1 <= tau:
            return self._query_max(node.left, lo, tau, q0, q1)
        if tau <= q0:
            return node.left.delta + self._query_max(node.right, tau, hi, q0, q1)
        left_max = self._query_max(node.left, lo, tau, q0, tau)
        right_max = self._query_max(node.right, tau, hi, tau, q1)
        return max(left_max, node.left.delta + right_max)

    def _query_min(self, node: Node, lo: int, hi: int, q0: int, q1: int) -> int:
        self.visits += 1
        if node.left is None or (q0 == lo and q1 == hi):
            return node.mu_min
        tau = node.tau
        if q1 <= tau:
            return self._query_min(node.left, lo, tau, q0, q1)
        if tau <= q0:
            return node.left.delta + self._query_min(node.right, tau, hi, q0, q1)
        left_min = self._query_min(node.left, lo, tau, q0, tau)
        right_min = self._query_min(node.right, tau, hi, tau, q1)
        return min(left_min, node.left.delta + right_min)

    def reserved_at(self, time: int) -> int:
        """Sum of all event deltas at times <= ``time``."""
        total = 0
        node = self.root
        while node is not None and node.left is not None:
            self.visits += 1
            if time < node.tau:
                node = node.left
            else:
                total += node.left.delta
                node = node.right
        if node is not None and node.tau <= time:
            total += node.delta
        return total

    # -- diagnostics ------------------------------------------------------

    def validate(self) -> list[str]:
        """Return a description of every violated invariant (empty if valid)."""
        problems: list[str] = []
        if self.root is None:
            if self.t_first is not None or self.t_last is not None:
                problems.append("empty tree has t_first/t_last set")
            if self.event_count or self.node_count:
                problems.append(f"empty tree reports event_count={self.event_count} "
                                f"node_count={self.node_count}")
            return problems

        times: list[int] = []
        counts = [0]

        def check(node: Node, path: str) -> tuple[int, int] | None:
            """Check a subtree; return its first and last event times."""
            counts[0] += 1
            left, right = node.left, node.right
            if left is None or right is None:
                if left is not right:
                    problems.append(f"{_where(node, path)}: has exactly one child")
                    return None
                times.append(node.tau)
                if node.delta == 0:
                    problems.append(f"{_where(node, path)}: leaf stores zero")
                if not node.mu_max == node.mu_min == node.delta:
                    problems.append(f"{_where(node, path)}: leaf aggregates differ "
                                    f"({node.delta}, {node.mu_max}, {node.mu_min})")
                if node.height != 1:
                    problems.append(f"{_where(node, path)}: leaf height {node.height} != 1")
                if not INT64_MIN <= node.delta <= INT64_MAX:
                    problems.append(f"{_where(node, path)}: leaf value out of 64-bit range")
                return node.tau, node.tau

            left_span = check(left, path + "L")
            right_span = check(right, path + "R")
            if left_span is None or right_span is None:
                return None
            tau = node.tau
            if tau != right_span[0]:
                problems.append(f"{_where(node, path)}: tau != first event of right "
                                f"subtree ({right_span[0]})")
            if not left_span[1] < tau <= right_span[0]:
                problems.append(f"{_where(node, path)}: event times out of order around tau")
            delta = left.delta + right.delta
            mu_max = max(left.mu_max, left.delta + right.mu_max)
            mu_min = min(left.mu_min, left.delta + right.mu_min)
            if node.delta != delta or node.mu_max != mu_max or node.mu_min != mu_min:
                problems.append(f"{_where(node, path)}: aggregate mismatch, stored "
                                f"(delta, mu_max, mu_min)=({node.delta}, {node.mu_max}, "
                                f"{node.mu_min}) but children give ({delta}, {mu_max}, {mu_min})")
            if not (INT64_MIN <= node.delta <= INT64_MAX and INT64_MIN <= node.mu_max <= INT64_MAX
                    and INT64_MIN <= node.mu_min <= INT64_MAX):
                problems.append(f"{_where(node, path)}: aggregate out of 64-bit range")
            lh, rh = left.height, right.height
            if node.height != 1 + max(lh, rh):
                problems.append(f"{_where(node, path)}: stale height {node.height}")
            if lh - rh > 1 or rh - lh > 1:
                problems.append(f"{_where(node, path)}: unbalanced (heights {lh}, {rh})")
            return left_span[0], right_span[1]

        try:
            check(self.root, "")
        except RecursionError:
            return problems + ["tree too deep to check"]
        nodes, leaves = counts[0], len(times)
        if any(a >= b for a, b in zip(times, times[1:])):
            problems.append("leaf times are not strictly increasing in order")
        if leaves != self.event_count:
            problems.append(f"event_count={self.event_count} but tree has {leaves} leaves")
        if nodes != self.node_count:
            problems.append(f"node_count={self.node_count} but tree has {nodes} nodes")
        if nodes != 2 * leaves - 1:
            problems.append(f"{nodes} nodes for {leaves} leaves (expected {2 * leaves - 1})")
        if times and (self.t_first != times[0] or self.t_last != times[-1]):
            problems.append(f"span ({self.t_first}, {self.t_last}) != "
                            f"stored events ({times[0]}, {times[-1]})")
        if self.root.height - 1 > AVL_HEIGHT_FACTOR * math.log2(leaves + 2):
            problems.append(f"height {self.root.height} exceeds the AVL bound for {leaves} leaves")
        return problems


def _where(node: Node, path: str) -> str:
    return f"node at path '{path or 'root'}' (tau={node.tau})"
