"""Bandwidth reservations with O(log n) reserve, free and range max/min queries."""

from .core import BandwidthOverflowError, BinSeT, Node
from .ledger import Interval, Ledger, ReservationNotFound, ReservationRecord
from .oracle import OracleLedger
from .prefixsum import PrefixSumArray

__all__ = [
    "BandwidthOverflowError",
    "BinSeT",
    "Interval",
    "Ledger",
    "Node",
    "OracleLedger",
    "PrefixSumArray",
    "ReservationNotFound",
    "ReservationRecord",
]
