"""Möbius function of the noncrossing partition lattice."""

from __future__ import annotations

import logging
import threading

import numpy as np

from src.errors import DimensionError, OrderError
from src.lattice.enumeration import enumerate_nc
from src.lattice.partition import SetPartition, require_noncrossing

logger = logging.getLogger(__name__)


class MobiusTable:
    """Per-n memo of μ(·, q) columns over NC(n).

    Columns are filled by the recursion μ(q, q) = 1 and
    Σ_{r ≤ t ≤ q} μ(t, q) = 0 for r < q, processing coarser partitions
    first. Refinement tests run on pair bitmasks.
    """

    def __init__(self, n: int):
        self.n = n
        self.partitions = enumerate_nc(n)
        self.index = {p: i for i, p in enumerate(self.partitions)}
        dtype = np.uint64 if n * (n - 1) // 2 <= 64 else object
        self._masks = np.array([p.pair_mask for p in self.partitions], dtype=dtype)
        self._sizes = np.array([len(p) for p in self.partitions])
        self._columns: dict[int, np.ndarray] = {}
        self._lock = threading.Lock()

    def _above(self, i: int) -> np.ndarray:
        return (self._masks[i] & ~self._masks) == 0

    def _below(self, j: int) -> np.ndarray:
        return (self._masks & ~self._masks[j]) == 0

    def column(self, j: int) -> np.ndarray:
        """μ(r, partitions[j]) for every r (zero where r is not below)."""
        with self._lock:
            cached = self._columns.get(j)
            if cached is not None:
                return cached

            below = self._below(j)
            members = np.flatnonzero(below)
            members = members[np.argsort(self._sizes[members], kind="stable")]

            mu = np.zeros(len(self.partitions), dtype=np.int64)
            mu[j] = 1
            for r in members:
                if r == j:
                    continue
                interval = np.flatnonzero(self._above(r) & below)
                mu[r] = -int(mu[interval].sum())
            self._columns[j] = mu
            logger.debug("Möbius column for %r filled (%d members)", self.partitions[j], len(members))
            return mu

    def value(self, p: SetPartition, q: SetPartition) -> int:
        return int(self.column(self.index[q])[self.index[p]])

    def to_top(self) -> tuple[int, ...]:
        """μ(π, 1_n) aligned with enumerate_nc(n)."""
        column = self.column(self.index[SetPartition.top(self.n)])
        return tuple(int(v) for v in column)


_tables: dict[int, MobiusTable] = {}
_tables_lock = threading.Lock()


def mobius_table(n: int) -> MobiusTable:
    """Return the shared table for NC(n), building it on first use."""
    enumerate_nc(n)
    with _tables_lock:
        table = _tables.get(n)
        if table is None:
            table = _tables[n] = MobiusTable(n)
        return table


def mobius_nc(p: SetPartition, q: SetPartition) -> int:
    """Möbius function μ(p, q) of the interval [p, q] in NC(n).

    Raises:
        DimensionError: If p and q live on different ground sets
        DomainError: If either partition is crossing
        OrderError: If p is not below q
    """
    if p.n != q.n:
        raise DimensionError(f"Partitions of {p.n} and {q.n} elements are not comparable")
    require_noncrossing(p)
    require_noncrossing(q)
    if p.pair_mask & ~q.pair_mask:
        raise OrderError(f"{p!r} is not a refinement of {q!r}")
    return mobius_table(p.n).value(p, q)


def mobius_to_top(n: int) -> tuple[int, ...]:
    """μ(π, 1_n) for every π in enumerate_nc(n), in the same order."""
    return mobius_table(n).to_top()
