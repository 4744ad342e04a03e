"""Enumeration of the noncrossing partition lattice NC(n)."""

from __future__ import annotations

import logging
from functools import lru_cache
from itertools import combinations, product
from typing import Optional

from config.settings import get_settings
from src.errors import RangeError
from src.lattice.partition import Blocks, SetPartition

logger = logging.getLogger(__name__)


def _check_range(n: int, max_n: Optional[int]) -> None:
    cap = max_n if max_n is not None else get_settings().lattice.max_n
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= cap:
        raise RangeError(f"n must be an integer in 1..{cap}, got {n!r}")


@lru_cache(maxsize=None)
def _segment_partitions(length: int) -> tuple[Blocks, ...]:
    """All noncrossing partitions of the offsets 0..length-1, in no particular order.

    The block holding offset 0 splits the rest into independent gaps; each gap
    is partitioned recursively and shifted into place.
    """
    if length == 0:
        return ((),)

    results: list[Blocks] = []
    rest = range(1, length)
    for size in range(length):
        for chosen in combinations(rest, size):
            block = (0, *chosen)
            bounds = list(zip(block, (*block[1:], length)))
            gap_options = []
            for low, high in bounds:
                gap = high - low - 1
                shifted = tuple(
                    tuple(tuple(x + low + 1 for x in b) for b in blocks)
                    for blocks in _segment_partitions(gap)
                )
                gap_options.append(shifted)
            for choice in product(*gap_options):
                blocks = [block]
                for part in choice:
                    blocks.extend(part)
                results.append(tuple(blocks))
    return tuple(results)


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[SetPartition, ...]:
    partitions = sorted(
        SetPartition(n, [[x + 1 for x in block] for block in blocks])
        for blocks in _segment_partitions(n)
    )
    logger.debug("Enumerated %d noncrossing partitions of %d", len(partitions), n)
    return tuple(partitions)


def enumerate_nc(n: int, max_n: Optional[int] = None) -> tuple[SetPartition, ...]:
    """Return NC(n) in canonical form, lexicographically ordered by block lists.

    Args:
        n: Ground set size
        max_n: Safety cap; defaults to the configured ``lattice.max_n``

    Returns:
        Tuple of all noncrossing partitions of {1..n}

    Raises:
        RangeError: If n is not in 1..max_n
    """
    _check_range(n, max_n)
    return _enumerate(n)


def enumerate_nc_even(n: int, max_n: Optional[int] = None) -> tuple[SetPartition, ...]:
    """Return NC^(even)(n): noncrossing partitions whose blocks all have even size."""
    _check_range(n, max_n)
    if n % 2:
        raise RangeError(f"Even-block partitions need an even ground set, got n={n}")
    return tuple(p for p in _enumerate(n) if all(len(b) % 2 == 0 for b in p.blocks))


def enumerate_nc_odd(n: int, max_n: Optional[int] = None) -> tuple[SetPartition, ...]:
    """Return NC^(odd)(n): noncrossing partitions with at least one odd block."""
    _check_range(n, max_n)
    return tuple(p for p in _enumerate(n) if any(len(b) % 2 for b in p.blocks))
