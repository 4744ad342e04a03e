"""Kreweras complement and the alternating union embedding NC(n) -> NC(2n)."""

from __future__ import annotations

from functools import lru_cache

from src.lattice.partition import SetPartition, require_noncrossing


@lru_cache(maxsize=None)
def kreweras(p: SetPartition) -> SetPartition:
    """Kreweras complement of a noncrossing partition.

    Positions are interleaved as 1, 1', 2, 2', ..., n, n' and the complement
    is the largest partition of the primed copy keeping the union
    noncrossing. As permutations (blocks read as increasing cycles) it is
    p^{-1} composed with the long cycle (1 2 ... n).
    """
    require_noncrossing(p)
    n = p.n
    inverse = [0] * (n + 1)
    for block in p.blocks:
        for i, element in enumerate(block):
            inverse[element] = block[i - 1]

    image = [0] * (n + 1)
    for element in range(1, n + 1):
        image[element] = inverse[element % n + 1]

    blocks = []
    visited = [False] * (n + 1)
    for start in range(1, n + 1):
        if visited[start]:
            continue
        cycle = []
        current = start
        while not visited[current]:
            visited[current] = True
            cycle.append(current)
            current = image[current]
        blocks.append(cycle)
    return SetPartition(n, blocks)


@lru_cache(maxsize=None)
def alternating_union(p: SetPartition) -> SetPartition:
    """p on the odd positions of {1..2n} and Kr(p) on the even positions."""
    complement = kreweras(p)
    blocks = [[2 * k - 1 for k in block] for block in p.blocks]
    blocks += [[2 * k for k in block] for block in complement.blocks]
    return SetPartition(2 * p.n, blocks)
