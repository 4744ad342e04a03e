"""Set partitions of {1..n} in canonical form."""

from __future__ import annotations

from typing import Iterable, Sequence, Union

from src.errors import DimensionError, DomainError, StructuralError

Blocks = tuple[tuple[int, ...], ...]


class SetPartition:
    """A partition of {1..n} into blocks.

    Blocks are stored ascending and ordered by their minimum element, so two
    partitions are equal exactly when their canonical forms agree.
    """

    __slots__ = ("n", "blocks", "_labels", "_pair_mask", "_hash")

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]):
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise StructuralError(f"Ground set size must be a positive integer, got {n!r}")

        canonical = []
        seen: set[int] = set()
        for raw in blocks:
            block = tuple(sorted(raw))
            if not block:
                raise StructuralError("Partition contains an empty block")
            for element in block:
                if not isinstance(element, int) or not 1 <= element <= n:
                    raise StructuralError(f"Element {element!r} is outside 1..{n}")
                if element in seen:
                    raise StructuralError(f"Element {element} appears in more than one block")
                seen.add(element)
            canonical.append(block)
        if len(seen) != n:
            missing = sorted(set(range(1, n + 1)) - seen)
            raise StructuralError(f"Blocks do not cover 1..{n}; missing {missing}")

        canonical.sort()
        self.n = n
        self.blocks: Blocks = tuple(canonical)

        labels = [0] * (n + 1)
        for index, block in enumerate(self.blocks):
            for element in block:
                labels[element] = index
        self._labels = tuple(labels)

        mask = 0
        for block in self.blocks:
            for i, low in enumerate(block):
                for high in block[i + 1 :]:
                    mask |= 1 << pair_bit(low, high)
        self._pair_mask = mask
        self._hash = hash((n, self.blocks))

    @classmethod
    def bottom(cls, n: int) -> "SetPartition":
        """0_n, the partition into singletons."""
        return cls(n, [[i] for i in range(1, n + 1)])

    @classmethod
    def top(cls, n: int) -> "SetPartition":
        """1_n, the partition with a single block."""
        return cls(n, [range(1, n + 1)])

    @classmethod
    def pairing(cls, n: int) -> "SetPartition":
        """{(1,2),(3,4),...,(2n-1,2n)} on {1..2n}."""
        return cls(2 * n, [[2 * k - 1, 2 * k] for k in range(1, n + 1)])

    def block_of(self, element: int) -> tuple[int, ...]:
        """Return the block containing ``element``."""
        return self.blocks[self._labels[element]]

    def same_block(self, a: int, b: int) -> bool:
        return self._labels[a] == self._labels[b]

    @property
    def pair_mask(self) -> int:
        """Bitmask of the pairs i < j lying in a common block."""
        return self._pair_mask

    def to_lists(self) -> list[list[int]]:
        return [list(block) for block in self.blocks]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetPartition):
            return NotImplemented
        return self.n == other.n and self.blocks == other.blocks

    def __lt__(self, other: "SetPartition") -> bool:
        return (self.n, self.blocks) < (other.n, other.blocks)

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.blocks)

    def __repr__(self) -> str:
        inner = ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"SetPartition({self.n}, {{{inner}}})"


PartitionLike = Union[SetPartition, Sequence[Sequence[int]]]


def pair_bit(low: int, high: int) -> int:
    """Bit position of the pair low < high (1-based) in a pair mask."""
    return (high - 1) * (high - 2) // 2 + (low - 1)


def as_partition(p: PartitionLike, n: int | None = None) -> SetPartition:
    """Coerce a block list into a SetPartition, inferring n from the largest element."""
    if isinstance(p, SetPartition):
        return p
    blocks = [list(block) for block in p]
    if n is None:
        n = max((max(block) for block in blocks if block), default=0)
    return SetPartition(n, blocks)


def is_noncrossing(p: PartitionLike) -> bool:
    """Return True iff no two blocks cross.

    Two blocks V, W cross when a < b < c < d with a, c in V and b, d in W.
    Equivalently every element strictly between consecutive members of a
    block belongs to a block nested strictly inside that gap.
    """
    p = as_partition(p)
    for block in p.blocks:
        for low, high in zip(block, block[1:]):
            for element in range(low + 1, high):
                other = p.block_of(element)
                if other[0] < low or other[-1] > high:
                    return False
    return True


def leq_refine(p: SetPartition, q: SetPartition) -> bool:
    """True iff every block of p lies inside a block of q."""
    if p.n != q.n:
        raise DimensionError(f"Cannot compare partitions of {p.n} and {q.n} elements")
    return p.pair_mask & ~q.pair_mask == 0


def join_nc(p: SetPartition, q: SetPartition) -> SetPartition:
    """Finest noncrossing partition coarser than both p and q."""
    if p.n != q.n:
        raise DimensionError(f"Cannot join partitions of {p.n} and {q.n} elements")

    parent = list(range(p.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        parent[find(a)] = find(b)

    for block in (*p.blocks, *q.blocks):
        for element in block[1:]:
            union(block[0], element)

    while True:
        groups: dict[int, list[int]] = {}
        for element in range(1, p.n + 1):
            groups.setdefault(find(element), []).append(element)
        current = SetPartition(p.n, groups.values())
        crossing = _first_crossing(current)
        if crossing is None:
            return current
        union(*crossing)


def _first_crossing(p: SetPartition) -> tuple[int, int] | None:
    for block in p.blocks:
        for low, high in zip(block, block[1:]):
            for element in range(low + 1, high):
                other = p.block_of(element)
                if other[0] < low or other[-1] > high:
                    return block[0], other[0]
    return None


def require_noncrossing(p: SetPartition) -> None:
    """Raise DomainError unless p is noncrossing."""
    if not is_noncrossing(p):
        raise DomainError(f"{p!r} is crossing")
