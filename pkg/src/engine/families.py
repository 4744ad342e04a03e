"""Truncated joint B-valued distributions and the words they are evaluated on."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from types import MappingProxyType
from typing import ClassVar, Iterator, Mapping, Optional, Sequence, TypeVar

from src.balgebra.matrix import BMatrix
from src.balgebra.multilinear import MultilinearCoefficient
from src.errors import ArgumentError, DimensionError, StructuralError, TruncationError

Indices = tuple[int, ...]
SpecT = TypeVar("SpecT", bound="JointSpec")


class JointSpec:
    """Coefficient table indexed by variable tuples (i_1, ..., i_n), 1 ≤ n ≤ N.

    The coefficient at a tuple of length n is an order n-1 multilinear map.
    Absent tuples, and tuples whose map is zero, denote the zero map; zero
    maps are dropped on construction so that equal distributions compare
    equal.
    """

    kind: ClassVar[str] = "joint"

    def __init__(
        self,
        s: int,
        d: int,
        N: int,
        table: Optional[Mapping[Sequence[int], MultilinearCoefficient]] = None,
    ):
        if s < 1 or d < 1 or N < 1:
            raise StructuralError(f"Invalid spec shape s={s}, d={d}, N={N}")
        self.s = s
        self.d = d
        self.N = N

        entries: dict[Indices, MultilinearCoefficient] = {}
        for raw, coefficient in (table or {}).items():
            indices = tuple(raw)
            self._validate_key(indices)
            if coefficient.d != d or coefficient.r != len(indices) - 1:
                raise DimensionError(
                    f"Coefficient at {indices} has (d={coefficient.d}, r={coefficient.r}), "
                    f"expected (d={d}, r={len(indices) - 1})"
                )
            if not coefficient.is_zero():
                entries[indices] = coefficient
        self._table = MappingProxyType(dict(sorted(entries.items(), key=lambda kv: _key(kv[0]))))

    def _validate_key(self, indices: Indices) -> None:
        if not 1 <= len(indices) <= self.N:
            raise StructuralError(f"Tuple {indices} has order outside 1..{self.N}")
        for i in indices:
            if not isinstance(i, int) or not 1 <= i <= self.s:
                raise ArgumentError(f"Variable index {i!r} in {indices} outside 1..{self.s}")

    @property
    def table(self) -> Mapping[Indices, MultilinearCoefficient]:
        return self._table

    def get(self, indices: Sequence[int]) -> Optional[MultilinearCoefficient]:
        """Stored coefficient, or None for the zero map."""
        return self._table.get(tuple(indices))

    def coefficient(self, indices: Sequence[int]) -> MultilinearCoefficient:
        """Coefficient at ``indices``, materializing zero maps."""
        indices = tuple(indices)
        self._validate_key(indices)
        found = self._table.get(indices)
        return found if found is not None else MultilinearCoefficient.zero(self.d, len(indices) - 1)

    def tuples(self, n: int) -> Iterator[Indices]:
        """Every index tuple of order n, lexicographically."""
        return product(range(1, self.s + 1), repeat=n)

    def items(self) -> Iterator[tuple[Indices, MultilinearCoefficient]]:
        return iter(self._table.items())

    def require_order(self, order: int) -> None:
        if order > self.N:
            raise TruncationError(
                f"Order {order} requested from a spec truncated at N={self.N}",
                required=order,
                available=self.N,
            )

    def _rebuild(self: SpecT, s: int, N: int, table: Mapping[Indices, MultilinearCoefficient]) -> SpecT:
        return type(self)(s, self.d, N, table)

    def truncate(self: SpecT, N: int) -> SpecT:
        self.require_order(N)
        return self._rebuild(self.s, N, {k: v for k, v in self._table.items() if len(k) <= N})

    def restrict(self: SpecT, variables: Sequence[int]) -> SpecT:
        """Keep tuples over ``variables`` only, relabeling variables[j] as j + 1."""
        relabel = {}
        for position, var in enumerate(variables, start=1):
            if not 1 <= var <= self.s or var in relabel:
                raise ArgumentError(f"Invalid variable selection {list(variables)}")
            relabel[var] = position
        table = {
            tuple(relabel[i] for i in key): value
            for key, value in self._table.items()
            if all(i in relabel for i in key)
        }
        return self._rebuild(len(variables), self.N, table)

    def with_entry(self: SpecT, indices: Sequence[int], coefficient: MultilinearCoefficient) -> SpecT:
        """Copy with the coefficient at ``indices`` replaced."""
        table = dict(self._table)
        table[tuple(indices)] = coefficient
        return self._rebuild(self.s, self.N, table)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JointSpec):
            return NotImplemented
        return (
            self.kind == other.kind
            and (self.s, self.d, self.N) == (other.s, other.d, other.N)
            and dict(self._table) == dict(other._table)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(s={self.s}, d={self.d}, N={self.N}, "
            f"entries={len(self._table)})"
        )


class JointCumulantSpec(JointSpec):
    """Joint B-valued cumulants k_n(x_{i_1}, b_2 x_{i_2}, ..., b_n x_{i_n})."""

    kind = "cumulant"


class JointMomentSpec(JointSpec):
    """Joint B-valued moments φ(x_{i_1} b_2 x_{i_2} ... b_n x_{i_n})."""

    kind = "moment"


def _key(indices: Indices) -> tuple[int, Indices]:
    return len(indices), indices


@dataclass(frozen=True)
class Word:
    """The tensor word x_{i_1} ⊗ L_2 x_{i_2} ⊗ ... ⊗ L_n x_{i_n}, followed by ``tail``."""

    slots: tuple[tuple[BMatrix, int], ...]
    tail: BMatrix

    def __post_init__(self) -> None:
        if not self.slots:
            raise StructuralError("A word needs at least one slot")
        d = self.tail.d
        for coefficient, var in self.slots:
            if coefficient.d != d:
                raise DimensionError(f"Word mixes d={coefficient.d} and d={d}")
            if not isinstance(var, int) or var < 1:
                raise ArgumentError(f"Invalid variable index {var!r} in word")

    @classmethod
    def of(
        cls,
        indices: Sequence[int],
        args: Sequence[BMatrix] = (),
        d: Optional[int] = None,
        tail: Optional[BMatrix] = None,
    ) -> "Word":
        """x_{i_1}, args[0] x_{i_2}, ..., args[n-2] x_{i_n}; missing args are 1_B."""
        if d is None:
            d = args[0].d if args else (tail.d if tail is not None else 1)
        one = BMatrix.identity(d)
        if len(args) > len(indices) - 1:
            raise DimensionError(f"{len(args)} B-arguments for a word of length {len(indices)}")
        lefts = [one, *args, *([one] * (len(indices) - 1 - len(args)))]
        return cls(tuple(zip(lefts, indices)), tail if tail is not None else one)

    @property
    def indices(self) -> Indices:
        return tuple(var for _, var in self.slots)

    @property
    def lefts(self) -> tuple[BMatrix, ...]:
        return tuple(coefficient for coefficient, _ in self.slots)

    def __len__(self) -> int:
        return len(self.slots)
