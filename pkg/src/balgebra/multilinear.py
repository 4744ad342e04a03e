"""Multilinear maps B^r -> B stored against the matrix-unit basis."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from src.balgebra.matrix import ZERO, BMatrix, basis, to_fraction
from src.errors import DimensionError

# (output (i, j), inputs [(k, l), ...], value), all matrix positions 1-based
SparseTerm = tuple[tuple[int, int], tuple[tuple[int, int], ...], Fraction]


class MultilinearCoefficient:
    """An order-r multilinear map B^r -> B.

    The table is an object array of shape (d², d², ..., d²) with r + 1 axes:
    axis 0 is the output coordinate, axis k the k-th input slot, each
    indexed by the row-major basis E_11, E_12, ..., E_dd. Flattened, the
    first input slot is the most significant.
    """

    __slots__ = ("d", "r", "_t")

    def __init__(self, d: int, r: int, table: np.ndarray):
        if d < 1 or r < 0:
            raise DimensionError(f"Invalid coefficient shape d={d}, r={r}")
        shape = (d * d,) * (r + 1)
        table = np.asarray(table, dtype=object)
        if table.shape != shape:
            raise DimensionError(f"Table shape {table.shape} does not match d={d}, r={r}")
        self.d = d
        self.r = r
        self._t = table

    @classmethod
    def zero(cls, d: int, r: int) -> "MultilinearCoefficient":
        return cls(d, r, np.full((d * d,) * (r + 1), ZERO, dtype=object))

    @classmethod
    def constant(cls, value: BMatrix) -> "MultilinearCoefficient":
        """The order-0 map with value ``value``."""
        return cls(value.d, 0, np.array(value.vec(), dtype=object))

    @classmethod
    def from_matrix(cls, d: int, r: int, rows: Sequence[Sequence[object]]) -> "MultilinearCoefficient":
        """Build from the flattened (d², (d²)^r) layout used in spec files."""
        width = (d * d) ** r
        if len(rows) != d * d or any(len(row) != width for row in rows):
            raise DimensionError(
                f"Dense coefficient must be {d * d}x{width}, got "
                f"{len(rows)}x{len(rows[0]) if rows else 0}"
            )
        flat = np.array([to_fraction(v) for row in rows for v in row], dtype=object)
        return cls(d, r, flat.reshape((d * d,) * (r + 1)))

    @classmethod
    def from_sparse(cls, d: int, r: int, terms: Iterable[SparseTerm]) -> "MultilinearCoefficient":
        table = np.full((d * d,) * (r + 1), ZERO, dtype=object)
        for out, inputs, value in terms:
            if len(inputs) != r:
                raise DimensionError(f"Sparse term has {len(inputs)} inputs, expected {r}")
            index = tuple(_position(d, k, l) for k, l in (out, *inputs))
            table[index] += to_fraction(value)
        return cls(d, r, table)

    @classmethod
    def from_function(
        cls,
        d: int,
        r: int,
        fn: Callable[..., BMatrix],
    ) -> "MultilinearCoefficient":
        """Tabulate a multilinear callable on every basis tuple."""
        units = basis(d)
        table = np.empty((d * d,) * (r + 1), dtype=object)
        for index in product(range(d * d), repeat=r):
            value = fn(*(units[k] for k in index))
            if value.d != d:
                raise DimensionError(f"Callable returned d={value.d}, expected {d}")
            table[(slice(None), *index)] = value.vec()
        return cls(d, r, table)

    def apply(self, args: Sequence[BMatrix]) -> BMatrix:
        """Evaluate at ``args`` by expanding each argument in the matrix-unit basis.

        Raises:
            DimensionError: On arity or dimension mismatch
        """
        if len(args) != self.r:
            raise DimensionError(f"Order-{self.r} map applied to {len(args)} arguments")
        table = self._t
        for arg in reversed(args):
            if arg.d != self.d:
                raise DimensionError(f"Argument has d={arg.d}, expected {self.d}")
            terms = arg.nonzero_items()
            if not terms:
                return BMatrix.zero(self.d)
            if len(terms) == 1 and terms[0][1] == 1:
                table = table[..., terms[0][0]]
            else:
                table = sum(value * table[..., k] for k, value in terms)
        return BMatrix.from_vec(self.d, table)

    def __call__(self, *args: BMatrix) -> BMatrix:
        return self.apply(args)

    def to_matrix(self) -> list[list[Fraction]]:
        """Flattened (d², (d²)^r) layout."""
        return self._t.reshape(self.d * self.d, -1).tolist()

    def to_sparse(self) -> list[SparseTerm]:
        terms = []
        for index in zip(*np.nonzero(self._t != 0)):
            positions = [_entry(self.d, int(k)) for k in index]
            terms.append((positions[0], tuple(positions[1:]), self._t[index]))
        return terms

    def first_nonzero(self) -> Optional[tuple[tuple[int, ...], BMatrix]]:
        """First basis-input tuple (row-major) with nonzero value, and that value."""
        if self.r == 0:
            value = BMatrix.from_vec(self.d, self._t)
            return None if value.is_zero() else ((), value)
        flat = self._t.reshape(self.d * self.d, -1)
        for column in range(flat.shape[1]):
            if any(flat[:, column]):
                index = np.unravel_index(column, (self.d * self.d,) * self.r)
                return tuple(int(k) for k in index), BMatrix.from_vec(self.d, flat[:, column])
        return None

    def is_zero(self) -> bool:
        return not np.any(self._t != 0)

    def scale(self, factor: object) -> "MultilinearCoefficient":
        return MultilinearCoefficient(self.d, self.r, self._t * to_fraction(factor))

    def _check(self, other: "MultilinearCoefficient") -> None:
        if (self.d, self.r) != (other.d, other.r):
            raise DimensionError(
                f"Coefficient mismatch: (d={self.d}, r={self.r}) vs (d={other.d}, r={other.r})"
            )

    def __add__(self, other: "MultilinearCoefficient") -> "MultilinearCoefficient":
        self._check(other)
        return MultilinearCoefficient(self.d, self.r, self._t + other._t)

    def __sub__(self, other: "MultilinearCoefficient") -> "MultilinearCoefficient":
        self._check(other)
        return MultilinearCoefficient(self.d, self.r, self._t - other._t)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultilinearCoefficient):
            return NotImplemented
        return (self.d, self.r) == (other.d, other.r) and bool(np.all(self._t == other._t))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"MultilinearCoefficient(d={self.d}, r={self.r}, nnz={int(np.count_nonzero(self._t != 0))})"


def _position(d: int, k: int, l: int) -> int:
    if not (1 <= k <= d and 1 <= l <= d):
        raise DimensionError(f"Matrix position ({k}, {l}) outside 1..{d}")
    return (k - 1) * d + (l - 1)


def _entry(d: int, index: int) -> tuple[int, int]:
    return index // d + 1, index % d + 1
