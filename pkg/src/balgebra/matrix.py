"""Exact-rational d×d matrices modeling the base algebra B = M_d."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Literal, Sequence, Union

import numpy as np

from src.errors import ArgumentError, DimensionError

Scalar = Union[int, Fraction]
ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(value: object) -> Fraction:
    """Convert an exact scalar (int, Fraction, "p/q" string) to Fraction.

    Floats are rejected so that nothing inexact can enter a computation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ArgumentError(f"Booleans are not scalars: {value!r}")
    if isinstance(value, (int, Rational, np.integer)):
        return Fraction(int(value)) if isinstance(value, np.integer) else Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError as exc:
            raise ArgumentError(f"Cannot parse rational {value!r}") from exc
    raise ArgumentError(f"Inexact or unsupported scalar {value!r} ({type(value).__name__})")


class BMatrix:
    """An element of B = M_d with Fraction entries.

    Instances are immutable; arithmetic returns new matrices.
    """

    __slots__ = ("_a", "_hash")

    def __init__(self, entries: Union[Sequence[Sequence[object]], np.ndarray]):
        rows = [list(row) for row in entries]
        d = len(rows)
        if d == 0 or any(len(row) != d for row in rows):
            raise DimensionError(f"B elements must be square and nonempty, got {len(rows)} rows")
        array = np.empty((d, d), dtype=object)
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                array[i, j] = to_fraction(value)
        self._a = array
        self._hash: int | None = None

    @classmethod
    def _wrap(cls, array: np.ndarray) -> "BMatrix":
        obj = cls.__new__(cls)
        obj._a = array
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, d: int) -> "BMatrix":
        return _identity(d)

    @classmethod
    def zero(cls, d: int) -> "BMatrix":
        return _zero(d)

    @classmethod
    def unit(cls, d: int, k: int, l: int) -> "BMatrix":
        """Matrix unit E_{kl} (1-based)."""
        if not (1 <= k <= d and 1 <= l <= d):
            raise DimensionError(f"E_{{{k}{l}}} does not exist at d={d}")
        return basis(d)[(k - 1) * d + (l - 1)]

    @classmethod
    def scalar(cls, d: int, value: Scalar) -> "BMatrix":
        return _identity(d).scale(value)

    @classmethod
    def from_vec(cls, d: int, values: Iterable[object]) -> "BMatrix":
        """Build from the row-major coordinate vector against E_11, E_12, ..., E_dd."""
        flat = list(values)
        if len(flat) != d * d:
            raise DimensionError(f"Expected {d * d} coordinates, got {len(flat)}")
        array = np.empty((d, d), dtype=object)
        array.flat[:] = [to_fraction(v) for v in flat]
        return cls._wrap(array)

    @property
    def d(self) -> int:
        return self._a.shape[0]

    def vec(self) -> tuple[Fraction, ...]:
        """Row-major coordinates against the matrix-unit basis."""
        return tuple(self._a.flat)

    def nonzero_items(self) -> list[tuple[int, Fraction]]:
        """(basis index, coordinate) pairs with nonzero coordinate."""
        return [(i, v) for i, v in enumerate(self._a.flat) if v]

    def entries(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(row) for row in self._a)

    def entry(self, i: int, j: int) -> Fraction:
        """Entry (i, j), 1-based."""
        return self._a[i - 1, j - 1]

    def is_zero(self) -> bool:
        return not any(self._a.flat)

    def _check(self, other: "BMatrix") -> None:
        if other._a.shape != self._a.shape:
            raise DimensionError(f"Dimension mismatch: d={self.d} vs d={other.d}")

    def __add__(self, other: "BMatrix") -> "BMatrix":
        if not isinstance(other, BMatrix):
            return NotImplemented
        self._check(other)
        return BMatrix._wrap(self._a + other._a)

    def __sub__(self, other: "BMatrix") -> "BMatrix":
        if not isinstance(other, BMatrix):
            return NotImplemented
        self._check(other)
        return BMatrix._wrap(self._a - other._a)

    def __neg__(self) -> "BMatrix":
        return BMatrix._wrap(-self._a)

    def __matmul__(self, other: "BMatrix") -> "BMatrix":
        if not isinstance(other, BMatrix):
            return NotImplemented
        self._check(other)
        return BMatrix._wrap(self._a @ other._a)

    def __mul__(self, other: object) -> "BMatrix":
        if isinstance(other, BMatrix):
            return self @ other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: object) -> "BMatrix":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def scale(self, factor: object) -> "BMatrix":
        c = to_fraction(factor)
        return BMatrix._wrap(self._a * c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BMatrix):
            return NotImplemented
        return self._a.shape == other._a.shape and bool(np.all(self._a == other._a))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.vec())
        return self._hash

    def __repr__(self) -> str:
        rows = "; ".join(" ".join(str(v) for v in row) for row in self._a)
        return f"BMatrix([{rows}])"


@lru_cache(maxsize=None)
def _identity(d: int) -> BMatrix:
    if d < 1:
        raise DimensionError(f"Dimension must be positive, got {d}")
    array = np.full((d, d), ZERO, dtype=object)
    for i in range(d):
        array[i, i] = ONE
    return BMatrix._wrap(array)


@lru_cache(maxsize=None)
def _zero(d: int) -> BMatrix:
    if d < 1:
        raise DimensionError(f"Dimension must be positive, got {d}")
    return BMatrix._wrap(np.full((d, d), ZERO, dtype=object))


@lru_cache(maxsize=None)
def basis(d: int) -> tuple[BMatrix, ...]:
    """Matrix units E_11, E_12, ..., E_dd in row-major order."""
    units = []
    for index in range(d * d):
        array = np.full((d, d), ZERO, dtype=object)
        array.flat[index] = ONE
        units.append(BMatrix._wrap(array))
    return tuple(units)


def b_arith(
    op: Literal["add", "mul", "scale", "eq"],
    x: BMatrix,
    y: Union[BMatrix, Scalar],
) -> Union[BMatrix, bool]:
    """Exact matrix arithmetic by operation name.

    Raises:
        DimensionError: If x and y have different dimensions
        ArgumentError: If op is unknown or y has the wrong kind
    """
    if op == "scale":
        if isinstance(y, BMatrix):
            raise ArgumentError("scale expects a rational factor")
        return x.scale(y)
    if not isinstance(y, BMatrix):
        raise ArgumentError(f"{op} expects two B elements")
    if op == "add":
        return x + y
    if op == "mul":
        return x @ y
    if op == "eq":
        x._check(y)
        return x == y
    raise ArgumentError(f"Unknown operation {op!r}")
