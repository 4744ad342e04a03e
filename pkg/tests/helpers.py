"""Builders shared by the test modules."""

from fractions import Fraction
from typing import Mapping, Sequence

from src.balgebra.matrix import BMatrix
from src.balgebra.multilinear import MultilinearCoefficient
from src.engine.families import JointCumulantSpec


def product_of(args: Sequence[BMatrix], d: int = 1) -> BMatrix:
    result = BMatrix.identity(d)
    for arg in args:
        result = result @ arg
    return result


def scalar_spec(values: Mapping[tuple[int, ...], object], s: int = 1, N: int = 4) -> JointCumulantSpec:
    """d = 1 cumulant spec from {indices: rational}; each map is c · b_2 ⋯ b_n."""
    table = {}
    for indices, value in values.items():
        c = Fraction(value)
        table[indices] = MultilinearCoefficient.from_function(
            1, len(indices) - 1, lambda *args, c=c: product_of(args).scale(c)
        )
    return JointCumulantSpec(s, 1, N, table)


def m2(a, b, c, d) -> BMatrix:
    return BMatrix([[a, b], [c, d]])
