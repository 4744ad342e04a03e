"""Boxed convolution of B-formal series and the Zeta / Möbius transforms."""

from __future__ import annotations

import logging
from typing import Literal, Optional

from src.balgebra.matrix import BMatrix
from src.balgebra.multilinear import MultilinearCoefficient
from src.constructions.free import free_union
from src.engine.families import Indices, JointCumulantSpec
from src.engine.transforms import Term, evaluate_terms, lattice_terms, lattice_transform
from src.errors import ArgumentError, DimensionError
from src.lattice.enumeration import enumerate_nc
from src.lattice.kreweras import alternating_union

logger = logging.getLogger(__name__)

GArgs = Literal["trivial", "symm"]


def _require_series(*specs: JointCumulantSpec) -> None:
    for spec in specs:
        if not isinstance(spec, JointCumulantSpec) or spec.s != 1:
            raise ArgumentError("Series operations need single-variable cumulant specs")


def zeta_transform(f: JointCumulantSpec) -> JointCumulantSpec:
    """f ⊛ Zeta: order-n coefficient Σ_{π ∈ NC(n)} f̂(π)."""
    _require_series(f)
    return lattice_transform(f, "zeta", JointCumulantSpec)


def mobius_transform(f: JointCumulantSpec) -> JointCumulantSpec:
    """f ⊛ Mob: order-n coefficient Σ_{π ∈ NC(n)} μ(π, 1_n) f̂(π)."""
    _require_series(f)
    return lattice_transform(f, "mobius", JointCumulantSpec)


def _alternating_terms(f: JointCumulantSpec, g: JointCumulantSpec, n: int) -> list[Term]:
    union = free_union(f, g)
    partitions = [alternating_union(p) for p in enumerate_nc(n)]
    return lattice_terms(union, (1, 2) * n, "zeta", partitions)


def boxed_convolution(
    f: JointCumulantSpec,
    g: JointCumulantSpec,
    g_args: GArgs = "trivial",
    b0: Optional[BMatrix] = None,
) -> JointCumulantSpec:
    """f ⊛ g with the even (g) slots carrying fixed B-arguments.

    The order-n coefficient at (b_2, ..., b_n) is
    Σ_{π ∈ NC(n)} (f ⊕ g)(π ∪ Kr(π)) on x, y, b_2 x, β y, ..., b_n x, β y
    with β = 1_B (trivial) or β = b0 (symm).

    Raises:
        DimensionError: If f, g (and b0) disagree on d
        ArgumentError: On an unknown g_args mode or a missing b0
    """
    _require_series(f, g)
    if f.d != g.d:
        raise DimensionError(f"Cannot convolve series over d={f.d} and d={g.d}")
    if g_args == "trivial":
        beta = BMatrix.identity(f.d)
    elif g_args == "symm":
        if b0 is None:
            raise ArgumentError("symm arguments need b0")
        if b0.d != f.d:
            raise DimensionError(f"b0 has d={b0.d}, series have d={f.d}")
        beta = b0
    else:
        raise ArgumentError(f"Unknown g_args mode {g_args!r}; use boxed_convolution_full for full")

    one = BMatrix.identity(f.d)
    N = min(f.N, g.N)
    table: dict[Indices, MultilinearCoefficient] = {}
    for n in range(1, N + 1):
        terms = _alternating_terms(f, g, n)
        if not terms:
            continue

        def evaluate(*args: BMatrix) -> BMatrix:
            lefts = [one, one]
            for arg in args:
                lefts += [arg, beta]
            return evaluate_terms(terms, lefts, one)

        coefficient = MultilinearCoefficient.from_function(f.d, n - 1, evaluate)
        if not coefficient.is_zero():
            table[(1,) * n] = coefficient
    logger.debug("Boxed convolution (%s) built to order %d", g_args, N)
    return JointCumulantSpec(1, f.d, N, table)


def boxed_convolution_full(f: JointCumulantSpec, g: JointCumulantSpec) -> dict[int, MultilinearCoefficient]:
    """f ⊛ g keeping the g-side arguments free.

    Returns:
        Order n -> map of order 2n-2 taking (b_2, β_2, ..., b_n, β_n)
    """
    _require_series(f, g)
    if f.d != g.d:
        raise DimensionError(f"Cannot convolve series over d={f.d} and d={g.d}")
    one = BMatrix.identity(f.d)
    result: dict[int, MultilinearCoefficient] = {}
    for n in range(1, min(f.N, g.N) + 1):
        terms = _alternating_terms(f, g, n)
        if not terms:
            result[n] = MultilinearCoefficient.zero(f.d, 2 * n - 2)
            continue
        result[n] = MultilinearCoefficient.from_function(
            f.d, 2 * n - 2, lambda *args: evaluate_terms(terms, (one, one, *args), one)
        )
    return result
