"""Moment-cumulant passages as lattice sums over NC(n)."""

from __future__ import annotations

import logging
from typing import Literal, Optional, Sequence, Type

from src.balgebra.matrix import BMatrix
from src.balgebra.multilinear import MultilinearCoefficient
from src.engine.contraction import ContractionPlan, gather_coefficients, plan_contraction, run_plan
from src.engine.families import Indices, JointCumulantSpec, JointMomentSpec, JointSpec, SpecT, Word
from src.errors import ArgumentError, DimensionError
from src.lattice.enumeration import enumerate_nc
from src.lattice.mobius import mobius_to_top
from src.lattice.partition import SetPartition

logger = logging.getLogger(__name__)

Term = tuple[int, ContractionPlan, list[MultilinearCoefficient]]
Weighting = Literal["zeta", "mobius"]


def lattice_terms(
    family: JointSpec,
    indices: Indices,
    weighting: Weighting = "zeta",
    partitions: Optional[Sequence[SetPartition]] = None,
) -> list[Term]:
    """Nonvanishing terms of Σ_π w(π) · family^(π) for a fixed index tuple.

    A partition drops out as soon as one of its blocks meets an absent
    coefficient, so the surviving list depends only on the indices and can
    be reused for every choice of B-arguments.
    """
    n = len(indices)
    if partitions is None:
        partitions = enumerate_nc(n)
        weights: Sequence[int] = mobius_to_top(n) if weighting == "mobius" else (1,) * len(partitions)
    elif weighting == "mobius":
        all_partitions = enumerate_nc(n)
        by_partition = dict(zip(all_partitions, mobius_to_top(n)))
        weights = [by_partition[p] for p in partitions]
    else:
        weights = (1,) * len(partitions)

    largest = max((len(b) for p in partitions for b in p.blocks), default=0)
    family.require_order(largest)

    terms: list[Term] = []
    for p, weight in zip(partitions, weights):
        if weight == 0:
            continue
        plan = plan_contraction(p)
        coefficients = gather_coefficients(family, plan, indices)
        if coefficients is not None:
            terms.append((weight, plan, coefficients))
    return terms


def evaluate_terms(terms: Sequence[Term], lefts: Sequence[BMatrix], tail: BMatrix) -> BMatrix:
    total = BMatrix.zero(tail.d)
    for weight, plan, coefficients in terms:
        value = run_plan(plan, coefficients, lefts, tail)
        total = total + (value if weight == 1 else value.scale(weight))
    return total


def sum_over_nc(
    family: JointSpec,
    w: Word,
    weighting: Weighting = "zeta",
    partitions: Optional[Sequence[SetPartition]] = None,
) -> BMatrix:
    """Σ_π w(π) · eval_partitioned(family, π, w) over NC(len(w)) or a given subset."""
    if family.d != w.tail.d:
        raise DimensionError(f"Spec has d={family.d}, word has d={w.tail.d}")
    terms = lattice_terms(family, w.indices, weighting, partitions)
    return evaluate_terms(terms, w.lefts, w.tail)


def tabulate_terms(d: int, order: int, terms: Sequence[Term]) -> Optional[MultilinearCoefficient]:
    """The order-(order-1) map (b_2..b_n) ↦ Σ terms on x, b_2 x, ..., b_n x; None if zero."""
    if not terms:
        return None
    one = BMatrix.identity(d)
    coefficient = MultilinearCoefficient.from_function(
        d, order - 1, lambda *args: evaluate_terms(terms, (one, *args), one)
    )
    return None if coefficient.is_zero() else coefficient


def lattice_transform(
    family: JointSpec,
    weighting: Weighting,
    result_type: Type[SpecT],
    order: Optional[int] = None,
) -> SpecT:
    """Apply Σ_{π ∈ NC(n)} w(π) family^(π) to every (n, tuple) up to ``order``."""
    N = family.N if order is None else order
    family.require_order(N)
    table: dict[Indices, MultilinearCoefficient] = {}
    for n in range(1, N + 1):
        for indices in family.tuples(n):
            coefficient = tabulate_terms(family.d, n, lattice_terms(family, indices, weighting))
            if coefficient is not None:
                table[indices] = coefficient
        logger.debug("%s transform: order %d done (%d entries)", weighting, n, len(table))
    return result_type(family.s, family.d, N, table)


def moments_from_cumulants(c: JointCumulantSpec, order: Optional[int] = None) -> JointMomentSpec:
    """φ(x_{i_1} b_2 ... b_n x_{i_n}) = Σ_{π ∈ NC(n)} ĉ(π) on every basis tuple."""
    if not isinstance(c, JointCumulantSpec):
        raise ArgumentError(f"Expected a cumulant spec, got {c.kind}")
    return lattice_transform(c, "zeta", JointMomentSpec, order)


def cumulants_from_moments(m: JointMomentSpec, order: Optional[int] = None) -> JointCumulantSpec:
    """k_n = Σ_{π ∈ NC(n)} μ(π, 1_n) φ̂(π) on every basis tuple."""
    if not isinstance(m, JointMomentSpec):
        raise ArgumentError(f"Expected a moment spec, got {m.kind}")
    return lattice_transform(m, "mobius", JointCumulantSpec, order)


def extract_series(spec: JointSpec, b0: BMatrix) -> dict[Indices, BMatrix]:
    """Evaluate every coefficient at (b0, ..., b0); b0 = 1_B gives the trivial series.

    Returns:
        Mapping from every index tuple up to N (zeros included) to its B value
    """
    if b0.d != spec.d:
        raise DimensionError(f"b0 has d={b0.d}, spec has d={spec.d}")
    series: dict[Indices, BMatrix] = {}
    for n in range(1, spec.N + 1):
        for indices in spec.tuples(n):
            coefficient = spec.get(indices)
            series[indices] = (
                coefficient.apply([b0] * (n - 1)) if coefficient is not None else BMatrix.zero(spec.d)
            )
    return series
