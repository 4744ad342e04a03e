"""Nested interval contraction of functional families along noncrossing partitions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from src.balgebra.matrix import BMatrix
from src.balgebra.multilinear import MultilinearCoefficient
from src.engine.families import Indices, JointSpec, Word
from src.errors import ArgumentError, DimensionError, StructuralError
from src.lattice.partition import SetPartition, require_noncrossing


@dataclass(frozen=True)
class ContractionStep:
    """Contract ``block`` (0-based slots) and fold its value into slot ``fold_to`` (None = tail)."""

    block: tuple[int, ...]
    fold_to: Optional[int]


@dataclass(frozen=True)
class ContractionPlan:
    partition: SetPartition
    steps: tuple[ContractionStep, ...]


def plan_contraction(p: SetPartition, order: Optional[Sequence[int]] = None) -> ContractionPlan:
    """Schedule the block contractions of a noncrossing partition.

    Args:
        p: Noncrossing partition of the word positions
        order: Block indices (into ``p.blocks``) in contraction order; by
            default blocks are taken by increasing span, which always
            contracts nested blocks first

    Raises:
        DomainError: If p is crossing
        StructuralError: If ``order`` picks a block that is not an interval
            of the word at that point
    """
    if order is None:
        return _default_plan(p)
    require_noncrossing(p)
    if sorted(order) != list(range(len(p.blocks))):
        raise StructuralError(f"Contraction order {list(order)} is not a permutation of the blocks")
    return _build_plan(p, [p.blocks[i] for i in order])


@lru_cache(maxsize=None)
def _default_plan(p: SetPartition) -> ContractionPlan:
    require_noncrossing(p)
    ordered = sorted(p.blocks, key=lambda b: (b[-1] - b[0], b[0]))
    return _build_plan(p, ordered)


def _build_plan(p: SetPartition, ordered: Sequence[tuple[int, ...]]) -> ContractionPlan:
    alive = list(range(1, p.n + 1))
    steps = []
    for block in ordered:
        start = alive.index(block[0])
        if tuple(alive[start : start + len(block)]) != block:
            raise StructuralError(f"Block {block} is not an interval of the remaining word {alive}")
        del alive[start : start + len(block)]
        fold_to = alive[start] - 1 if start < len(alive) else None
        steps.append(ContractionStep(tuple(i - 1 for i in block), fold_to))
    return ContractionPlan(p, tuple(steps))


def run_plan(
    plan: ContractionPlan,
    coefficients: Sequence[MultilinearCoefficient],
    lefts: Sequence[BMatrix],
    tail: BMatrix,
) -> BMatrix:
    """Execute a plan with one coefficient per step.

    Each step computes u = L_first · κ(L_rest...) and multiplies u into the
    left coefficient of the next surviving slot, or into the tail.
    """
    current = list(lefts)
    for step, coefficient in zip(plan.steps, coefficients):
        first, *rest = step.block
        value = current[first] @ coefficient.apply([current[i] for i in rest])
        if step.fold_to is None:
            tail = value @ tail
        else:
            current[step.fold_to] = value @ current[step.fold_to]
    return tail


def gather_coefficients(
    family: JointSpec,
    plan: ContractionPlan,
    indices: Indices,
) -> Optional[list[MultilinearCoefficient]]:
    """Coefficients for every step, or None when some block carries the zero map."""
    found = []
    for step in plan.steps:
        coefficient = family.get(tuple(indices[i] for i in step.block))
        if coefficient is None:
            return None
        found.append(coefficient)
    return found


def check_word(family: JointSpec, p: SetPartition, indices: Indices) -> None:
    if p.n != len(indices):
        raise DimensionError(f"Partition of {p.n} elements applied to a word of length {len(indices)}")
    for var in indices:
        if var > family.s:
            raise ArgumentError(f"Word uses variable {var}, spec has s={family.s}")
    largest = max(len(block) for block in p.blocks)
    family.require_order(largest)


def eval_partitioned(
    family: JointSpec,
    p: SetPartition,
    w: Word,
    order: Optional[Sequence[int]] = None,
) -> BMatrix:
    """Multiplicative evaluation of ``family`` along ``p`` on the word ``w``.

    Args:
        family: Cumulant or moment spec
        p: Noncrossing partition of the word positions
        w: Word to evaluate
        order: Optional contraction order (block indices); the value does
            not depend on it

    Returns:
        The nested contraction value

    Raises:
        DomainError: If p is crossing
        TruncationError: If a block is longer than the family's truncation
    """
    if family.d != w.tail.d:
        raise DimensionError(f"Spec has d={family.d}, word has d={w.tail.d}")
    check_word(family, p, w.indices)
    plan = plan_contraction(p, order)
    coefficients = gather_coefficients(family, plan, w.indices)
    if coefficients is None:
        return BMatrix.zero(family.d)
    return run_plan(plan, coefficients, w.lefts, w.tail)
