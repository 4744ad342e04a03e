"""Structured diagnostic results."""

from __future__ import annotations

from itertools import product
from typing import Any, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, field_serializer, model_validator

from src.balgebra.matrix import BMatrix, basis
from src.balgebra.multilinear import MultilinearCoefficient
from src.engine.families import Indices, JointSpec
from src.errors import DimensionError


def matrix_strings(value: BMatrix) -> list[list[str]]:
    return [[f"{x.numerator}/{x.denominator}" for x in row] for row in value.entries()]


class Verdict(BaseModel):
    """Outcome of a diagnostic with a reproducible witness on failure."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True, populate_by_name=True)

    check: str = Field(..., description="Name of the diagnostic")
    passed: bool = Field(..., alias="pass", description="True when the property held exactly")
    witness_tuple: Optional[tuple[int, tuple[int, ...]]] = Field(
        default=None, description="(order, indices) of the first failing coefficient"
    )
    witness_args: Optional[list[BMatrix]] = Field(
        default=None, description="Basis B-arguments at which the failure shows"
    )
    residual: Optional[BMatrix] = Field(default=None, description="Nonzero value found")
    checked_orders: list[int] = Field(default_factory=list, description="Orders examined")
    details: dict[str, Any] = Field(default_factory=dict, description="Check-specific extras")

    @model_validator(mode="after")
    def _witness_on_failure(self) -> "Verdict":
        if not self.passed:
            if self.witness_tuple is None or self.witness_args is None or self.residual is None:
                raise ValueError(f"{self.check}: a failed verdict needs a complete witness")
            if self.residual.is_zero():
                raise ValueError(f"{self.check}: a failed verdict needs a nonzero residual")
        return self

    @field_serializer("witness_args")
    def _dump_args(self, value: Optional[list[BMatrix]]) -> Optional[list[list[list[str]]]]:
        return None if value is None else [matrix_strings(m) for m in value]

    @field_serializer("residual")
    def _dump_residual(self, value: Optional[BMatrix]) -> Optional[list[list[str]]]:
        return None if value is None else matrix_strings(value)

    @field_serializer("witness_tuple")
    def _dump_tuple(self, value: Optional[tuple[int, tuple[int, ...]]]) -> Optional[list[Any]]:
        return None if value is None else [value[0], list(value[1])]

    def to_json_dict(self) -> dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True)

    @classmethod
    def ok(cls, check: str, orders: Sequence[int], **details: Any) -> "Verdict":
        return cls(check=check, passed=True, checked_orders=list(orders), details=details)

    @classmethod
    def refuted(
        cls,
        check: str,
        indices: Indices,
        args: Sequence[BMatrix],
        residual: BMatrix,
        orders: Sequence[int],
        **details: Any,
    ) -> "Verdict":
        return cls(
            check=check,
            passed=False,
            witness_tuple=(len(indices), tuple(indices)),
            witness_args=list(args),
            residual=residual,
            checked_orders=list(orders),
            details=details,
        )

    def renamed(self, check: str, **details: Any) -> "Verdict":
        return self.model_copy(update={"check": check, "details": {**self.details, **details}})


def nonzero_witness(
    check: str,
    indices: Indices,
    coefficient: MultilinearCoefficient,
    orders: Sequence[int],
    **details: Any,
) -> Optional[Verdict]:
    """A refuting verdict at the first basis tuple where ``coefficient`` is nonzero."""
    found = coefficient.first_nonzero()
    if found is None:
        return None
    positions, value = found
    units = basis(coefficient.d)
    return Verdict.refuted(check, indices, [units[k] for k in positions], value, orders, **details)


def compare_families(check: str, lhs: JointSpec, rhs: JointSpec, N: Optional[int] = None) -> Verdict:
    """Exact table comparison up to order N (default: the common truncation)."""
    if lhs.d != rhs.d or lhs.s != rhs.s:
        raise DimensionError(
            f"Cannot compare (s={lhs.s}, d={lhs.d}) with (s={rhs.s}, d={rhs.d})"
        )
    N = min(lhs.N, rhs.N) if N is None else N
    lhs.require_order(N)
    rhs.require_order(N)
    orders = list(range(1, N + 1))
    for n in orders:
        for indices in product(range(1, lhs.s + 1), repeat=n):
            difference = lhs.coefficient(indices) - rhs.coefficient(indices)
            refutation = nonzero_witness(check, indices, difference, orders)
            if refutation is not None:
                return refutation
    return Verdict.ok(check, orders)
