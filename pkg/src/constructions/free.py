"""Amalgamated free unions, sums of free variables and left B-scaling."""

from __future__ import annotations

from typing import Sequence

from src.balgebra.matrix import BMatrix
from src.balgebra.multilinear import MultilinearCoefficient
from src.engine.families import Indices, JointCumulantSpec
from src.errors import ArgumentError, DimensionError


def _require_cumulants(*specs: object) -> None:
    for spec in specs:
        if not isinstance(spec, JointCumulantSpec):
            raise ArgumentError("Free constructions operate on cumulant specs")


def free_union(a: JointCumulantSpec, b: JointCumulantSpec) -> JointCumulantSpec:
    """Joint cumulants of the variables of a and b taken free over B.

    Variables of b are renumbered after those of a; mixed tuples get the
    zero map and the truncation is min(N_a, N_b).
    """
    _require_cumulants(a, b)
    if a.d != b.d:
        raise DimensionError(f"Cannot unite specs over d={a.d} and d={b.d}")
    N = min(a.N, b.N)
    table = {key: value for key, value in a.items() if len(key) <= N}
    for key, value in b.items():
        if len(key) <= N:
            table[tuple(i + a.s for i in key)] = value
    return JointCumulantSpec(a.s + b.s, a.d, N, table)


def add_free_variables(u: JointCumulantSpec, groups: Sequence[Sequence[int]]) -> JointCumulantSpec:
    """Cumulants of the sums Σ_{v ∈ group} x_v, one new variable per group.

    Each slot is expanded multilinearly over its group's constituents. The
    result is the cumulant family of the sums when the summed variables
    come from mutually free families.

    Raises:
        ArgumentError: If groups do not partition 1..u.s
    """
    _require_cumulants(u)
    owner: dict[int, int] = {}
    for position, group in enumerate(groups, start=1):
        if not group:
            raise ArgumentError(f"Group {position} is empty")
        for var in group:
            if not isinstance(var, int) or not 1 <= var <= u.s:
                raise ArgumentError(f"Variable {var!r} outside 1..{u.s}")
            if var in owner:
                raise ArgumentError(f"Variable {var} appears in groups {owner[var]} and {position}")
            owner[var] = position
    if len(owner) != u.s:
        missing = sorted(set(range(1, u.s + 1)) - set(owner))
        raise ArgumentError(f"Variables {missing} belong to no group")

    table: dict[Indices, MultilinearCoefficient] = {}
    for key, value in u.items():
        target = tuple(owner[i] for i in key)
        table[target] = table[target] + value if target in table else value
    return JointCumulantSpec(len(groups), u.d, u.N, table)


def left_scale(b: BMatrix, u: JointCumulantSpec, var: int) -> JointCumulantSpec:
    """Replace variable ``var`` by b·x_var.

    An occurrence in a later slot turns that slot's B-argument b_j into
    b_j·b; an occurrence in the first slot contributes the outer left
    factor b.
    """
    _require_cumulants(u)
    if b.d != u.d:
        raise DimensionError(f"Scaling element has d={b.d}, spec has d={u.d}")
    if not 1 <= var <= u.s:
        raise ArgumentError(f"Variable {var} outside 1..{u.s}")

    one = BMatrix.identity(u.d)
    table: dict[Indices, MultilinearCoefficient] = {}
    for key, value in u.items():
        if var not in key:
            table[key] = value
            continue
        table[key] = MultilinearCoefficient.from_function(
            u.d, len(key) - 1, _scaled(value, key, var, b, one)
        )
    return JointCumulantSpec(u.s, u.d, u.N, table)


def _scaled(value: MultilinearCoefficient, key: Indices, var: int, b: BMatrix, one: BMatrix):
    outer = b if key[0] == var else one
    hits = [i == var for i in key[1:]]

    def evaluate(*args: BMatrix) -> BMatrix:
        shifted = [arg @ b if hit else arg for arg, hit in zip(args, hits)]
        return outer @ value.apply(shifted)

    return evaluate

