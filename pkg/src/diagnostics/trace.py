"""B-trace check on moment families."""

from __future__ import annotations

from itertools import product
from typing import Optional

from src.balgebra.matrix import BMatrix, basis
from src.diagnostics.verdict import Verdict
from src.engine.families import JointMomentSpec
from src.errors import ArgumentError


def check_b_trace(m: JointMomentSpec, N: Optional[int] = None) -> Verdict:
    """Cyclic rotation test φ(X · b_n x_{i_n}) = b_n · φ(x_{i_n} · X).

    For every order n ≤ N, tuple and basis arguments (b_2, ..., b_n):
    φ(x_{i_1} b_2 ... b_n x_{i_n}) must equal
    b_n · φ(x_{i_n} 1_B x_{i_1} b_2 ... b_{n-1} x_{i_{n-1}}).
    """
    if not isinstance(m, JointMomentSpec):
        raise ArgumentError(f"Traciality is a property of moments, got a {m.kind} spec")
    N = m.N if N is None else N
    m.require_order(N)
    one = BMatrix.identity(m.d)
    units = basis(m.d)
    orders = list(range(1, N + 1))
    for n in range(2, N + 1):
        for indices in m.tuples(n):
            rotated = (indices[-1], *indices[:-1])
            lhs_map, rhs_map = m.coefficient(indices), m.coefficient(rotated)
            if lhs_map.is_zero() and rhs_map.is_zero():
                continue
            for position in product(range(m.d * m.d), repeat=n - 1):
                args = [units[j] for j in position]
                lhs = lhs_map.apply(args)
                rhs = args[-1] @ rhs_map.apply([one, *args[:-1]])
                if lhs != rhs:
                    return Verdict.refuted("b_trace", indices, args, lhs - rhs, orders)
    return Verdict.ok("b_trace", orders)
