"""B-valued R-diagonal pairs and their determining series."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from src.balgebra.matrix import BMatrix
from src.balgebra.multilinear import MultilinearCoefficient
from src.constructions.boxed import mobius_transform
from src.constructions.products import product_word_cumulants
from src.diagnostics.verdict import Verdict, compare_families, nonzero_witness
from src.engine.families import Indices, JointCumulantSpec
from src.errors import ArgumentError, PreconditionError

logger = logging.getLogger(__name__)


def alternating(n: int, first: int = 1) -> Indices:
    """(1,2,1,2,...) or (2,1,2,1,...) of length 2n."""
    second = 3 - first
    return (first, second) * n


def is_r_diagonal(u: JointCumulantSpec, N: Optional[int] = None) -> Verdict:
    """Pass iff the table up to order N lives on alternating even tuples.

    Pure tuples, odd orders and non-alternating mixed tuples must all carry
    the zero map; only (1,2,...,1,2) and (2,1,...,2,1) may be nonzero.

    Raises:
        ArgumentError: If u does not describe a pair (s != 2)
    """
    if u.s != 2:
        raise ArgumentError(f"R-diagonality is a property of pairs, spec has s={u.s}")
    N = u.N if N is None else N
    u.require_order(N)
    orders = list(range(1, N + 1))
    for indices, coefficient in u.items():
        if len(indices) > N:
            break
        half, odd = divmod(len(indices), 2)
        if not odd and indices in (alternating(half, 1), alternating(half, 2)):
            continue
        refutation = nonzero_witness("r_diagonal", indices, coefficient, orders)
        if refutation is not None:
            return refutation
    return Verdict.ok("r_diagonal", orders)


def is_r_diagonal_element(u: JointCumulantSpec, N: Optional[int] = None) -> Verdict:
    """R-diagonality of an element x, given the joint cumulants of (x, x*)."""
    return is_r_diagonal(u, N).renamed("r_diagonal_element")


@dataclass
class DeterminingSeries:
    """Determining series (f, g) of an R-diagonal pair with its checks.

    ``f`` and ``g`` are single-variable series whose order-n coefficient is
    k_{2n}(x, y, b_2 x, y, ..., b_n x, y) (resp. with x, y swapped), i.e.
    the alternating cumulant with 1_B in the intra-pair slots. The full
    alternating maps, of order 2n-1, are kept in ``f_full`` / ``g_full``.
    """

    f: JointCumulantSpec
    g: JointCumulantSpec
    recon: Verdict
    collapsed: Verdict
    f_full: dict[int, MultilinearCoefficient] = field(default_factory=dict)
    g_full: dict[int, MultilinearCoefficient] = field(default_factory=dict)


def determining_series(u: JointCumulantSpec, N: int) -> DeterminingSeries:
    """Extract (f, g) and verify that they determine R_xy and R_yx.

    ``recon`` rebuilds the cumulants of xy and yx from the alternating maps
    alone and compares them with the product-word cumulants of u. It is the
    exact operator-valued statement. ``collapsed`` compares
    mobius_transform(R_xy) with f (and R_yx with g) directly. That identity
    needs scalar maps and f = g (the tracial scalar case); it is reported
    for information only.

    Raises:
        ArgumentError: If u is not a pair
        PreconditionError: If u is not R-diagonal up to order 2N; the
            exception carries the refuting verdict
    """
    if u.s != 2:
        raise ArgumentError(f"Determining series need a pair, spec has s={u.s}")
    if N < 1:
        raise ArgumentError(f"Order must be positive, got {N}")
    u.require_order(2 * N)
    support = is_r_diagonal(u, 2 * N)
    if not support.passed:
        raise PreconditionError("Pair is not R-diagonal", support)

    f_full = {n: u.coefficient(alternating(n, 1)) for n in range(1, N + 1)}
    g_full = {n: u.coefficient(alternating(n, 2)) for n in range(1, N + 1)}
    f = _restricted(f_full, u.d, N)
    g = _restricted(g_full, u.d, N)

    products = product_word_cumulants(u, [[1, 2], [2, 1]], N)
    r_xy, r_yx = products.restrict([1]), products.restrict([2])

    recon = _first_failure(
        [
            _compare("reconstruction", reconstruct_alternating(f_full, g_full, u.d, N), r_xy, "xy"),
            _compare("reconstruction", reconstruct_alternating(g_full, f_full, u.d, N), r_yx, "yx"),
        ]
    )
    collapsed = _first_failure(
        [
            _compare("collapsed_identity", mobius_transform(r_xy), f, "xy"),
            _compare("collapsed_identity", mobius_transform(r_yx), g, "yx"),
        ]
    )
    logger.info(
        "Determining series to order %d: recon=%s collapsed=%s", N, recon.passed, collapsed.passed
    )
    return DeterminingSeries(f, g, recon, collapsed, f_full, g_full)


def _compare(check: str, lhs: JointCumulantSpec, rhs: JointCumulantSpec, series: str) -> Verdict:
    return compare_families(check, lhs, rhs).renamed(check, series=series)


def _first_failure(verdicts: Sequence[Verdict]) -> Verdict:
    for verdict in verdicts:
        if not verdict.passed:
            return verdict
    return verdicts[-1].model_copy(update={"details": {}})


def _restricted(full: Mapping[int, MultilinearCoefficient], d: int, N: int) -> JointCumulantSpec:
    one = BMatrix.identity(d)
    table = {}
    for n in range(1, N + 1):
        alternating_map = full[n]

        def evaluate(*bs: BMatrix) -> BMatrix:
            args = [one]
            for b in bs:
                args += [b, one]
            return alternating_map.apply(args)

        table[(1,) * n] = MultilinearCoefficient.from_function(d, n - 1, evaluate)
    return JointCumulantSpec(1, d, N, table)


def reconstruct_alternating(
    top: Mapping[int, MultilinearCoefficient],
    sub: Mapping[int, MultilinearCoefficient],
    d: int,
    N: int,
) -> JointCumulantSpec:
    """Cumulants of the product PQ of an R-diagonal pair from its alternating maps.

    ``top[m]`` is k_{2m}(P, c_1 Q, b_2 P, c_2 Q, ...) and ``sub[m]`` the same
    with Q first. On the word P_1 Q_1, b_2 P_2 Q_2, ..., b_n P_n Q_n every
    contributing partition has one outer block running from P_1 to Q_n
    through alternating P/Q letters; each gap between a P_p and a later Q_q
    holds a chain of Q-first blocks, evaluated recursively.
    """
    table = {}
    for n in range(1, N + 1):
        table[(1,) * n] = MultilinearCoefficient.from_function(
            d, n - 1, lambda *bs: _alternating_value(top, sub, bs, d)
        )
    return JointCumulantSpec(1, d, N, table)


def _alternating_value(
    top: Mapping[int, MultilinearCoefficient],
    sub: Mapping[int, MultilinearCoefficient],
    bs: Sequence[BMatrix],
    d: int,
) -> BMatrix:
    n = len(bs) + 1
    one, zero = BMatrix.identity(d), BMatrix.zero(d)
    regions: dict[tuple[int, int], BMatrix] = {}
    chains: dict[tuple[int, int], BMatrix] = {}

    def b(k: int) -> BMatrix:
        return bs[k - 2]

    def gap(p: int, q: int) -> BMatrix:
        return one if p == q else region(p, q)

    def region(p: int, q: int) -> BMatrix:
        # letters Q_p, b_{p+1} P_{p+1}, ..., Q_{q-1}, b_q P_q
        if (p, q) not in regions:
            total = zero
            for k in range(p + 1, q + 1):
                total = total + chain(p, k) @ (one if k == q else region(k, q))
            regions[p, q] = total
        return regions[p, q]

    def chain(s: int, e: int) -> BMatrix:
        # single Q-first block from Q_s to P_e
        if (s, e) not in chains:
            total = zero

            def walk(t: int, args: list[BMatrix]) -> None:
                nonlocal total
                args = [*args, b(t + 1)]
                if t + 1 == e:
                    total = total + sub[(len(args) + 1) // 2].apply(args)
                    return
                for nxt in range(t + 1, e):
                    walk(nxt, [*args, gap(t + 1, nxt)])

            walk(s, [])
            chains[s, e] = total
        return chains[s, e]

    result = zero

    def walk_top(previous: int, args: list[BMatrix]) -> None:
        nonlocal result
        for j in range(previous + 1, n + 1):
            extended = [*args, gap(previous + 1, j)]
            if j == n:
                result = result + top[(len(extended) + 1) // 2].apply(extended)
            else:
                walk_top(j, [*extended, b(j + 1)])

    walk_top(0, [])
    return result
