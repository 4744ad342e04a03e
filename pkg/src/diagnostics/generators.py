"""Seeded random distributions and negative-control injection."""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import product
from typing import Literal, Optional, Sequence, Union

import numpy as np

from config.settings import get_settings
from src.balgebra.matrix import BMatrix
from src.balgebra.multilinear import MultilinearCoefficient
from src.engine.families import Indices, JointCumulantSpec
from src.errors import ArgumentError, DimensionError

logger = logging.getLogger(__name__)

Parity = Optional[Literal["even", "odd"]]


def random_spec(
    seed: int,
    d: int,
    N: int,
    s: int = 1,
    parity: Parity = None,
    numerator_bound: Optional[int] = None,
    denominators: Optional[Sequence[int]] = None,
) -> JointCumulantSpec:
    """Cumulant spec with random rational tables, reproducible from the seed.

    Every entry of every generated table is p/q with p uniform in
    [-numerator_bound, numerator_bound] and q uniform over ``denominators``
    (defaults from HarnessSettings: [-3, 3] and {1, 2}). Tables are drawn
    from ``numpy.random.default_rng(seed)`` in canonical order (order, then
    tuple lexicographically). ``parity`` restricts generation to even or odd
    orders; the other orders carry the zero map.
    """
    harness = get_settings().harness
    bound = harness.numerator_bound if numerator_bound is None else numerator_bound
    denominators = list(harness.denominators if denominators is None else denominators)
    if d < 1 or N < 1 or s < 1:
        raise ArgumentError(f"Invalid random spec shape s={s}, d={d}, N={N}")
    if bound < 0 or not denominators or any(q < 1 for q in denominators):
        raise ArgumentError(f"Invalid rational distribution: bound={bound}, denominators={denominators}")
    if parity not in (None, "even", "odd"):
        raise ArgumentError(f"Unknown parity {parity!r}")

    rng = np.random.default_rng(seed)
    table: dict[Indices, MultilinearCoefficient] = {}
    for n in range(1, N + 1):
        if (parity == "even" and n % 2) or (parity == "odd" and not n % 2):
            continue
        shape = (d * d,) * n
        for indices in product(range(1, s + 1), repeat=n):
            numerators = rng.integers(-bound, bound + 1, size=shape)
            bottoms = rng.choice(denominators, size=shape)
            values = np.empty(shape, dtype=object)
            for position, p in np.ndenumerate(numerators):
                values[position] = Fraction(int(p), int(bottoms[position]))
            table[indices] = MultilinearCoefficient(d, n - 1, values)
    logger.debug("Random spec seed=%d s=%d d=%d N=%d parity=%s", seed, s, d, N, parity)
    return JointCumulantSpec(s, d, N, table)


def random_even_spec(seed: int, d: int, N: int) -> JointCumulantSpec:
    """Single B-even variable: odd-order cumulants are zero maps."""
    return random_spec(seed, d, N, s=1, parity="even")


def inject_cumulant(
    u: JointCumulantSpec,
    indices: Sequence[int],
    coefficient: Union[MultilinearCoefficient, BMatrix],
) -> JointCumulantSpec:
    """Add ``coefficient`` to the cumulant at ``indices``.

    A BMatrix is accepted at order 1 and read as a constant map.
    """
    indices = tuple(indices)
    if isinstance(coefficient, BMatrix):
        if len(indices) != 1:
            raise DimensionError(f"A constant only fits an order-1 tuple, got {indices}")
        coefficient = MultilinearCoefficient.constant(coefficient)
    return u.with_entry(indices, u.coefficient(indices) + coefficient)
