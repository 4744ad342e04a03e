"""Joint cumulants of product words in free variables."""

from __future__ import annotations

import logging
from itertools import product
from typing import Sequence

from src.balgebra.matrix import BMatrix
from src.balgebra.multilinear import MultilinearCoefficient
from src.engine.families import Indices, JointCumulantSpec, JointMomentSpec
from src.engine.transforms import cumulants_from_moments, evaluate_terms, lattice_terms
from src.errors import ArgumentError, TruncationError

logger = logging.getLogger(__name__)


def product_word_cumulants(
    u: JointCumulantSpec,
    words: Sequence[Sequence[int]],
    N_out: int,
) -> JointCumulantSpec:
    """Joint cumulants of w_j = x_{words[j][0]} x_{words[j][1]} ... up to order N_out.

    Every moment φ(w_{j_1} b_2 w_{j_2} ... b_n w_{j_n}) is expanded as a
    u-moment of the concatenated letters (1_B between letters of one word,
    the caller's b's between words), summed over NC of the letters, and the
    resulting moment family is Möbius-inverted.

    Raises:
        ArgumentError: If a word is empty or uses an unknown variable
        TruncationError: If u.N < N_out · (longest word length)
    """
    if not words:
        raise ArgumentError("At least one word is required")
    for word in words:
        if not word or any(not 1 <= var <= u.s for var in word):
            raise ArgumentError(f"Invalid word {list(word)} for a spec with s={u.s}")
    if N_out < 1:
        raise ArgumentError(f"Output order must be positive, got {N_out}")
    required = N_out * max(len(word) for word in words)
    if u.N < required:
        raise TruncationError(
            f"Words up to length {max(len(w) for w in words)} at order {N_out} need inner "
            f"order {required}, spec has N={u.N}",
            required=required,
            available=u.N,
        )

    one = BMatrix.identity(u.d)
    moments: dict[Indices, MultilinearCoefficient] = {}
    for n in range(1, N_out + 1):
        for choice in product(range(1, len(words) + 1), repeat=n):
            letters: list[int] = []
            starts: list[int] = []
            for j in choice:
                starts.append(len(letters))
                letters.extend(words[j - 1])
            terms = lattice_terms(u, tuple(letters))
            if not terms:
                continue

            def evaluate(*args: BMatrix) -> BMatrix:
                lefts = [one] * len(letters)
                for start, arg in zip(starts[1:], args):
                    lefts[start] = arg
                return evaluate_terms(terms, lefts, one)

            coefficient = MultilinearCoefficient.from_function(u.d, n - 1, evaluate)
            if not coefficient.is_zero():
                moments[choice] = coefficient
        logger.debug("Product moments of order %d built (%d entries)", n, len(moments))

    return cumulants_from_moments(JointMomentSpec(len(words), u.d, N_out, moments))

