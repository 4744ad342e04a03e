"""End-to-end harness: products of free B-even elements form an R-diagonal pair."""

from __future__ import annotations

import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterable, Optional

from pydantic import BaseModel, ConfigDict, Field

from config.settings import get_settings
from src.balgebra.matrix import BMatrix
from src.constructions.free import add_free_variables, free_union
from src.constructions.products import product_word_cumulants
from src.diagnostics.evenness import is_b_even
from src.diagnostics.generators import inject_cumulant, random_even_spec
from src.diagnostics.rdiagonal import determining_series, is_r_diagonal
from src.diagnostics.trace import check_b_trace
from src.diagnostics.verdict import Verdict, nonzero_witness
from src.engine.families import JointCumulantSpec
from src.engine.transforms import moments_from_cumulants
from src.errors import ArgumentError, PreconditionError

logger = logging.getLogger(__name__)

GATING = ("lemma", "even_sum", "r_diagonal", "r_diagonal_swapped", "reconstruction")


class ProductPairReport(BaseModel):
    """Checks on the pair (aa', a'a) for one seed."""

    model_config = ConfigDict(populate_by_name=True)

    seed: int
    dim: int
    order: int = Field(..., description="Pair truncation order")
    inner_order: int = Field(..., description="Truncation of a and a' (2 * pair_order)")
    pair_order: int = Field(..., description="Order the pair cumulants are built to")
    reconstruction_depth: int = Field(..., description="Orders of R_xy and R_yx rebuilt from (f, g)")
    passed: bool = Field(..., alias="pass")
    lemma: Verdict = Field(..., description="φ(aa') = 0_B = φ(a'a)")
    even_sum: Verdict = Field(..., description="a + a' is B-even")
    r_diagonal: Verdict = Field(..., description="(aa', a'a) is R-diagonal")
    r_diagonal_swapped: Verdict = Field(..., description="(a'a, aa') is R-diagonal")
    reconstruction: Verdict = Field(..., description="Determining series rebuild R_xy and R_yx")
    collapsed_identity: Verdict = Field(..., description="Scalar-form determining series identity")
    trace: Verdict = Field(..., description="B-traciality of the pair's moments")

    def to_json_dict(self) -> dict:
        return self.model_dump(mode="json", by_alias=True)


class HarnessSummary(BaseModel):
    """Aggregate over consecutive seeds, in seed order."""

    model_config = ConfigDict(populate_by_name=True)

    dim: int
    order: int
    seeds: list[int]
    passed: bool = Field(..., alias="pass")
    failed_seeds: list[int] = Field(default_factory=list)
    reports: list[ProductPairReport]

    def to_json_dict(self) -> dict:
        return self.model_dump(mode="json", by_alias=True)


def verify_even_product_pair(
    seed: int,
    d: int,
    order: int,
    a: Optional[JointCumulantSpec] = None,
    a_prime: Optional[JointCumulantSpec] = None,
    odd_injection: Optional[Fraction] = None,
    depth: Optional[int] = None,
) -> ProductPairReport:
    """Build (aa', a'a) from free B-even a, a' and check it.

    a and a' default to random_even_spec(seed) and random_even_spec(seed+1)
    at inner order 2·pair_order. ``odd_injection`` adds c·1_B to k_1(a), turning
    the run into a negative control.

    The reconstruction rebuilds R_xy and R_yx up to ``depth`` (default
    order // 2), which needs the pair to order 2·depth. A depth beyond
    order // 2 builds the pair that far; every other check stays at ``order``.

    Raises:
        TruncationError: If supplied a or a' are truncated below 2·pair_order
    """
    depth = order // 2 if depth is None else depth
    if d < 1 or order < 1 or depth < 0:
        raise ArgumentError(f"Invalid harness shape d={d}, order={order}, depth={depth}")
    pair_order = max(order, 2 * depth)
    inner = 2 * pair_order
    a = random_even_spec(seed, d, inner) if a is None else a
    a_prime = random_even_spec(seed + 1, d, inner) if a_prime is None else a_prime
    if odd_injection is not None:
        a = inject_cumulant(a, (1,), BMatrix.scalar(d, odd_injection))
    a.require_order(inner)
    a_prime.require_order(inner)

    union = free_union(a, a_prime)
    pair = product_word_cumulants(union, [[1, 2], [2, 1]], pair_order)
    logger.info("Seed %d: pair cumulants built to order %d (inner %d)", seed, pair_order, inner)

    lemma = Verdict.ok("lemma", [1])
    for var in (1, 2):
        refutation = nonzero_witness("lemma", (var,), pair.coefficient((var,)), [1])
        if refutation is not None:
            lemma = refutation
            break

    even_sum = is_b_even(add_free_variables(union, [[1, 2]]), 1, inner).renamed("even_sum")
    r_diagonal = is_r_diagonal(pair, order)
    swapped = is_r_diagonal(pair.restrict([2, 1]), order).renamed("r_diagonal_swapped")

    if not r_diagonal.passed:
        reconstruction = r_diagonal.renamed("reconstruction", skipped=True)
        collapsed = Verdict.ok("collapsed_identity", [], skipped=True)
    elif depth == 0:
        reconstruction = Verdict.ok("reconstruction", [], skipped=True, depth=0)
        collapsed = Verdict.ok("collapsed_identity", [], skipped=True)
    else:
        try:
            series = determining_series(pair, depth)
        except PreconditionError as e:
            if e.verdict is None:
                raise
            reconstruction = e.verdict.renamed("reconstruction", skipped=True, depth=depth)
            collapsed = Verdict.ok("collapsed_identity", [], skipped=True)
        else:
            reconstruction = series.recon.renamed("reconstruction", depth=depth)
            collapsed = series.collapsed
        if depth < (order + 1) // 2:
            logger.info("Seed %d: reconstruction covers orders 1..%d only", seed, depth)

    trace = check_b_trace(moments_from_cumulants(pair, order))
    items = {
        "lemma": lemma,
        "even_sum": even_sum,
        "r_diagonal": r_diagonal,
        "r_diagonal_swapped": swapped,
        "reconstruction": reconstruction,
    }
    passed = all(items[name].passed for name in GATING)
    logger.info("Seed %d: %s", seed, "pass" if passed else "REFUTED")
    return ProductPairReport(
        seed=seed,
        dim=d,
        order=order,
        inner_order=inner,
        pair_order=pair_order,
        reconstruction_depth=depth,
        passed=passed,
        collapsed_identity=collapsed,
        trace=trace,
        **items,
    )


def _run_seed(seed: int, dim: int, order: int, depth: Optional[int], max_n: int) -> ProductPairReport:
    # worker processes rebuild settings from the environment
    get_settings().lattice.max_n = max_n
    return verify_even_product_pair(seed, dim, order, depth=depth)


async def run_seeds(
    seeds: Iterable[int],
    dim: int,
    order: int,
    workers: int = 1,
    depth: Optional[int] = None,
) -> HarnessSummary:
    """Run the harness over ``seeds``, in a process pool when workers > 1.

    Reports are aggregated in ascending seed order whatever the completion
    order. The first worker exception is re-raised after all seeds finish.
    """
    seeds = sorted(set(seeds))
    if not seeds:
        raise ArgumentError("At least one seed is required")
    max_n = get_settings().lattice.max_n
    logger.info("Running %d seeds with %d worker(s)", len(seeds), workers)

    if workers <= 1:
        outputs: list = []
        for seed in seeds:
            try:
                outputs.append(verify_even_product_pair(seed, dim, order, depth=depth))
            except Exception as e:
                outputs.append(e)
    else:
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            tasks = [
                loop.run_in_executor(pool, _run_seed, seed, dim, order, depth, max_n) for seed in seeds
            ]
            outputs = await asyncio.gather(*tasks, return_exceptions=True)

    reports = []
    for seed, output in zip(seeds, outputs):
        if isinstance(output, Exception):
            logger.error(f"Seed {seed} failed: {output}")
            raise output
        reports.append(output)

    failed = [report.seed for report in reports if not report.passed]
    return HarnessSummary(
        dim=dim,
        order=order,
        seeds=seeds,
        passed=not failed,
        failed_seeds=failed,
        reports=reports,
    )
