"""End-to-end checks on products of free B-even elements."""

from fractions import Fraction

import pytest

from src.diagnostics import run_seeds, verify_even_product_pair
from src.diagnostics.harness import GATING
from src.diagnostics.generators import random_even_spec
from src.errors import ArgumentError, TruncationError


class TestProductPair:
    @pytest.mark.parametrize("seed", range(20))
    def test_products_of_free_even_elements(self, seed):
        report = verify_even_product_pair(seed, 2, 3)
        assert report.passed
        for name in GATING:
            assert getattr(report, name).passed, name
        assert report.inner_order == 6
        assert report.reconstruction.details.get("skipped") is None
        assert report.reconstruction_depth == 1
        assert report.reconstruction.details["depth"] == 1

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(3))
    def test_order_four(self, seed):
        report = verify_even_product_pair(seed, 2, 4)
        assert report.passed
        assert report.reconstruction.checked_orders == [1, 2]

    def test_scalar_case(self, semicircle):
        report = verify_even_product_pair(0, 1, 3, a=semicircle, a_prime=semicircle)
        assert report.passed
        assert report.collapsed_identity.passed
        assert report.trace.passed

    @pytest.mark.parametrize("seed", range(3))
    def test_deeper_reconstruction(self, seed):
        report = verify_even_product_pair(seed, 1, 3, depth=2)
        assert report.passed
        assert (report.pair_order, report.inner_order) == (4, 8)
        assert report.reconstruction.checked_orders == [1, 2]
        assert report.r_diagonal.checked_orders == [1, 2, 3]

    def test_negative_depth(self):
        with pytest.raises(ArgumentError):
            verify_even_product_pair(0, 2, 3, depth=-1)

    def test_random_scalar_inputs(self):
        assert verify_even_product_pair(4, 1, 4).passed

    def test_first_order_skips_reconstruction(self):
        report = verify_even_product_pair(0, 2, 1)
        assert report.passed
        assert report.reconstruction.details["skipped"] is True

    def test_odd_injection_is_caught(self):
        report = verify_even_product_pair(0, 2, 2, odd_injection=Fraction(1))
        assert not report.passed
        assert not report.even_sum.passed
        assert report.even_sum.witness_tuple == (1, (1,))
        assert not report.r_diagonal.passed
        assert report.r_diagonal.witness_tuple == (2, (1, 1))
        assert report.reconstruction.details["skipped"] is True

    def test_explicit_inputs_must_reach_inner_order(self):
        with pytest.raises(TruncationError):
            verify_even_product_pair(0, 2, 3, a=random_even_spec(0, 2, 4))

    def test_report_json_uses_pass_key(self):
        data = verify_even_product_pair(1, 2, 2).to_json_dict()
        assert data["pass"] is True
        assert data["lemma"]["pass"] is True
        assert data["r_diagonal"]["witness_tuple"] is None


class TestRunSeeds:
    async def test_sequential(self):
        summary = await run_seeds([3, 1, 2], 2, 2)
        assert summary.seeds == [1, 2, 3]
        assert [r.seed for r in summary.reports] == [1, 2, 3]
        assert summary.passed
        assert summary.failed_seeds == []

    async def test_process_pool_keeps_seed_order(self):
        summary = await run_seeds(range(4), 2, 2, workers=2)
        assert [r.seed for r in summary.reports] == [0, 1, 2, 3]
        assert summary.to_json_dict()["pass"] is True

    async def test_depth_reaches_every_seed(self):
        summary = await run_seeds([0, 1], 1, 2, depth=2)
        assert all(r.reconstruction.checked_orders == [1, 2] for r in summary.reports)
        assert all(r.pair_order == 4 for r in summary.reports)

    async def test_empty_seed_list(self):
        with pytest.raises(ArgumentError):
            await run_seeds([], 2, 2)
