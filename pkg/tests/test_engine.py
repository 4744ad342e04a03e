"""Tests for spec families, nested contraction and the moment-cumulant transforms."""

from fractions import Fraction
from itertools import permutations

import pytest

from src.balgebra.matrix import BMatrix, basis
from src.balgebra.multilinear import MultilinearCoefficient
from src.diagnostics.generators import random_spec
from src.engine import (
    JointCumulantSpec,
    JointMomentSpec,
    Word,
    cumulants_from_moments,
    eval_partitioned,
    extract_series,
    moments_from_cumulants,
    plan_contraction,
    sum_over_nc,
)
from src.errors import ArgumentError, DimensionError, DomainError, StructuralError, TruncationError
from src.lattice import SetPartition, enumerate_nc
from tests.helpers import m2, scalar_spec

ONE = BMatrix.identity(1)


def scalar(value) -> BMatrix:
    return BMatrix([[value]])


class TestJointSpec:
    def test_zero_maps_dropped(self):
        spec = JointCumulantSpec(1, 2, 2, {(1,): MultilinearCoefficient.zero(2, 0)})
        assert dict(spec.table) == {}
        assert spec == JointCumulantSpec(1, 2, 2)
        assert spec.coefficient((1, 1)).is_zero()

    def test_validation(self):
        with pytest.raises(ArgumentError):
            JointCumulantSpec(1, 1, 2, {(2,): MultilinearCoefficient.constant(ONE)})
        with pytest.raises(StructuralError):
            JointCumulantSpec(1, 1, 1, {(1, 1): MultilinearCoefficient.zero(1, 1)})
        with pytest.raises(DimensionError):
            JointCumulantSpec(1, 2, 1, {(1,): MultilinearCoefficient.constant(ONE)})

    def test_restrict_relabels(self):
        spec = scalar_spec({(1, 1): 1, (2, 2): 3, (1, 2): 5}, s=2)
        swapped = spec.restrict([2, 1])
        assert swapped.coefficient((1, 1)) == spec.coefficient((2, 2))
        assert swapped.coefficient((2, 1)) == spec.coefficient((1, 2))
        only_second = spec.restrict([2])
        assert only_second.s == 1
        assert list(only_second.table) == [(1, 1)]

    def test_truncate_and_require_order(self):
        spec = scalar_spec({(1,): 1, (1, 1, 1): 2}, N=4)
        short = spec.truncate(2)
        assert short.N == 2
        assert list(short.table) == [(1,)]
        with pytest.raises(TruncationError) as info:
            short.require_order(3)
        assert (info.value.required, info.value.available) == (3, 2)

    def test_entries_in_canonical_order(self):
        spec = scalar_spec({(2, 1): 1, (1,): 1, (1, 2): 1, (2,): 1}, s=2)
        assert list(spec.table) == [(1,), (2,), (1, 2), (2, 1)]

    def test_moment_and_cumulant_specs_differ(self):
        assert JointCumulantSpec(1, 1, 1) != JointMomentSpec(1, 1, 1)


class TestWord:
    def test_of_fills_identity(self):
        b = m2(1, 2, 3, 4)
        w = Word.of([1, 2, 1], [b])
        assert w.indices == (1, 2, 1)
        assert w.lefts == (BMatrix.identity(2), b, BMatrix.identity(2))
        assert w.tail == BMatrix.identity(2)

    def test_rejects_too_many_arguments(self):
        with pytest.raises(DimensionError):
            Word.of([1], [BMatrix.identity(2)])


class TestContraction:
    def test_scalar_values(self):
        spec = scalar_spec({(1,): 2, (1, 1): 3}, N=2)
        w = Word.of([1, 1], [scalar(5)])
        # singletons: k1 · 5 · k1
        assert eval_partitioned(spec, SetPartition.bottom(2), w) == scalar(20)
        assert eval_partitioned(spec, SetPartition.top(2), w) == scalar(15)

    def test_default_plan_contracts_inner_blocks_first(self):
        plan = plan_contraction(SetPartition(4, [[1, 4], [2, 3]]))
        assert [step.block for step in plan.steps] == [(1, 2), (0, 3)]
        assert plan.steps[0].fold_to == 3
        assert plan.steps[1].fold_to is None

    def test_invalid_order(self):
        p = SetPartition(4, [[1, 4], [2, 3]])
        with pytest.raises(StructuralError):
            plan_contraction(p, [0, 1])
        with pytest.raises(StructuralError):
            plan_contraction(p, [0])

    def test_crossing_and_truncation(self):
        spec = scalar_spec({(1, 1): 1}, N=2)
        with pytest.raises(DomainError):
            eval_partitioned(spec, SetPartition(4, [[1, 3], [2, 4]]), Word.of([1] * 4))
        with pytest.raises(TruncationError):
            eval_partitioned(spec, SetPartition.top(3), Word.of([1] * 3))
        with pytest.raises(DimensionError):
            eval_partitioned(spec, SetPartition.top(2), Word.of([1] * 3))

    @pytest.mark.parametrize("seed", range(5))
    def test_contraction_order_independence(self, seed):
        spec = random_spec(seed, 2, 4, s=2)
        args = [m2(1, -1, 2, 0), m2(0, 1, 1, Fraction(1, 2)), m2(3, 0, -1, 1)]
        w = Word.of([1, 2, 2, 1], args, tail=m2(1, 1, 0, 2))
        for p in enumerate_nc(4):
            expected = eval_partitioned(spec, p, w)
            for order in permutations(range(len(p.blocks))):
                try:
                    plan_contraction(p, order)
                except StructuralError:
                    continue
                assert eval_partitioned(spec, p, w, order) == expected

    def test_random_orders_at_six(self):
        spec = random_spec(11, 2, 6, s=1)
        units = basis(2)
        w = Word.of([1] * 6, [units[1], units[2], units[0], units[3], units[2]])
        p = SetPartition(6, [[1, 6], [2, 3], [4], [5]])
        expected = eval_partitioned(spec, p, w)
        valid = 0
        for order in permutations(range(4)):
            try:
                plan_contraction(p, order)
            except StructuralError:
                continue
            valid += 1
            assert eval_partitioned(spec, p, w, order) == expected
        assert valid > 1


class TestTransforms:
    def test_semicircle_moments_are_catalan(self, semicircle):
        moments = moments_from_cumulants(semicircle)
        series = extract_series(moments, ONE)
        assert [series[(1,) * n] for n in range(1, 7)] == [
            scalar(0), scalar(1), scalar(0), scalar(2), scalar(0), scalar(5)
        ]

    def test_scalar_second_moment(self):
        spec = scalar_spec({(1,): 2, (1, 1): 3}, N=2)
        moments = moments_from_cumulants(spec)
        assert moments.coefficient((1, 1))(scalar(1)) == scalar(7)

    def test_sum_over_nc_matches_table(self):
        spec = random_spec(3, 2, 3, s=1)
        moments = moments_from_cumulants(spec)
        b2, b3 = m2(1, 2, 0, 1), m2(0, 1, -1, 0)
        assert sum_over_nc(spec, Word.of([1, 1, 1], [b2, b3])) == moments.coefficient((1, 1, 1))(b2, b3)

    @pytest.mark.parametrize("seed", range(10))
    def test_round_trip_two_variables(self, seed):
        c = random_spec(seed, 2, 4, s=2)
        m = moments_from_cumulants(c)
        assert isinstance(m, JointMomentSpec)
        assert cumulants_from_moments(m) == c

    @pytest.mark.parametrize("seed", range(10))
    def test_round_trip_single_variable(self, seed):
        c = random_spec(100 + seed, 2, 5)
        assert cumulants_from_moments(moments_from_cumulants(c)) == c

    def test_round_trip_scalar(self):
        c = random_spec(7, 1, 5, s=2)
        assert cumulants_from_moments(moments_from_cumulants(c)) == c

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(2))
    def test_round_trip_two_variables_order_five(self, seed):
        c = random_spec(200 + seed, 2, 5, s=2)
        m = moments_from_cumulants(c)
        assert m.N == 5
        assert cumulants_from_moments(m) == c

    def test_order_argument_truncates(self, semicircle):
        assert moments_from_cumulants(semicircle, 4).N == 4
        with pytest.raises(TruncationError):
            moments_from_cumulants(semicircle, 7)

    def test_kind_is_checked(self, semicircle):
        with pytest.raises(ArgumentError):
            cumulants_from_moments(semicircle)
        with pytest.raises(ArgumentError):
            moments_from_cumulants(moments_from_cumulants(semicircle))

    def test_extract_series_keeps_zeros(self):
        spec = scalar_spec({(1, 2): 1}, s=2, N=2)
        series = extract_series(spec, ONE)
        assert len(series) == 2 + 4
        assert series[(1, 2)] == ONE
        assert series[(2, 1)].is_zero()
