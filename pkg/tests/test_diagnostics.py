"""Tests for evenness, traciality and R-diagonality checks."""

from fractions import Fraction

import pytest

from src.balgebra.matrix import BMatrix
from src.balgebra.multilinear import MultilinearCoefficient
from src.constructions import add_free_variables, free_union, left_scale
from src.diagnostics import (
    Verdict,
    check_b_trace,
    check_even_moment_formula,
    compare_families,
    determining_series,
    inject_cumulant,
    is_b_even,
    is_r_diagonal,
    is_r_diagonal_element,
    random_even_spec,
    random_spec,
)
from src.engine import JointCumulantSpec, JointMomentSpec, moments_from_cumulants
from src.errors import ArgumentError, DimensionError, PreconditionError, TruncationError
from tests.helpers import m2, scalar_spec

I2 = BMatrix.identity(2)


def alternating_pair(seed: int, N: int = 4) -> JointCumulantSpec:
    """Random d = 2 pair supported on (1,2,...) and (2,1,...) tuples only."""
    source = random_spec(seed, 2, N, s=2, parity="even")
    table = {
        key: value
        for key, value in source.items()
        if all(key[i] != key[i + 1] for i in range(len(key) - 1))
    }
    return JointCumulantSpec(2, 2, N, table)


class TestVerdict:
    def test_failed_verdict_needs_witness(self):
        with pytest.raises(ValueError):
            Verdict(check="x", passed=False)
        with pytest.raises(ValueError):
            Verdict.refuted("x", (1,), [], BMatrix.zero(2), [1])

    def test_json_shape(self):
        verdict = Verdict.refuted("x", (1, 2), [I2], m2(1, 0, 0, Fraction(-1, 2)), [1, 2])
        data = verdict.to_json_dict()
        assert data["pass"] is False
        assert data["witness_tuple"] == [2, [1, 2]]
        assert data["residual"] == [["1/1", "0/1"], ["0/1", "-1/2"]]
        assert data["witness_args"] == [[["1/1", "0/1"], ["0/1", "1/1"]]]

    def test_compare_families(self):
        a = scalar_spec({(1, 1): 1})
        b = scalar_spec({(1, 1): 1, (1, 1, 1): 2})
        assert compare_families("same", a, a).passed
        verdict = compare_families("diff", a, b)
        assert verdict.witness_tuple == (3, (1, 1, 1))
        assert verdict.residual == BMatrix([[-2]])
        with pytest.raises(DimensionError):
            compare_families("d", a, random_spec(0, 2, 2))


class TestEvenness:
    def test_zero_spec_passes(self):
        assert is_b_even(JointCumulantSpec(1, 2, 4), 1).passed

    def test_first_cumulant_refutes(self):
        spec = JointCumulantSpec(1, 2, 3, {(1,): MultilinearCoefficient.constant(I2)})
        verdict = is_b_even(spec, 1)
        assert not verdict.passed
        assert verdict.witness_tuple == (1, (1,))
        assert verdict.witness_args == []
        assert verdict.residual == I2
        assert verdict.checked_orders == [1, 3]

    @pytest.mark.parametrize("seed", range(3))
    def test_even_cumulants_give_even_moments(self, seed):
        spec = random_even_spec(seed, 2, 6)
        assert is_b_even(spec, 1).passed
        moments = moments_from_cumulants(spec)
        verdict = is_b_even(moments, 1)
        assert verdict.passed
        assert verdict.details["kind"] == "moment"

    def test_odd_cumulant_gives_odd_moment(self):
        odd = random_spec(5, 2, 3, parity="odd").coefficient((1, 1, 1))
        spec = inject_cumulant(random_even_spec(0, 2, 4), (1, 1, 1), odd)
        assert is_b_even(spec, 1).witness_tuple == (3, (1, 1, 1))
        assert is_b_even(moments_from_cumulants(spec), 1).witness_tuple == (3, (1, 1, 1))

    def test_only_the_chosen_variable(self):
        u = free_union(random_even_spec(0, 2, 4), random_spec(1, 2, 4, parity="odd"))
        assert is_b_even(u, 1).passed
        assert not is_b_even(u, 2).passed
        with pytest.raises(ArgumentError):
            is_b_even(u, 3)
        with pytest.raises(TruncationError):
            is_b_even(u, 1, 6)

    def test_sum_of_free_even_is_even(self):
        u = free_union(random_even_spec(3, 2, 6), random_even_spec(4, 2, 6))
        assert is_b_even(add_free_variables(u, [[1, 2]]), 1).passed

    def test_left_scaling_keeps_evenness(self):
        scaled = left_scale(m2(1, 2, -1, 0), random_even_spec(2, 2, 5), 1)
        assert is_b_even(scaled, 1).passed

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_even_moment_formula(self, k):
        verdict = check_even_moment_formula(random_even_spec(10 + k, 2, 2 * k), 1, k)
        assert verdict.passed
        assert verdict.checked_orders == [2 * k]

    def test_even_moment_formula_counts(self, semicircle):
        verdict = check_even_moment_formula(semicircle, 1, 2)
        assert verdict.passed
        assert verdict.details == {"partitions_full": 14, "partitions_even": 3}

    def test_even_moment_formula_needs_evenness(self):
        spec = random_spec(0, 2, 4)
        with pytest.raises(PreconditionError) as info:
            check_even_moment_formula(spec, 1, 2)
        assert info.value.verdict is not None
        assert not info.value.verdict.passed


class TestTrace:
    def test_scalar_single_variable(self, semicircle):
        assert check_b_trace(moments_from_cumulants(semicircle), 4).passed

    def test_asymmetric_pair_refuted(self):
        spec = JointMomentSpec(2, 1, 2, {(1, 2): MultilinearCoefficient.from_function(1, 1, lambda b: b)})
        verdict = check_b_trace(spec)
        assert not verdict.passed
        assert verdict.witness_tuple == (2, (1, 2))

    @pytest.mark.parametrize("seed", range(3))
    def test_free_union_of_scalar_inputs_is_tracial(self, seed):
        u = free_union(random_spec(seed, 1, 4), random_spec(seed + 1, 1, 4))
        assert check_b_trace(moments_from_cumulants(u)).passed

    def test_requires_moments(self, semicircle):
        with pytest.raises(ArgumentError):
            check_b_trace(semicircle)


class TestRDiagonal:
    def test_zero_pair(self):
        assert is_r_diagonal(JointCumulantSpec(2, 2, 4)).passed

    def test_alternating_support_passes(self):
        assert is_r_diagonal(alternating_pair(0)).passed

    def test_pure_tuple_refutes(self):
        u = scalar_spec({(1, 2): 1, (1, 1): 1}, s=2)
        verdict = is_r_diagonal(u)
        assert verdict.witness_tuple == (2, (1, 1))

    def test_odd_alternating_tuple_refutes(self):
        u = scalar_spec({(1, 2): 1, (1, 2, 1): 1}, s=2)
        assert is_r_diagonal(u).witness_tuple == (3, (1, 2, 1))

    def test_non_alternating_mixed_tuple_refutes(self):
        u = scalar_spec({(1, 1, 2, 2): 1}, s=2)
        assert is_r_diagonal(u).witness_tuple == (4, (1, 1, 2, 2))
        assert is_r_diagonal(u, 3).passed

    def test_needs_a_pair(self, semicircle):
        with pytest.raises(ArgumentError):
            is_r_diagonal(semicircle)

    def test_element_criterion_uses_pair_check(self):
        u = scalar_spec({(1, 2): 1, (2, 1): 1}, s=2)
        verdict = is_r_diagonal_element(u)
        assert verdict.passed
        assert verdict.check == "r_diagonal_element"


class TestDeterminingSeries:
    def test_zero_pair(self):
        series = determining_series(JointCumulantSpec(2, 2, 4), 2)
        assert dict(series.f.table) == {} and dict(series.g.table) == {}
        assert series.recon.passed
        assert series.collapsed.passed

    def test_scalar_pair(self):
        u = scalar_spec({(1, 2): 1, (2, 1): 1}, s=2, N=4)
        series = determining_series(u, 2)
        one = BMatrix.identity(1)
        assert series.f.coefficient((1,)).apply([]) == one
        assert series.g.coefficient((1,)).apply([]) == one
        assert series.f.coefficient((1, 1)).is_zero()
        assert series.recon.passed
        assert series.collapsed.passed

    @pytest.mark.parametrize("seed", range(4))
    def test_operator_valued_reconstruction(self, seed):
        series = determining_series(alternating_pair(seed), 2)
        assert series.recon.passed
        assert series.f_full[2].r == 3

    @pytest.mark.parametrize("seed", range(3))
    def test_scalar_symmetric_collapsed_identity(self, seed):
        source = random_spec(seed, 1, 6, s=1, parity="even")
        table = {}
        for key, value in source.items():
            half = len(key) // 2
            table[(1, 2) * half] = value
            table[(2, 1) * half] = value
        series = determining_series(JointCumulantSpec(2, 1, 6, table), 3)
        assert series.recon.passed
        assert series.collapsed.passed

    def test_collapsed_identity_is_informational(self):
        u = scalar_spec({(1, 2): 1, (2, 1): 2}, s=2, N=4)
        series = determining_series(u, 2)
        assert series.recon.passed
        assert not series.collapsed.passed
        assert series.collapsed.witness_tuple == (2, (1, 1))

    def test_restricted_slots(self):
        u = alternating_pair(1)
        series = determining_series(u, 2)
        b = m2(1, 2, 3, 4)
        assert series.f.coefficient((1, 1))(b) == u.coefficient((1, 2, 1, 2))(I2, b, I2)

    def test_precondition(self):
        u = scalar_spec({(1, 1): 1}, s=2)
        with pytest.raises(PreconditionError) as info:
            determining_series(u, 2)
        assert info.value.verdict.witness_tuple == (2, (1, 1))

    def test_truncation(self):
        with pytest.raises(TruncationError):
            determining_series(JointCumulantSpec(2, 1, 3), 2)
