"""Tests for free unions, product words and boxed convolution."""

import pytest

from src.balgebra.matrix import BMatrix
from src.balgebra.multilinear import MultilinearCoefficient
from src.constructions import (
    add_free_variables,
    boxed_convolution,
    boxed_convolution_full,
    free_union,
    left_scale,
    mobius_transform,
    product_word_cumulants,
    zeta_transform,
)
from src.diagnostics.generators import random_spec
from src.engine import (
    JointCumulantSpec,
    JointMomentSpec,
    cumulants_from_moments,
    moments_from_cumulants,
)
from src.errors import ArgumentError, DimensionError, TruncationError
from tests.helpers import m2, scalar_spec

ONE = BMatrix.identity(1)


class TestFreeUnion:
    def test_relabels_and_truncates(self):
        a = scalar_spec({(1, 1): 1}, N=4)
        b = scalar_spec({(1,): 2, (1, 1, 1): 3}, N=3)
        u = free_union(a, b)
        assert (u.s, u.N) == (2, 3)
        assert list(u.table) == [(2,), (1, 1), (2, 2, 2)]
        assert u.coefficient((1, 2)).is_zero()

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            free_union(JointCumulantSpec(1, 1, 2), JointCumulantSpec(1, 2, 2))

    def test_sum_of_free_variables_adds_cumulants(self):
        u = free_union(scalar_spec({(1, 1): 1}), scalar_spec({(1, 1): 2, (1,): 5}))
        total = add_free_variables(u, [[1, 2]])
        assert total == scalar_spec({(1, 1): 3, (1,): 5})

    @pytest.mark.parametrize("d", [1, 2])
    @pytest.mark.parametrize("seed", range(3))
    def test_sum_cumulants_match_moments_of_the_sum(self, d, seed):
        a, b = random_spec(seed, d, 4), random_spec(seed + 30, d, 4)
        union = free_union(a, b)
        moments = moments_from_cumulants(union)
        table = {}
        for n in range(1, 5):
            total = MultilinearCoefficient.zero(d, n - 1)
            for indices in union.tuples(n):
                total = total + moments.coefficient(indices)
            table[(1,) * n] = total
        from_moments = cumulants_from_moments(JointMomentSpec(1, d, 4, table))
        assert from_moments == add_free_variables(union, [[1, 2]])

    def test_groups_must_partition(self):
        u = JointCumulantSpec(3, 1, 2)
        with pytest.raises(ArgumentError):
            add_free_variables(u, [[1, 2], [2, 3]])
        with pytest.raises(ArgumentError):
            add_free_variables(u, [[1, 2]])
        with pytest.raises(ArgumentError):
            add_free_variables(u, [[1, 2, 3], []])

    def test_left_scale(self):
        identity_map = MultilinearCoefficient.from_function(2, 1, lambda b: b)
        u = JointCumulantSpec(1, 2, 2, {(1, 1): identity_map})
        scale = m2(1, 2, 0, 1)
        scaled = left_scale(scale, u, 1)
        b2 = m2(0, 1, 1, 0)
        assert scaled.coefficient((1, 1))(b2) == scale @ b2 @ scale

    def test_left_scale_scalar(self):
        u = scalar_spec({(1,): 1, (1, 1): 1}, N=2)
        scaled = left_scale(BMatrix([[3]]), u, 1)
        assert scaled == scalar_spec({(1,): 3, (1, 1): 9}, N=2)


class TestProductWords:
    def test_constant_factor_is_transparent(self):
        x = scalar_spec({(1, 1): 1}, N=6)
        y = scalar_spec({(1,): 1}, N=6)
        product = product_word_cumulants(free_union(x, y), [[1, 2]], 3)
        assert product == x.truncate(3)

    def test_truncation_is_reported(self):
        u = free_union(JointCumulantSpec(1, 1, 4), JointCumulantSpec(1, 1, 4))
        with pytest.raises(TruncationError) as info:
            product_word_cumulants(u, [[1, 2]], 3)
        assert info.value.required == 6

    def test_word_validation(self):
        u = JointCumulantSpec(2, 1, 4)
        with pytest.raises(ArgumentError):
            product_word_cumulants(u, [], 1)
        with pytest.raises(ArgumentError):
            product_word_cumulants(u, [[1, 3]], 1)

    @pytest.mark.parametrize("seed", range(10))
    def test_boxed_convolution_gives_product_cumulants(self, seed):
        x = random_spec(seed, 2, 6)
        y = random_spec(seed + 50, 2, 6)
        product = product_word_cumulants(free_union(x, y), [[1, 2]], 3)
        assert boxed_convolution(x.truncate(3), y.truncate(3)) == product

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(10))
    def test_boxed_convolution_gives_product_cumulants_order_four(self, seed):
        x = random_spec(seed, 2, 8, parity="even")
        y = random_spec(seed + 1, 2, 8, parity="even")
        product = product_word_cumulants(free_union(x, y), [[1, 2]], 4)
        assert boxed_convolution(x.truncate(4), y.truncate(4)) == product


class TestBoxedConvolution:
    @pytest.mark.parametrize("seed", range(10))
    def test_zeta_mobius_inverse(self, seed):
        f = random_spec(seed, 2, 5)
        assert mobius_transform(zeta_transform(f)) == f
        assert zeta_transform(mobius_transform(f)) == f

    @pytest.mark.parametrize("seed", range(3))
    def test_scalar_convolution_is_associative(self, seed):
        f, g, h = (random_spec(seed + k, 1, 4) for k in (0, 10, 20))
        left = boxed_convolution(boxed_convolution(f, g), h)
        assert left == boxed_convolution(f, boxed_convolution(g, h))

    def test_zeta_is_moment_passage(self, semicircle):
        assert dict(zeta_transform(semicircle).table) == dict(moments_from_cumulants(semicircle).table)

    def test_symmetric_identity_matches_trivial(self):
        f, g = random_spec(1, 2, 3), random_spec(2, 2, 3)
        assert boxed_convolution(f, g, "symm", BMatrix.identity(2)) == boxed_convolution(f, g)

    def test_full_maps_specialize(self):
        f, g = random_spec(3, 2, 3), random_spec(4, 2, 3)
        trivial = boxed_convolution(f, g)
        full = boxed_convolution_full(f, g)
        assert sorted(full) == [1, 2, 3]
        assert full[3].r == 4
        one = BMatrix.identity(2)
        b2, b3 = m2(1, 0, 2, -1), m2(0, 3, 1, 1)
        assert full[3](b2, one, b3, one) == trivial.coefficient((1, 1, 1))(b2, b3)
        beta = m2(2, 0, 1, 1)
        symm = boxed_convolution(f, g, "symm", beta)
        assert full[2](b2, beta) == symm.coefficient((1, 1))(b2)

    def test_unit_is_neutral(self, semicircle):
        unit = scalar_spec({(1,): 1}, N=6)
        assert boxed_convolution(unit, semicircle) == semicircle
        assert boxed_convolution(semicircle, unit) == semicircle

    def test_free_semicircle_product_vanishes(self, semicircle):
        assert dict(boxed_convolution(semicircle.truncate(4), semicircle.truncate(4)).table) == {}

    def test_errors(self, semicircle):
        with pytest.raises(ArgumentError):
            boxed_convolution(semicircle, semicircle, "symm")
        with pytest.raises(ArgumentError):
            boxed_convolution(semicircle, semicircle, "full")
        with pytest.raises(ArgumentError):
            boxed_convolution(free_union(semicircle, semicircle), semicircle)
        with pytest.raises(DimensionError):
            boxed_convolution(semicircle, random_spec(0, 2, 3))
