"""Constructions of new distributions from old ones."""

from src.constructions.boxed import (
    boxed_convolution,
    boxed_convolution_full,
    mobius_transform,
    zeta_transform,
)
from src.constructions.free import add_free_variables, free_union, left_scale
from src.constructions.products import product_word_cumulants

__all__ = [
    "add_free_variables",
    "boxed_convolution",
    "boxed_convolution_full",
    "free_union",
    "left_scale",
    "mobius_transform",
    "product_word_cumulants",
    "zeta_transform",
]
