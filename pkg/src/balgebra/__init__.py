"""Base algebra B = M_d over exact rationals and multilinear maps on it."""

from src.balgebra.matrix import BMatrix, b_arith, basis, to_fraction
from src.balgebra.multilinear import MultilinearCoefficient

__all__ = ["BMatrix", "MultilinearCoefficient", "b_arith", "basis", "to_fraction"]
