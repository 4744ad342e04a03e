"""Exact operator-valued free probability: noncrossing lattices, B-valued cumulants, R-diagonal pairs."""

__version__ = "0.1.0"
