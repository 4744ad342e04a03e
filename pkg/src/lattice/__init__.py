"""Noncrossing partition lattice: enumeration, Kreweras complement, Möbius function."""

from src.lattice.enumeration import enumerate_nc, enumerate_nc_even, enumerate_nc_odd
from src.lattice.kreweras import alternating_union, kreweras
from src.lattice.mobius import mobius_nc, mobius_table, mobius_to_top
from src.lattice.partition import SetPartition, as_partition, is_noncrossing, leq_refine

__all__ = [
    "SetPartition",
    "alternating_union",
    "as_partition",
    "enumerate_nc",
    "enumerate_nc_even",
    "enumerate_nc_odd",
    "is_noncrossing",
    "kreweras",
    "leq_refine",
    "mobius_nc",
    "mobius_table",
    "mobius_to_top",
]
