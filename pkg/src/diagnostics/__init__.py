"""Diagnostics: evenness, traciality, R-diagonality and the randomized harness."""

from src.diagnostics.evenness import check_even_moment_formula, is_b_even
from src.diagnostics.generators import inject_cumulant, random_even_spec, random_spec
from src.diagnostics.harness import (
    HarnessSummary,
    ProductPairReport,
    run_seeds,
    verify_even_product_pair,
)
from src.diagnostics.rdiagonal import (
    DeterminingSeries,
    determining_series,
    is_r_diagonal,
    is_r_diagonal_element,
    reconstruct_alternating,
)
from src.diagnostics.trace import check_b_trace
from src.diagnostics.verdict import Verdict, compare_families

__all__ = [
    "DeterminingSeries",
    "HarnessSummary",
    "ProductPairReport",
    "Verdict",
    "check_b_trace",
    "check_even_moment_formula",
    "compare_families",
    "determining_series",
    "inject_cumulant",
    "is_b_even",
    "is_r_diagonal",
    "is_r_diagonal_element",
    "random_even_spec",
    "random_spec",
    "reconstruct_alternating",
    "run_seeds",
    "verify_even_product_pair",
]
