"""Cumulant engine: spec families, nested contraction and the moment-cumulant transforms."""

from src.engine.contraction import eval_partitioned, plan_contraction
from src.engine.families import JointCumulantSpec, JointMomentSpec, JointSpec, Word
from src.engine.transforms import (
    cumulants_from_moments,
    extract_series,
    moments_from_cumulants,
    sum_over_nc,
)

__all__ = [
    "JointCumulantSpec",
    "JointMomentSpec",
    "JointSpec",
    "Word",
    "cumulants_from_moments",
    "eval_partitioned",
    "extract_series",
    "moments_from_cumulants",
    "plan_contraction",
    "sum_over_nc",
]
