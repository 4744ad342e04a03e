"""Spec file persistence."""

from src.storage.spec_files import (
    SpecFileModel,
    format_rational,
    load_matrix,
    load_spec,
    matrix_to_dict,
    parse_rational,
    save_spec,
    spec_from_dict,
    spec_to_dict,
)

__all__ = [
    "SpecFileModel",
    "format_rational",
    "load_matrix",
    "load_spec",
    "matrix_to_dict",
    "parse_rational",
    "save_spec",
    "spec_from_dict",
    "spec_to_dict",
]
