"""Generalised Rudin-Shapiro (block-additive) sequences over finite abelian groups."""

from grs.groups import GroupElement, GroupSpec, SpecMismatchError
from grs.weights import WeightFunction, ValidationReport, validate_difference_condition, catalog_matrix

__all__ = [
    "GroupElement",
    "GroupSpec",
    "SpecMismatchError",
    "WeightFunction",
    "ValidationReport",
    "validate_difference_condition",
    "catalog_matrix",
]
