"""Projective geometry module initialization."""

from .graded import GradedPoly, graded_piece, h0_dimension, brute_force_monomials, monomial_basis, h0_table
from .localization import (
    LocalFraction,
    localize,
    alpha,
    transition,
    sections_agree,
    chart_compatibility,
    chart_family_summary,
)

__all__ = [
    'GradedPoly', 'graded_piece', 'h0_dimension', 'brute_force_monomials', 'monomial_basis', 'h0_table',
    'LocalFraction', 'localize', 'alpha', 'transition', 'sections_agree', 'chart_compatibility',
    'chart_family_summary',
]
