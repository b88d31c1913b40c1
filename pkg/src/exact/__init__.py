"""Exact arithmetic module initialization."""

from .scalars import GaussRational, MuScalar, ZERO, ONE, I_UNIT, MU_ZERO, MU_ONE
from .polynomial import HomPoly, Monomial, add, mul, partial, homogeneous_components, default_names
from .matrix import ExactMatrix, SymMatrix, SkewMatrix, as_matrix, standard_symplectic

__all__ = [
    'GaussRational', 'MuScalar', 'ZERO', 'ONE', 'I_UNIT', 'MU_ZERO', 'MU_ONE',
    'HomPoly', 'Monomial', 'add', 'mul', 'partial', 'homogeneous_components', 'default_names',
    'ExactMatrix', 'SymMatrix', 'SkewMatrix', 'as_matrix', 'standard_symplectic',
]
