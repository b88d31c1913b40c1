"""Quadratic star exponential module initialization."""

from .series import (
    TruncatedSeries,
    ScalarSeries,
    MatrixSeries,
    PolySeries,
    taylor_coefficients,
    binomial_coefficients,
)
from .cayley import cayley, cayley_identity_checks, check_symplectic_cayley, is_symplectic
from .riccati import (
    riccati_solve,
    amplitude_solve,
    amplitude_matrix,
    riccati_residual,
    amplitude_residual,
    cayley_flow_residual,
    tanh_phase,
)
from .star_exponential import (
    ExpAnsatz,
    quad_form,
    star_exp_series,
    star_exp_poly,
    star_exp_closed_form,
    expand_ansatz,
    evolution_residual,
    oracle_check,
    phase_from_tangent,
    ansatz_generator,
    mu_coefficient_check,
    semigroup_check,
)

__all__ = [
    'TruncatedSeries', 'ScalarSeries', 'MatrixSeries', 'PolySeries',
    'taylor_coefficients', 'binomial_coefficients',
    'cayley', 'cayley_identity_checks', 'check_symplectic_cayley', 'is_symplectic',
    'riccati_solve', 'amplitude_solve', 'amplitude_matrix', 'riccati_residual',
    'amplitude_residual', 'cayley_flow_residual', 'tanh_phase',
    'ExpAnsatz', 'quad_form', 'star_exp_series', 'star_exp_poly', 'star_exp_closed_form', 'expand_ansatz',
    'evolution_residual', 'oracle_check', 'phase_from_tangent', 'ansatz_generator',
    'mu_coefficient_check', 'semigroup_check',
]
