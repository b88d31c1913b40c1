"""Star product module initialization."""

from .star_product import (
    PoissonMatrix,
    StarContext,
    star,
    commutator,
    poisson_bracket,
    graded_star_component,
    check_lambda_relation,
    check_jacobi,
    specialize_mu,
    bidifferential_iterated,
    bidifferential_direct,
    apply_bidifferential,
)

__all__ = [
    'PoissonMatrix', 'StarContext', 'star', 'commutator', 'poisson_bracket',
    'graded_star_component', 'check_lambda_relation', 'check_jacobi', 'specialize_mu',
    'bidifferential_iterated', 'bidifferential_direct', 'apply_bidifferential',
]
