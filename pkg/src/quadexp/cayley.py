"""
Cayley Transform
C(X) = (1 - X)(1 + X)^{-1} on exact matrices and on matrix series, and the identities it satisfies.
"""

from typing import Dict, Union, overload

from loguru import logger

from ..errors import SingularMatrixError
from ..exact import ExactMatrix, I_UNIT
from .series import MatrixSeries

Cayleyable = Union[ExactMatrix, MatrixSeries]


@overload
def cayley(x: ExactMatrix) -> ExactMatrix: ...


@overload
def cayley(x: MatrixSeries) -> MatrixSeries: ...


def cayley(x: Cayleyable) -> Cayleyable:
    """
    Cayley transform of a matrix or of a matrix series.

    Args:
        x: Exact matrix, or a matrix series whose constant term X0 has 1 + X0 invertible

    Returns:
        (1 - X)(1 + X)^{-1} of the same kind; the map is its own inverse
    """
    if isinstance(x, MatrixSeries):
        one = MatrixSeries.identity(x.dim, x.order)
        try:
            denominator = (one + x).inverse()
        except SingularMatrixError:
            logger.error("Cayley transform undefined: 1 + X(0) is singular")
            raise SingularMatrixError("1 + X is singular at t = 0") from None
        return (one - x) * denominator
    one = ExactMatrix.identity(x.size)
    try:
        denominator = (one + x).inverse()
    except SingularMatrixError:
        logger.error("Cayley transform undefined: 1 + X is singular")
        raise SingularMatrixError("1 + X is singular") from None
    return (one - x) @ denominator


def exponential_side(a: ExactMatrix, order: int) -> MatrixSeries:
    """e^{2i a t} as a series in t."""
    return MatrixSeries.linear(a * (2 * I_UNIT), order).apply("exp")


def tangent_side(a: ExactMatrix, order: int) -> MatrixSeries:
    """C(-i tan(a t)) as a series in t."""
    tangent = MatrixSeries.linear(a, order).apply("tan")
    return cayley(tangent * (-I_UNIT))


def log_side(a: ExactMatrix, order: int) -> MatrixSeries:
    """2i arctan(i C(e^{2i a t})), which recovers 2i a t."""
    inner = cayley(exponential_side(a, order)) * I_UNIT
    return inner.apply("arctan") * (2 * I_UNIT)


def cayley_identity_checks(a: ExactMatrix, order: int) -> Dict[str, bool]:
    """
    Check the exponential and logarithm forms of the Cayley transform as series in t.

    Args:
        a: Square exact matrix, substituted as a*t
        order: Truncation order of every series

    Returns:
        Dict with the outcome of 'exponential' (e^{2iat} = C(-i tan(at))),
        'logarithm' (log e^{2iat} = 2i arctan(i C(e^{2iat}))) and 'involution'
    """
    exp_series = exponential_side(a, order)
    results = {
        'exponential': exp_series == tangent_side(a, order),
        'logarithm': log_side(a, order) == MatrixSeries.linear(a * (2 * I_UNIT), order),
        'involution': cayley(cayley(exp_series)) == exp_series,
    }
    logger.debug(f"Cayley identity checks at order {order}: {results}")
    return results


def is_symplectic(m: ExactMatrix, lam: ExactMatrix) -> bool:
    """True iff M^T Lambda M = Lambda."""
    return m.T @ lam @ m == lam


def check_symplectic_cayley(x: ExactMatrix, lam: ExactMatrix) -> bool:
    """
    For X with Lambda X symmetric, C(X) preserves Lambda.

    Raises:
        ValueError: If Lambda X is not symmetric
    """
    if not (lam @ x).is_symmetric():
        raise ValueError("Symplectic Cayley check needs Lambda X symmetric")
    return is_symplectic(cayley(x), lam)

