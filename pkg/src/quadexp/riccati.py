"""
Riccati Flow
Series solutions of the matrix Riccati equation q' = (1 + q) a (1 - q) and of the
amplitude equation g' = -1/2 tr(a q) g, together with their residuals.
"""

from fractions import Fraction

from loguru import logger

from ..errors import SingularMatrixError
from ..exact import ExactMatrix
from .cayley import cayley
from .series import MatrixSeries, ScalarSeries

_MINUS_HALF = Fraction(-1, 2)


def riccati_solve(a: ExactMatrix, b: ExactMatrix, order: int) -> MatrixSeries:
    """
    Solve q' = (1 + q) a (1 - q), q(0) = b, through the Cayley transform.

    C(q) satisfies C(q)' = -2 a C(q), hence q(t) = C(e^{-2at} C(b)).

    Args:
        a: Constant coefficient matrix
        b: Initial value; 1 + b must be invertible
        order: Truncation order in t

    Returns:
        q(t) as a MatrixSeries of the given order

    Raises:
        SingularMatrixError: If 1 + b is singular
    """
    logger.debug(f"Solving Riccati flow of size {a.size} through order {order}")
    flow = MatrixSeries.linear(a * -2, order).apply("exp")
    return cayley(flow.right(cayley(b)))


def amplitude_matrix(a: ExactMatrix, b: ExactMatrix, order: int) -> MatrixSeries:
    """(e^{at}(1 + b) + e^{-at}(1 - b)) / 2; equal to 1 at t = 0."""
    one = ExactMatrix.identity(a.size)
    forward = MatrixSeries.linear(a, order).apply("exp")
    backward = MatrixSeries.linear(-a, order).apply("exp")
    return (forward.right(one + b) + backward.right(one - b)) * Fraction(1, 2)


def amplitude_solve(a: ExactMatrix, b: ExactMatrix, order: int) -> ScalarSeries:
    """
    Solve g' = -1/2 tr(a q) g with g(0) = 1.

    The solution is det^{-1/2} of the amplitude matrix, expanded on the branch
    with value 1 at t = 0.
    """
    if not (ExactMatrix.identity(a.size) + b).det():
        logger.error("Amplitude undefined: 1 + b is singular")
        raise SingularMatrixError("1 + b is singular")
    logger.debug(f"Solving amplitude equation of size {a.size} through order {order}")
    return amplitude_matrix(a, b, order).det().power_binomial(_MINUS_HALF)


def riccati_rhs(q: MatrixSeries, a: ExactMatrix) -> MatrixSeries:
    one = MatrixSeries.identity(q.dim, q.order)
    return (one + q).right(a) * (one - q)


def riccati_residual(q: MatrixSeries, a: ExactMatrix) -> MatrixSeries:
    """q' - (1 + q) a (1 - q); zero through order K-1 for a solution."""
    return q.deriv() - riccati_rhs(q, a)


def amplitude_residual(g: ScalarSeries, q: MatrixSeries, a: ExactMatrix) -> ScalarSeries:
    """g' + 1/2 tr(a q) g."""
    return g.deriv() - q.left(a).trace() * g * _MINUS_HALF


def cayley_flow_residual(q: MatrixSeries, a: ExactMatrix) -> MatrixSeries:
    """C(q)' + 2 a C(q); vanishes exactly when q solves the Riccati flow."""
    w = cayley(q)
    return w.deriv() + w.left(a) * 2


def tanh_phase(a: ExactMatrix, order: int) -> MatrixSeries:
    """tanh(a t), the Riccati solution with q(0) = 0."""
    return MatrixSeries.linear(a, order).apply("tanh")
