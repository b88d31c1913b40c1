"""
Star Exponentials of Quadratic Forms
Brute-force series of e_#^{(t/mu) A[Z]}, the closed form g(t) e^{(1/mu) Q(t)[Z]},
and the checks tying the two together.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Dict, Optional, Tuple

from loguru import logger

from ..errors import DimensionMismatchError, PreconditionError, SingularMatrixError
from ..exact import ExactMatrix, GaussRational, HomPoly, I_UNIT, MuScalar
from ..star import StarContext
from .riccati import amplitude_solve, riccati_rhs, riccati_solve
from .series import MatrixSeries, PolySeries, ScalarSeries

_INV_MU = MuScalar.mu(-1)


def quad_form(a: ExactMatrix) -> HomPoly:
    """A[Z] = sum_ij A_ij z_i z_j for a symmetric matrix A."""
    if not a.is_symmetric():
        raise PreconditionError("Quadratic forms are built from symmetric matrices")
    n = a.size
    terms: Dict[Tuple[int, ...], GaussRational] = {}
    for i in range(n):
        for j in range(n):
            if not a[i, j]:
                continue
            exps = [0] * n
            exps[i] += 1
            exps[j] += 1
            key = tuple(exps)
            terms[key] = terms.get(key, GaussRational(0)) + a[i, j]
    return HomPoly(n, terms)


def _generator(ctx: StarContext, a: ExactMatrix) -> HomPoly:
    if a.size != ctx.nvars:
        raise DimensionMismatchError(f"Quadratic form of size {a.size} for {ctx.nvars} variables")
    return quad_form(a).scale(_INV_MU)


def _lambda_inverse(ctx: StarContext) -> Tuple[ExactMatrix, ExactMatrix]:
    lam = ctx.lambda_matrix.constant_matrix()
    try:
        return lam, lam.inverse()
    except SingularMatrixError:
        logger.error("Closed form needs an invertible Poisson matrix")
        raise SingularMatrixError("Poisson matrix is singular; the closed form needs Lambda^{-1}") from None


def star_exp_series(ctx: StarContext, a: ExactMatrix, order: int) -> PolySeries:
    """
    Truncated star exponential sum_k t^k/k! (A[Z]/mu)^{#k}.

    Args:
        ctx: Star context
        a: Symmetric matrix of the quadratic form
        order: Truncation order K >= 0

    Returns:
        PolySeries whose t^k coefficient is the k-th star power divided by k!
    """
    return star_exp_poly(ctx, _generator(ctx, a), order)


def star_exp_poly(ctx: StarContext, generator: HomPoly, order: int) -> PolySeries:
    """Truncated star exponential sum_k t^k/k! generator^{#k} of an arbitrary polynomial."""
    if order < 0:
        raise ValueError("Series order must be non-negative")
    coeffs = [HomPoly.constant(ctx.nvars, 1)]
    for k in range(1, order + 1):
        coeffs.append(ctx.star(coeffs[-1], generator).scale(Fraction(1, k)))
        logger.debug(f"Star exponential coefficient {k} has {len(coeffs[-1].terms)} terms")
    return PolySeries(coeffs)


@dataclass(frozen=True)
class ExpAnsatz:
    """amplitude(t) * exp((1/mu) phase(t)[Z]) with a symmetric phase."""

    amplitude: ScalarSeries
    phase: MatrixSeries

    def __post_init__(self):
        if not self.phase.is_symmetric():
            raise ValueError("Every phase coefficient must be symmetric")
        if self.amplitude[0] != 1:
            raise ValueError("The amplitude starts at 1")

    @property
    def order(self) -> int:
        return min(self.amplitude.order, self.phase.order)

    def expand(self) -> PolySeries:
        return expand_ansatz(self)


def star_exp_closed_form(
    ctx: StarContext,
    a: ExactMatrix,
    b: Optional[ExactMatrix] = None,
    order: int = 4,
) -> ExpAnsatz:
    """
    Closed form of the star exponential with initial phase B.

    With q = -Lambda A, the phase is Q = -Lambda^{-1} q(t) where q solves the
    Riccati flow from -Lambda B; the amplitude is det^{-1/2} of the matching
    amplitude matrix.

    Raises:
        NonConstantPoissonError: If Lambda is not constant
        SingularMatrixError: If Lambda or 1 - Lambda B is singular
    """
    _generator(ctx, a)
    lam, lam_inv = _lambda_inverse(ctx)
    n = ctx.nvars
    b = ExactMatrix.zeros(n) if b is None else b
    if not b.is_symmetric() or b.size != n:
        raise PreconditionError("Initial phase must be a symmetric matrix of the context size")
    a_flow = -(lam @ a)
    b_flow = -(lam @ b)
    q = riccati_solve(a_flow, b_flow, order)
    g = amplitude_solve(a_flow, b_flow, order)
    phase = q.left(-lam_inv)
    logger.info(f"Closed-form star exponential computed through order {order}")
    return ExpAnsatz(amplitude=g, phase=phase)


def expand_ansatz(ansatz: ExpAnsatz) -> PolySeries:
    """Expand amplitude * exp((1/mu) Q(t)[Z]) in t; needs Q(0) = 0."""
    if not ansatz.phase[0].is_zero():
        raise PreconditionError("Only an ansatz with vanishing initial phase expands to polynomials")
    order = ansatz.order
    n = ansatz.phase.dim
    exponent = PolySeries([quad_form(ansatz.phase[k]).scale(_INV_MU) for k in range(order + 1)])
    amplitude = PolySeries([HomPoly.constant(n, ansatz.amplitude[k]) for k in range(order + 1)])
    return amplitude * exponent.exp()


def evolution_residual(ctx: StarContext, f: PolySeries, a: ExactMatrix, order: Optional[int] = None) -> PolySeries:
    """d/dt F - (A[Z]/mu) # F, of order one less than F."""
    if order is not None:
        f = f.truncate(order)
    h = _generator(ctx, a)
    if f.order == 0:
        return PolySeries([-ctx.star(h, f[0])])
    driven = PolySeries([ctx.star(h, f[k]) for k in range(f.order)])
    return f.deriv() - driven


def oracle_check(ctx: StarContext, a: ExactMatrix, order: int) -> bool:
    """Expanded closed form equals the brute-force star exponential coefficient by coefficient."""
    closed = expand_ansatz(star_exp_closed_form(ctx, a, None, order))
    brute = star_exp_series(ctx, a, order)
    for k in range(order + 1):
        if closed[k] != brute[k]:
            logger.info(f"Closed form and star exponential differ at t^{k}")
            return False
    return True


def phase_from_tangent(ctx: StarContext, a: ExactMatrix, order: int) -> MatrixSeries:
    """Q(t) = Lambda^{-1} (1/i) tan(i Lambda A t)."""
    lam, lam_inv = _lambda_inverse(ctx)
    tangent = MatrixSeries.linear((lam @ a) * I_UNIT, order).apply("tan")
    return (tangent * -I_UNIT).left(lam_inv)


def twisted_derivatives(ctx: StarContext, q: ExactMatrix):
    """
    Derivatives of exp(Q[Z]/mu) divided by exp(Q[Z]/mu).

    Returns a callable mapping a multi-index to the polynomial factor, built
    from d~_b p = d_b p + (2/mu)(Q Z)_b p.
    """
    n = ctx.nvars
    slopes = [quad_form(q).partial(b).scale(_INV_MU) for b in range(n)]
    cache: Dict[Tuple[int, ...], HomPoly] = {(0,) * n: HomPoly.constant(n, 1)}

    def factor(counts: Tuple[int, ...]) -> HomPoly:
        if counts in cache:
            return cache[counts]
        b = next(i for i, c in enumerate(counts) if c)
        lowered = counts[:b] + (counts[b] - 1,) + counts[b + 1:]
        inner = factor(lowered)
        cache[counts] = inner.partial(b) + slopes[b] * inner
        return cache[counts]

    return factor


def ansatz_generator(ctx: StarContext, a: ExactMatrix, q: ExactMatrix) -> HomPoly:
    """
    The polynomial P with (A[Z]/mu) # exp(Q[Z]/mu) = P exp(Q[Z]/mu).

    Args:
        ctx: Star context with constant Lambda
        a: Symmetric matrix of the driving quadratic form
        q: Symmetric phase matrix
    """
    h = _generator(ctx, a)
    lam = ctx.lambda_matrix.constant_matrix()
    n = ctx.nvars
    twisted = twisted_derivatives(ctx, q)
    pairs = [(i, j, lam[i, j]) for i in range(n) for j in range(n) if lam[i, j]]
    result = h
    for k in range(1, h.total_degree() + 1):
        level = HomPoly.zero(n)
        for sequence in product(pairs, repeat=k):
            left = [0] * n
            right = [0] * n
            weight = GaussRational(1)
            for i, j, value in sequence:
                left[i] += 1
                right[j] += 1
                weight = weight * value
            dh = h.derivative(tuple(left))
            if dh:
                level = level + (dh * twisted(tuple(right))).scale(weight)
        result = result + level.scale(MuScalar.mu(k, Fraction(1, 2 ** k * factorial(k))))
    return result


def mu_coefficient_check(ctx: StarContext, a: ExactMatrix, q: ExactMatrix) -> Dict[str, bool]:
    """
    Split the ansatz generator by mu-power.

    The mu^{-1} part must be Q'[Z] with Q' = A + A Lambda Q - Q Lambda A - Q Lambda A Lambda Q,
    the mu^0 part the constant -1/2 tr(Lambda A Lambda Q), and nothing else may occur.
    """
    lam = ctx.lambda_matrix.constant_matrix()
    n = ctx.nvars
    p = ansatz_generator(ctx, a, q)
    q_dot = a + a @ lam @ q - q @ lam @ a - q @ lam @ a @ lam @ q
    # Q' in the lambda-flow coordinates: -Lambda Q' equals riccati_rhs(-Lambda Q, -Lambda A)
    flow = riccati_rhs(MatrixSeries.constant(-(lam @ q), 0), -(lam @ a))[0]
    trace = (lam @ a @ lam @ q).trace() * Fraction(-1, 2)
    return {
        'riccati': p.mu_coefficient(-1) == quad_form(q_dot),
        'flow_coordinates': flow == -(lam @ q_dot),
        'amplitude': p.mu_coefficient(0) == HomPoly.constant(n, trace),
        'no_other_powers': set(p.mu_powers()) <= {-1, 0},
    }


def semigroup_check(ctx: StarContext, a: ExactMatrix, order: int) -> bool:
    """F_j # F_k = binom(j + k, j) F_{j+k} for all j + k <= order."""
    series = star_exp_series(ctx, a, order)
    for total in range(order + 1):
        for j in range(total + 1):
            lhs = ctx.star(series[j], series[total - j])
            if lhs != series[total].scale(comb(total, j)):
                logger.info(f"Semigroup property fails at (j, k) = ({j}, {total - j})")
                return False
    return True
