"""
Twistor Incidence
Pullback along the incidence relation of CP^3 with C^4 x CP^1, and the deformed
commutation relations of the fibre coordinates under the star product.

Source ring: z0, z1 are the fibre coordinates z^1', z^2'; z2, z3 are pi_1, pi_2.
Target ring: x11, x12, x21, x22, pi1, pi2 (indices 0..5).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Sequence, Set, Tuple

from loguru import logger

from ..errors import ConfigValidationError, DimensionMismatchError, PreconditionError
from ..exact import ExactMatrix, GaussRational, HomPoly, MuScalar
from ..quadexp import PolySeries, quad_form, star_exp_poly, star_exp_series
from ..star import StarContext

SOURCE_VARS = 4
TARGET_VARS = 6
TARGET_NAMES = ["x11", "x12", "x21", "x22", "pi1", "pi2"]
PI_SLOTS = (4, 5)


def x_slot(alpha: int, alpha_dot: int) -> int:
    """Position of x^{alpha alpha_dot} (0-based indices) in the target ring and in D."""
    return 2 * alpha + alpha_dot


def _target_var(index: int) -> HomPoly:
    return HomPoly.variable(TARGET_VARS, index)


@dataclass(frozen=True)
class IncidenceContext:
    """
    Data of the twistor double fibration: the skew 4x4 matrix D^{alpha alpha_dot, beta beta_dot}.

    Rows and columns of D follow the x-slots x11, x12, x21, x22; hbar is mu.
    """

    d_matrix: ExactMatrix
    _star: StarContext = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.d_matrix.shape != (4, 4):
            raise ConfigValidationError(f"D must be 4x4, got shape {self.d_matrix.shape}")
        if not self.d_matrix.is_skew():
            raise ConfigValidationError(f"D is not skew-symmetric: {self.d_matrix.to_strings()}")
        object.__setattr__(self, "_star", StarContext.from_matrix(self.poisson_matrix()))

    @property
    def star_context(self) -> StarContext:
        return self._star

    def poisson_matrix(self) -> ExactMatrix:
        """The induced 6x6 Poisson matrix: D on the x-slots, zero rows and columns for pi."""
        rows = [[0] * TARGET_VARS for _ in range(TARGET_VARS)]
        for i in range(4):
            for j in range(4):
                rows[i][j] = self.d_matrix[i, j]
        return ExactMatrix(rows)

    def x_context(self) -> StarContext:
        """Star context on the four x-variables alone, driven by D."""
        return StarContext.from_matrix(self.d_matrix)


def incidence_pullback(p: HomPoly) -> HomPoly:
    """
    Substitute z^a' = x^{1a'} pi_1 + x^{2a'} pi_2 and pi_a = pi_a.

    Raises:
        DimensionMismatchError: If p is not a polynomial in four variables
    """
    if p.nvars != SOURCE_VARS:
        raise DimensionMismatchError(f"Incidence pullback takes 4 variables, got {p.nvars}")
    pi = [_target_var(slot) for slot in PI_SLOTS]
    images = []
    for alpha_dot in range(2):
        images.append(sum(
            (_target_var(x_slot(alpha, alpha_dot)) * pi[alpha] for alpha in range(2)),
            HomPoly.zero(TARGET_VARS),
        ))
    images.extend(pi)
    return p.substitute(images)


def pi_degree(p: HomPoly) -> Set[int]:
    """pi-degrees of the monomials of p (target ring)."""
    if p.nvars != TARGET_VARS:
        raise DimensionMismatchError(f"Expected a polynomial in {TARGET_VARS} variables")
    return {sum(monomial[slot] for slot in PI_SLOTS) for monomial, _ in p.items()}


def bidegree(p: HomPoly) -> Set[Tuple[int, int]]:
    """(x-degree, pi-degree) pairs occurring in p."""
    if p.nvars != TARGET_VARS:
        raise DimensionMismatchError(f"Expected a polynomial in {TARGET_VARS} variables")
    return {(sum(monomial[:4]), sum(monomial[4:])) for monomial, _ in p.items()}


def expected_commutator(ctx: IncidenceContext, a_dot: int, b_dot: int) -> HomPoly:
    """mu * sum_{alpha, beta} D^{alpha a_dot, beta b_dot} pi_alpha pi_beta, by direct contraction."""
    result = HomPoly.zero(TARGET_VARS)
    pi = [_target_var(slot) for slot in PI_SLOTS]
    for alpha, beta in product(range(2), repeat=2):
        entry = ctx.d_matrix[x_slot(alpha, a_dot), x_slot(beta, b_dot)]
        if entry:
            result = result + (pi[alpha] * pi[beta]).scale(entry)
    return result.scale(MuScalar.mu(1))


def fibre_coordinate(a_dot: int) -> HomPoly:
    """Pullback of z^{a_dot}."""
    return incidence_pullback(HomPoly.variable(SOURCE_VARS, a_dot))


def twistor_commutator_check(ctx: IncidenceContext) -> bool:
    """[z^a', z^b']_# = mu D^{alpha a', beta b'} pi_alpha pi_beta for every a', b'."""
    for a_dot, b_dot in product(range(2), repeat=2):
        lhs = ctx.star_context.commutator(fibre_coordinate(a_dot), fibre_coordinate(b_dot))
        if lhs != expected_commutator(ctx, a_dot, b_dot):
            logger.info(f"Twistor commutator fails for ({a_dot}, {b_dot}): {lhs}")
            return False
    return True


def _embed_fibre_form(a: ExactMatrix) -> HomPoly:
    if a.shape != (2, 2) or not a.is_symmetric():
        raise PreconditionError("The twistor quadratic form needs a symmetric 2x2 matrix in z^1', z^2'")
    rows = [[0] * SOURCE_VARS for _ in range(SOURCE_VARS)]
    for i in range(2):
        for j in range(2):
            rows[i][j] = a[i, j]
    return quad_form(ExactMatrix(rows))


def twistor_star_exp(ctx: IncidenceContext, a: ExactMatrix, order: int) -> PolySeries:
    """
    Star exponential of (1/mu) A[z^1', z^2'] pulled back to the incidence space.

    The pi-variables are inert; the t^k coefficient has pi-degree exactly 2k.
    """
    generator = incidence_pullback(_embed_fibre_form(a)).scale(MuScalar.mu(-1))
    return star_exp_poly(ctx.star_context, generator, order)


def specialize_pi(p: HomPoly, pi_values: Sequence[GaussRational]) -> HomPoly:
    """Set pi1, pi2 to constants; the result lives in the four x-variables."""
    if p.nvars != TARGET_VARS or len(pi_values) != 2:
        raise DimensionMismatchError("Specialization needs a target-ring polynomial and two pi values")
    images = [HomPoly.variable(4, i) for i in range(4)]
    images.extend(HomPoly.constant(4, GaussRational.coerce(v)) for v in pi_values)
    return p.substitute(images)


def x_form(a: ExactMatrix, pi_values: Sequence[GaussRational]) -> ExactMatrix:
    """P^T A P, the quadratic form A[Z] in the x-variables after fixing pi."""
    pi = [GaussRational.coerce(v) for v in pi_values]
    p_rows: List[List[GaussRational]] = [[GaussRational(0)] * 4 for _ in range(2)]
    for alpha_dot in range(2):
        for alpha in range(2):
            p_rows[alpha_dot][x_slot(alpha, alpha_dot)] = pi[alpha]
    p_matrix = ExactMatrix(p_rows)
    return p_matrix.T @ a @ p_matrix


def twistor_oracle_check(ctx: IncidenceContext, a: ExactMatrix, pi_values: Sequence, order: int) -> bool:
    """
    Compare twistor_star_exp at fixed pi with the quadratic star exponential on the x-ring.

    pi is central, so fixing it commutes with the star product.
    """
    series = twistor_star_exp(ctx, a, order)
    oracle = star_exp_series(ctx.x_context(), x_form(a, pi_values), order)
    for k in range(order + 1):
        if specialize_pi(series[k], pi_values) != oracle[k]:
            logger.info(f"Twistor star exponential differs from the x-ring oracle at t^{k}")
            return False
    return True


def bidegree_law(p: HomPoly) -> bool:
    """Every monomial of the pullback of a z-homogeneous p has pi-degree deg p."""
    if p.is_zero():
        return incidence_pullback(p).is_zero()
    degrees: Dict[int, Set[int]] = {}
    for d, piece in p.homogeneous_components().items():
        degrees[d] = pi_degree(incidence_pullback(piece))
    return all(found <= {d} for d, found in degrees.items())
