"""Tests for the star product and its validators."""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from src.errors import ConfigValidationError, DegreeMismatchError, DimensionMismatchError, NonConstantPoissonError
from src.exact import HomPoly, MuScalar
from src.star import (
    PoissonMatrix,
    StarContext,
    apply_bidifferential,
    bidifferential_direct,
    bidifferential_iterated,
    check_jacobi,
    specialize_mu,
)
from tests.conftest import polynomials, skew_matrices, z

HALF_MU = MuScalar.mu(1, Fraction(1, 2))


class TestStarProduct:
    def test_generators(self, ctx2):
        z0, z1 = z(2, 0), z(2, 1)
        assert ctx2.star(z0, z1) == z0 * z1 + HomPoly.constant(2, HALF_MU)
        assert ctx2.star(z1, z0) == z0 * z1 - HomPoly.constant(2, HALF_MU)

    def test_generator_commutators(self, ctx4):
        lam = ctx4.lambda_matrix
        for a in range(4):
            for b in range(4):
                expected = lam.entry(a, b) * MuScalar.mu(1)
                assert ctx4.commutator(z(4, a), z(4, b)) == expected

    def test_quadratic_square(self, ctx2):
        q = z(2, 0) * z(2, 1)
        result = ctx2.star(q, q)
        assert result == q * q - HomPoly.constant(2, MuScalar.mu(2, Fraction(1, 4)))
        assert result.render() == "z0^2*z1^2 - (1/4)*mu^2"

    def test_zero_and_constants(self, ctx2):
        z0 = z(2, 0)
        assert ctx2.star(z0, HomPoly.zero(2)).is_zero()
        assert ctx2.star(HomPoly.constant(2, 3), z0) == z0 * 3

    def test_star_power(self, ctx2):
        assert ctx2.star_power(z(2, 0), 3) == z(2, 0) ** 3
        assert ctx2.star_power(z(2, 1), 0) == HomPoly.constant(2, 1)

    def test_wrong_ring(self, ctx2):
        with pytest.raises(DimensionMismatchError):
            ctx2.star(z(2, 0), z(3, 0))

    @given(skew_matrices(3), polynomials(3, 2, 2), polynomials(3, 2, 2), polynomials(3, 2, 2))
    def test_associativity(self, lam, f, g, h):
        ctx = StarContext.from_matrix(lam)
        assert ctx.star(ctx.star(f, g), h) == ctx.star(f, ctx.star(g, h))

    @pytest.mark.slow
    @settings(max_examples=100)
    @given(skew_matrices(4), polynomials(4, 3, 3), polynomials(4, 3, 3), polynomials(4, 3, 3))
    def test_associativity_four_variables(self, lam, f, g, h):
        ctx = StarContext.from_matrix(lam)
        assert ctx.star(ctx.star(f, g), h) == ctx.star(f, ctx.star(g, h))

    @given(skew_matrices(2), polynomials(2), polynomials(2))
    def test_commutator_leading_term_is_poisson_bracket(self, lam, f, g):
        ctx = StarContext.from_matrix(lam)
        bracket = ctx.commutator(f, g)
        assert bracket.mu_coefficient(0).is_zero()
        assert bracket.mu_coefficient(1) == ctx.poisson_bracket(f, g)
        assert bracket.mu_coefficient(2).is_zero()

    def test_poisson_bracket(self, ctx2):
        assert ctx2.poisson_bracket(z(2, 0), z(2, 1)) == HomPoly.constant(2, 1)
        assert ctx2.poisson_bracket(z(2, 0) ** 2, z(2, 1)) == z(2, 0) * 2


class TestGradedComponent:
    def test_components(self, ctx2):
        q = z(2, 0) * z(2, 1)
        assert ctx2.graded_star_component(q, q, 4) == q * q
        assert ctx2.graded_star_component(q, q, 2).is_zero()
        assert ctx2.graded_star_component(q, q, 0) == HomPoly.constant(2, MuScalar.mu(2, Fraction(-1, 4)))

    @pytest.mark.parametrize("degree", [1, 3, 5])
    def test_bad_degree(self, ctx2, degree):
        q = z(2, 0) * z(2, 1)
        with pytest.raises(DegreeMismatchError):
            ctx2.graded_star_component(q, q, degree)

    @pytest.mark.parametrize("f_exps, g_exps, degree", [
        ((1, 1), (1, 1), -2),
        ((1, 1), (1, 1), -4),
        ((1, 0), (1, 1), -1),
        ((2, 0), (0, 1), -1),
    ])
    def test_too_many_contractions(self, ctx2, f_exps, g_exps, degree):
        f = HomPoly.monomial(f_exps)
        g = HomPoly.monomial(g_exps)
        with pytest.raises(DegreeMismatchError):
            ctx2.graded_star_component(f, g, degree)

    def test_needs_homogeneous_input(self, ctx2):
        with pytest.raises(DegreeMismatchError):
            ctx2.graded_star_component(z(2, 0) + HomPoly.constant(2, 1), z(2, 1), 1)


class TestValidators:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_lambda_relation_constant(self, ctx4, k):
        assert ctx4.check_lambda_relation(k, 3)

    def test_lambda_relation_fails_for_linear_entries(self):
        z0 = z(2, 0)
        lam = PoissonMatrix([[HomPoly.zero(2), z0], [-z0, HomPoly.zero(2)]])
        ctx = StarContext(2, lam)
        assert ctx.check_lambda_relation(1, 3)
        assert not ctx.check_lambda_relation(2, 3)

    def test_operator_forms_agree_on_polynomials(self, ctx2):
        f = z(2, 0) ** 2 * z(2, 1)
        g = z(2, 1) ** 2 + z(2, 0)
        lam = ctx2.lambda_matrix
        assert apply_bidifferential(bidifferential_iterated(lam, 2), f, g) == apply_bidifferential(
            bidifferential_direct(lam, 2), f, g
        )

    def test_jacobi_constant(self, ctx4):
        assert check_jacobi(ctx4.lambda_matrix)

    def test_jacobi_linear_rotation_algebra(self):
        z0, z1, z2 = (z(3, i) for i in range(3))
        zero = HomPoly.zero(3)
        lam = PoissonMatrix([[zero, z2, -z1], [-z2, zero, z0], [z1, -z0, zero]])
        assert check_jacobi(lam)

    def test_jacobi_failure(self):
        zero = HomPoly.zero(3)
        one = HomPoly.constant(3, 1)
        z0 = z(3, 0)
        lam = PoissonMatrix([[zero, z0, -one], [-z0, zero, zero], [one, zero, zero]])
        assert not check_jacobi(lam)

    def test_non_skew_rejected(self):
        with pytest.raises(ConfigValidationError):
            PoissonMatrix([["0", "1"], ["1", "0"]])

    def test_non_constant_matrix(self):
        z0 = z(2, 0)
        lam = PoissonMatrix([[HomPoly.zero(2), z0], [-z0, HomPoly.zero(2)]])
        with pytest.raises(NonConstantPoissonError):
            StarContext(2, lam).star(z(2, 0), z(2, 1))


def test_specialize_mu(ctx2):
    product = ctx2.star(z(2, 0), z(2, 1))
    assert specialize_mu(product, 2) == z(2, 0) * z(2, 1) + HomPoly.constant(2, 1)
    assert specialize_mu(product, 0) == z(2, 0) * z(2, 1)
