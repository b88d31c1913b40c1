"""Tests for exact scalars, polynomials and matrices."""

from fractions import Fraction

import pytest
from hypothesis import given
from sympy.polys.domains import QQ, QQ_I

from src.errors import ConfigValidationError, DimensionMismatchError, PoleError, SingularMatrixError
from src.exact import (
    ExactMatrix,
    GaussRational,
    HomPoly,
    I_UNIT,
    MuScalar,
    SkewMatrix,
    SymMatrix,
    standard_symplectic,
)
from tests.conftest import gauss_rationals, polynomials, square_matrices


class TestGaussRational:
    @pytest.mark.parametrize("text, re, im", [
        ("3", 3, 0),
        ("-3/4", Fraction(-3, 4), 0),
        ("i", 0, 1),
        ("-i", 0, -1),
        ("-2/5i", 0, Fraction(-2, 5)),
        ("1/2+1/3i", Fraction(1, 2), Fraction(1, 3)),
        ("1/2-i", Fraction(1, 2), -1),
    ])
    def test_parse(self, text, re, im):
        value = GaussRational.parse(text)
        assert value.re == re
        assert value.im == im

    @pytest.mark.parametrize("text", ["", "1.5", "abc", "1/2/3"])
    def test_parse_rejects_garbage(self, text):
        with pytest.raises(ValueError):
            GaussRational.parse(text)

    @given(gauss_rationals())
    def test_str_parse_fixpoint(self, value):
        assert GaussRational.parse(str(value)) == value

    def test_i_squared(self):
        assert I_UNIT * I_UNIT == -1

    @given(gauss_rationals(), gauss_rationals())
    def test_division_inverts_multiplication(self, a, b):
        if b:
            assert (a * b) / b == a

    def test_inverse_of_zero(self):
        with pytest.raises(ZeroDivisionError):
            GaussRational(0).inverse()

    def test_conjugate_and_norm(self):
        value = GaussRational(Fraction(1, 2), 2)
        assert value.conjugate() == GaussRational(Fraction(1, 2), -2)
        assert value * value.conjugate() == value.norm()

    def test_backed_by_gaussian_rational_domain(self):
        value = GaussRational.parse("1/2-3i")
        assert value.domain_value == QQ_I(QQ(1, 2), QQ(-3))
        assert GaussRational.from_domain(QQ_I.imag_unit) == I_UNIT
        assert GaussRational.from_domain(value.domain_value * value.domain_value) == value * value

    def test_real_values_hash_like_rationals(self):
        assert hash(GaussRational(3)) == hash(3)
        assert GaussRational(Fraction(1, 2)) == Fraction(1, 2)
        assert {GaussRational(2): "two"}[GaussRational.parse("2")] == "two"

    def test_mixed_operands(self):
        assert GaussRational(1, 1) + 1 == GaussRational(2, 1)
        assert 1 - I_UNIT == GaussRational(1, -1)
        assert 2 / GaussRational(0, 2) == -I_UNIT
        with pytest.raises(ZeroDivisionError):
            I_UNIT / 0


class TestMuScalar:
    def test_arithmetic(self):
        a = MuScalar.mu(1, 2) + MuScalar.constant(1)
        b = MuScalar.mu(-1)
        product = a * b
        assert product.coefficient(0) == 2
        assert product.coefficient(-1) == 1
        assert product.min_power() == -1
        assert product.max_power() == 0

    def test_cancellation_leaves_zero(self):
        a = MuScalar.mu(2, 3)
        assert not (a - a)

    def test_evaluate(self):
        value = MuScalar({2: 1, 0: 3})
        assert value.evaluate(2) == 7

    def test_evaluate_pole(self):
        with pytest.raises(PoleError):
            MuScalar.mu(-1).evaluate(0)

    def test_shift(self):
        assert MuScalar.mu(1, 5).shift(-3) == MuScalar.mu(-2, 5)


class TestHomPoly:
    def test_constructors(self):
        p = HomPoly.monomial([2, 1], 3)
        assert p.total_degree() == 3
        assert p.is_homogeneous(3)
        assert HomPoly.zero(2).total_degree() == -1
        assert HomPoly.constant(2, 5).is_constant()

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            HomPoly.variable(2, 0) + HomPoly.variable(3, 0)

    def test_partial_and_derivative(self):
        p = HomPoly(2, {(3, 1): 2})
        assert p.partial(0) == HomPoly(2, {(2, 1): 6})
        assert p.derivative((2, 1)) == HomPoly(2, {(1, 0): 12})
        assert p.derivative((4, 0)).is_zero()

    def test_partial_out_of_range(self):
        with pytest.raises(IndexError):
            HomPoly.variable(2, 0).partial(2)

    def test_homogeneous_components(self):
        p = HomPoly(2, {(2, 0): 1, (0, 1): 1})
        pieces = p.homogeneous_components()
        assert set(pieces) == {1, 2}
        assert pieces[2] == HomPoly(2, {(2, 0): 1})
        assert p.homogeneous_piece(5).is_zero()

    def test_mu_coefficient(self):
        p = HomPoly(2, {(1, 0): MuScalar({1: 2, 0: 1}), (0, 0): MuScalar.mu(1, 3)})
        assert p.mu_coefficient(1) == HomPoly(2, {(1, 0): 2, (0, 0): 3})
        assert p.mu_coefficient(0) == HomPoly(2, {(1, 0): 1})
        assert p.mu_powers() == (0, 1)

    @pytest.mark.parametrize("terms, expected", [
        ({(1, 1): 1, (0, 0): MuScalar.mu(1, Fraction(1, 2))}, "z0*z1 + (1/2)*mu"),
        ({(2, 0): -1}, "-z0^2"),
        ({(1, 0): 2, (0, 1): -3}, "2*z0 - 3*z1"),
        ({(0, 0): MuScalar.mu(-1)}, "mu^-1"),
        ({(1, 0): GaussRational(1, 1)}, "(1+i)*z0"),
        ({}, "0"),
        ({(0, 0): 1}, "1"),
    ])
    def test_render(self, terms, expected):
        assert HomPoly(2, terms).render() == expected

    @given(polynomials(3))
    def test_json_fixpoint(self, p):
        assert HomPoly.from_json(p.to_json()) == p

    @given(polynomials(2), polynomials(2), polynomials(2))
    def test_ring_laws(self, p, q, r):
        assert p * (q + r) == p * q + p * r
        assert (p * q) * r == p * (q * r)
        assert p - p == HomPoly.zero(2)

    def test_substitute(self):
        z0, z1 = HomPoly.variable(2, 0), HomPoly.variable(2, 1)
        p = z0 * z0 + z1
        assert p.substitute([z0 + z1, z0]) == (z0 + z1) ** 2 + z0

    def test_scale_rejects_non_scalars(self):
        with pytest.raises(TypeError):
            HomPoly.variable(2, 0).scale("2")


class TestExactMatrix:
    def test_inverse(self):
        m = ExactMatrix([[1, 2], [3, 4]])
        assert m @ m.inverse() == ExactMatrix.identity(2)
        assert m.det() == -2

    def test_complex_inverse(self):
        m = ExactMatrix([[I_UNIT, 1], [0, 2]])
        assert m.inverse() @ m == ExactMatrix.identity(2)

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            ExactMatrix([[1, 2], [2, 4]]).inverse()

    @given(square_matrices(3))
    def test_inverse_property(self, m):
        if m.det():
            assert m.inverse() @ m == ExactMatrix.identity(3)

    def test_trace_and_transpose(self):
        m = ExactMatrix([[1, 2], [3, 4]])
        assert m.trace() == 5
        assert m.T == ExactMatrix([[1, 3], [2, 4]])

    def test_from_strings(self):
        m = ExactMatrix.from_strings([["1/2", "i"], [0, "-3"]])
        assert m[0, 1] == I_UNIT
        assert m[1, 0] == 0

    def test_from_strings_rejects_bad_entries(self):
        with pytest.raises(ConfigValidationError):
            ExactMatrix.from_strings([["x", "1"], ["1", "0"]])

    def test_validated_kinds(self):
        with pytest.raises(ConfigValidationError):
            SymMatrix([[0, 1], [2, 0]])
        with pytest.raises(ConfigValidationError):
            SkewMatrix([[1, 1], [-1, 0]])

    def test_standard_symplectic(self):
        lam = standard_symplectic(4)
        assert lam[0, 2] == 1
        assert lam[2, 0] == -1
        assert lam.is_skew()
        with pytest.raises(DimensionMismatchError):
            standard_symplectic(3)
