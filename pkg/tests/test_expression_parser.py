"""Tests for the expression tokenizer, parser and printer."""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from src.errors import ExprSyntaxError
from src.exact import GaussRational, HomPoly, MuScalar
from src.expr import BinOp, Mu, Neg, Num, Pow, Var, parse, parse_poly, render_expr, tokenize
from tests.conftest import mu_scalars, polynomials, z


class TestTokenize:
    def test_offsets(self):
        tokens = tokenize("z0 + 3/4*mu")
        assert [(tok.kind, tok.text, tok.offset) for tok in tokens] == [
            ("NAME", "z0", 1),
            ("OP", "+", 4),
            ("INT", "3", 6),
            ("OP", "/", 7),
            ("INT", "4", 8),
            ("OP", "*", 9),
            ("NAME", "mu", 10),
            ("END", "", 12),
        ]

    def test_unknown_identifier(self):
        with pytest.raises(ExprSyntaxError) as exc:
            tokenize("z0 + y1")
        assert exc.value.offset == 6

    def test_unexpected_character(self):
        with pytest.raises(ExprSyntaxError) as exc:
            tokenize("z0 # z1")
        assert exc.value.offset == 4


class TestParse:
    def test_precedence(self):
        assert parse("z0 + z1*z2^2") == BinOp("+", Var("z0"), BinOp("*", Var("z1"), Pow(Var("z2"), 2)))

    def test_leading_sign(self):
        assert parse("-z0 + 1") == BinOp("+", Neg(Var("z0")), Num(GaussRational(1)))

    def test_literals(self):
        assert parse("3/4") == Num(GaussRational(Fraction(3, 4)))
        assert parse("2i") == Num(GaussRational(0, 2))
        assert parse("i") == Num(GaussRational(0, 1))
        assert parse("1/2i") == Num(GaussRational(0, Fraction(1, 2)))

    def test_negative_mu_power(self):
        assert parse("mu^-1") == Pow(Mu(), -1)

    @pytest.mark.parametrize("source, offset", [
        ("z0 +", 5),
        ("", 1),
        ("(z0", 4),
        ("z0 z1", 4),
        ("z0^-1", 4),
        ("1/0", 3),
        ("z0^", 4),
        ("1/", 3),
        ("*z0", 1),
    ])
    def test_errors(self, source, offset):
        with pytest.raises(ExprSyntaxError) as exc:
            parse(source)
        assert exc.value.offset == offset
        assert exc.value.exit_code == 2

    def test_error_lists_expected_tokens(self):
        with pytest.raises(ExprSyntaxError) as exc:
            parse("z0 +")
        assert "variable" in exc.value.expected
        assert "end of input" in str(exc.value)


class TestToPoly:
    def test_star_operands(self):
        assert parse_poly("z0*z1 + 1/2*mu", nvars=2) == z(2, 0) * z(2, 1) + HomPoly.constant(
            2, MuScalar.mu(1, Fraction(1, 2))
        )

    def test_mu_powers(self):
        assert parse_poly("mu^-2*z0", nvars=1) == z(1, 0).scale(MuScalar.mu(-2))

    def test_powers_and_parentheses(self):
        assert parse_poly("(z0 - z1)^2", nvars=2) == (z(2, 0) - z(2, 1)) ** 2

    def test_named_ring(self):
        p = parse_poly("x11*pi1 - i*x22", names=["x11", "x12", "x21", "x22", "pi1", "pi2"])
        assert p.nvars == 6
        assert p.coefficient((0, 0, 0, 1, 0, 0)) == MuScalar.constant(GaussRational(0, -1))

    def test_unknown_variable(self):
        with pytest.raises(ExprSyntaxError) as exc:
            parse_poly("z0 + z5", nvars=2)
        assert exc.value.offset == 6


class TestRender:
    @pytest.mark.parametrize("source", [
        "z0 + z1*z2^2",
        "(z0 + z1)*z2",
        "-z0 - (z1 - z2)",
        "(1/2)*mu^-1*z0",
        "z0*(-z1)",
        "(2i)*z0 + 3",
    ])
    def test_printed_form_parses_back(self, source):
        tree = parse(source)
        assert parse(render_expr(tree)) == tree

    def test_minimal_parentheses(self):
        assert render_expr(parse("((z0))*(z1 + z2)")) == "z0*(z1 + z2)"
        assert render_expr(parse("z0 - (z1 + z2)")) == "z0 - (z1 + z2)"


class TestPolynomialRoundTrip:
    @given(polynomials(3, max_degree=3, max_terms=4, coefficients=mu_scalars()))
    def test_render_parses_back(self, p):
        assert parse_poly(p.render(), nvars=3) == p

    @pytest.mark.slow
    @settings(max_examples=200)
    @given(polynomials(4, max_degree=4, max_terms=5, coefficients=mu_scalars(3)))
    def test_render_parses_back_acceptance(self, p):
        assert parse_poly(p.render(), nvars=4) == p

    @given(polynomials(3, coefficients=mu_scalars()))
    def test_json_then_text(self, p):
        restored = HomPoly.from_json(p.to_json())
        assert parse_poly(restored.render(), nvars=3) == p
