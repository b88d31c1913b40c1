"""Tests for localized fractions and the chart family of a homogeneous element."""

import pytest

from src.errors import DegreeMismatchError, PreconditionError
from src.proj import (
    GradedPoly,
    LocalFraction,
    alpha,
    chart_compatibility,
    chart_family_summary,
    localize,
    monomial_basis,
    sections_agree,
    transition,
)


def var(nvars, index):
    return GradedPoly.variable(nvars, index)


@pytest.fixture
def z0():
    return var(3, 0)


@pytest.fixture
def z1():
    return var(3, 1)


@pytest.fixture
def z2():
    return var(3, 2)


class TestLocalFraction:
    def test_common_factor_is_divided_out(self, z0, z1):
        fraction = localize(z0 * z1, z0, 2)
        assert fraction.numerator == z1
        assert fraction.base == z0
        assert fraction.power == 1

    def test_degree_mismatch(self, z0, z1):
        with pytest.raises(DegreeMismatchError):
            localize(z0, z1, 2)

    def test_zero_base(self, z0):
        with pytest.raises(PreconditionError):
            localize(z0, GradedPoly.constant(3, 0), 1)

    def test_inhomogeneous_base(self, z0, z1):
        with pytest.raises(DegreeMismatchError):
            localize(z0 ** 2, z0 + z1 ** 2, 1)

    def test_negative_power(self, z0):
        with pytest.raises(ValueError):
            LocalFraction(z0, z0, -1)

    def test_equality_across_bases(self, z0, z1, z2):
        assert localize(z1, z0, 1) == localize(z1 * z2, z0 * z2, 1)
        assert localize(z1, z0, 1) != localize(z2, z0, 1)

    def test_monic_and_root_normalisation(self, z0, z1):
        scaled = localize(z1 * 2, z0 * 2, 1)
        assert scaled.base == z0
        assert scaled == localize(z1, z0, 1)
        rooted = localize(z1 ** 2, z0 ** 2, 1)
        assert rooted.base == z0
        assert rooted.power == 2

    def test_zero_numerator(self, z0):
        fraction = localize(GradedPoly.constant(3, 0), z0, 3)
        assert fraction.is_zero()
        assert fraction.power == 0

    def test_multiplication(self, z0, z1):
        product = localize(z1, z0, 1) * localize(z0, z1, 1)
        assert product == localize(GradedPoly.constant(3, 1), z0, 0)
        assert product.power == 0

    def test_restrict(self, z0, z1, z2):
        fraction = localize(z1, z0, 1)
        assert fraction.restrict(z2) == fraction
        assert fraction.restrict(z2).base == z0 * z2

    def test_untwist_needs_divisible_twist(self, z0, z1):
        with pytest.raises(DegreeMismatchError):
            LocalFraction(z0 ** 3, z0 * z1, 0, twist=3).untwist()

    def test_twist_is_part_of_equality(self, z0, z1):
        assert LocalFraction(z1, z0, 0, twist=1) != LocalFraction(z1, z0, 1, twist=0)


class TestAlpha:
    def test_family(self, z0, z1):
        a = z0 * z1 + z1 ** 2
        family = alpha(a)
        assert len(family) == 3
        assert all(f.twist == 2 for f in family)
        assert family[2].untwist() == localize(a, var(3, 2), 2)

    def test_injective_on_monomials(self):
        for d in range(3):
            fractions = [alpha(b)[0].untwist() for b in monomial_basis(2, d)]
            for i, first in enumerate(fractions):
                for second in fractions[i + 1:]:
                    assert first != second

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(4))
    def test_injective_and_compatible_exhaustive(self, n):
        for d in range(5):
            basis = list(monomial_basis(n, d))
            families = [alpha(b) for b in basis]
            for i, first in enumerate(families):
                for second in families[i + 1:]:
                    assert any(x != y for x, y in zip(first, second))
            for b in basis:
                for i in range(n + 1):
                    for j in range(i + 1, n + 1):
                        assert chart_compatibility(b, i, j)

    def test_rejects_inhomogeneous(self, z0, z1):
        with pytest.raises(DegreeMismatchError):
            alpha(z0 + z1 ** 2)

    def test_zero(self):
        summary = chart_family_summary(GradedPoly.constant(3, 0))
        assert summary['zero']
        assert summary['degree'] is None

    @pytest.mark.parametrize("i, j", [(0, 1), (1, 2), (0, 2), (1, 1)])
    def test_chart_compatibility(self, z0, z1, z2, i, j):
        a = z0 ** 2 * z2 - z1 * z2 ** 2
        assert chart_compatibility(a, i, j)

    def test_corrupted_family_fails(self, z0, z1, z2):
        a = z0 * z1
        family = alpha(a)
        family[1] = LocalFraction(z0 * z2, var(3, 1), 0, twist=2)
        assert not chart_compatibility(a, 0, 1, family)
        assert chart_compatibility(a, 0, 2, family)

    def test_transition(self, z0, z1):
        t = transition(3, 0, 1, 2)
        assert t == localize(z0 ** 2, z1, 2)
        assert t * transition(3, 1, 0, 2) == localize(GradedPoly.constant(3, 1), z0, 0)

    def test_sections_agree(self, z0, z1):
        assert sections_agree(localize(z1, z0, 1), localize(z1 ** 2, z0 * z1, 1))
