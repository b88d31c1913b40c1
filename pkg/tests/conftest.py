"""Shared fixtures and hypothesis strategies."""

import random
from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import HealthCheck, settings

from src.exact import ExactMatrix, GaussRational, HomPoly, MuScalar, SkewMatrix, SymMatrix, standard_symplectic
from src.star import StarContext

settings.register_profile(
    "engine",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("engine")


def rationals(max_abs: int = 3, max_den: int = 3):
    return st.builds(
        Fraction,
        st.integers(min_value=-max_abs, max_value=max_abs),
        st.integers(min_value=1, max_value=max_den),
    )


def gauss_rationals(max_abs: int = 3, max_den: int = 3):
    return st.builds(GaussRational, rationals(max_abs, max_den), rationals(max_abs, max_den))


def monomials(nvars: int, max_degree: int):
    return st.lists(
        st.integers(min_value=0, max_value=nvars - 1), min_size=0, max_size=max_degree
    ).map(lambda picks: tuple(picks.count(i) for i in range(nvars)))


def polynomials(nvars: int, max_degree: int = 3, max_terms: int = 3, coefficients=None):
    coefficients = coefficients if coefficients is not None else rationals()
    return st.dictionaries(monomials(nvars, max_degree), coefficients, max_size=max_terms).map(
        lambda terms: HomPoly(nvars, terms)
    )


@st.composite
def skew_matrices(draw, size: int, entries=None):
    entries = entries if entries is not None else rationals()
    rows = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            value = draw(entries)
            rows[i][j] = value
            rows[j][i] = -value
    return SkewMatrix(rows)


@st.composite
def symmetric_matrices(draw, size: int, entries=None):
    entries = entries if entries is not None else rationals()
    rows = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            value = draw(entries)
            rows[i][j] = value
            rows[j][i] = value
    return SymMatrix(rows)


@st.composite
def square_matrices(draw, size: int, entries=None):
    entries = entries if entries is not None else rationals()
    return ExactMatrix([[draw(entries) for _ in range(size)] for _ in range(size)])


def seeded_rationals(rng: random.Random, count: int, max_abs: int = 3, max_den: int = 3):
    return [Fraction(rng.randint(-max_abs, max_abs), rng.randint(1, max_den)) for _ in range(count)]


def seeded_square(rng: random.Random, size: int) -> ExactMatrix:
    values = seeded_rationals(rng, size * size)
    return ExactMatrix([values[i * size:(i + 1) * size] for i in range(size)])


def seeded_symmetric(rng: random.Random, size: int) -> SymMatrix:
    m = seeded_square(rng, size)
    return SymMatrix((m + m.T).rows())


def mu_scalars(max_abs_power: int = 2):
    return st.dictionaries(
        st.integers(min_value=-max_abs_power, max_value=max_abs_power), gauss_rationals(), min_size=1, max_size=2
    ).map(MuScalar)


@pytest.fixture
def symplectic2():
    return standard_symplectic(2)


@pytest.fixture
def ctx2(symplectic2):
    """Two variables with Lambda = [[0, 1], [-1, 0]]."""
    return StarContext.from_matrix(symplectic2)


@pytest.fixture
def ctx4():
    return StarContext.from_matrix(standard_symplectic(4))


@pytest.fixture
def z0z1_form():
    """Matrix of the quadratic form z0*z1."""
    return SymMatrix([["0", "1/2"], ["1/2", "0"]])


def z(nvars: int, index: int) -> HomPoly:
    return HomPoly.variable(nvars, index)
