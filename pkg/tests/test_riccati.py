"""Tests for the Riccati flow and the amplitude equation."""

import random
from fractions import Fraction

import pytest

from src.errors import SingularMatrixError
from src.exact import ExactMatrix
from src.quadexp import (
    MatrixSeries,
    ScalarSeries,
    amplitude_residual,
    amplitude_solve,
    cayley_flow_residual,
    riccati_residual,
    riccati_solve,
    tanh_phase,
)
from tests.conftest import seeded_square

A_DIAG = ExactMatrix([[Fraction(-1, 2), 0], [0, Fraction(1, 2)]])

CASES = [
    (ExactMatrix([[1, 2], [0, -1]]), ExactMatrix([[0, "1/2"], ["1/3", 0]])),
    (ExactMatrix([["1/2", 0], [1, 0]]), ExactMatrix.zeros(2)),
    (ExactMatrix([[0, "i"], [1, 0]]), ExactMatrix([["1/2", 0], [0, "-1/3"]])),
]


@pytest.mark.parametrize("a, b", CASES)
def test_riccati_residual_vanishes(a, b):
    q = riccati_solve(a, b, 6)
    assert q[0] == b
    assert riccati_residual(q, a).is_zero()
    assert cayley_flow_residual(q, a).is_zero()


@pytest.mark.parametrize("a, b", CASES)
def test_amplitude_residual_vanishes(a, b):
    q = riccati_solve(a, b, 5)
    g = amplitude_solve(a, b, 5)
    assert g[0] == 1
    assert amplitude_residual(g, q, a).is_zero()


def test_zero_initial_value_gives_tanh():
    assert riccati_solve(A_DIAG, ExactMatrix.zeros(2), 7) == tanh_phase(A_DIAG, 7)


def test_amplitude_is_sech():
    # det cosh(a t) = cosh(t/2)^2, so g = 1/cosh(t/2)
    g = amplitude_solve(A_DIAG, ExactMatrix.zeros(2), 6)
    sech = ScalarSeries.variable(6).rescale(Fraction(1, 2)).apply("cosh").inverse()
    assert g == sech
    assert g.is_even()


def test_singular_initial_value():
    b = -ExactMatrix.identity(2)
    with pytest.raises(SingularMatrixError):
        riccati_solve(A_DIAG, b, 3)
    with pytest.raises(SingularMatrixError):
        amplitude_solve(A_DIAG, b, 3)


def test_residual_detects_wrong_solution():
    wrong = MatrixSeries.linear(A_DIAG * 2, 4)
    assert not riccati_residual(wrong, A_DIAG).is_zero()


def admissible_flows(count, size, seed):
    """Random (a, b) pairs with 1 + b invertible."""
    rng = random.Random(seed)
    pairs = []
    while len(pairs) < count:
        a = seeded_square(rng, size)
        b = seeded_square(rng, size)
        if (ExactMatrix.identity(size) + b).det():
            pairs.append((a, b))
    return pairs


@pytest.mark.slow
@pytest.mark.parametrize("a, b", admissible_flows(5, 3, seed=11))
def test_residuals_through_order_seven(a, b):
    q = riccati_solve(a, b, 7)
    g = amplitude_solve(a, b, 7)
    assert q[0] == b
    assert riccati_residual(q, a).is_zero()
    assert amplitude_residual(g, q, a).is_zero()
    assert cayley_flow_residual(q, a).is_zero()
