"""
Graded Ring
Homogeneous pieces of S = Q(i)[z_0..z_n] and dimensions of H^0(CP^n, O(m)).
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import comb
from typing import Dict, Iterable, Optional

import numpy as np
import pandas as pd
from loguru import logger

from ..errors import DegreeMismatchError, DimensionMismatchError
from ..exact import HomPoly


class GradedPoly:
    """
    Element of the graded ring S = Q(i)[z_0..z_n].

    Wraps a HomPoly whose coefficients carry no mu-powers.
    """

    __slots__ = ("_poly",)

    def __init__(self, poly: HomPoly):
        if any(power != 0 for power in poly.mu_powers()):
            raise DegreeMismatchError("Elements of the graded ring carry no mu-powers")
        self._poly = poly

    @classmethod
    def from_poly(cls, poly: HomPoly) -> GradedPoly:
        return cls(poly)

    @classmethod
    def variable(cls, nvars: int, index: int) -> GradedPoly:
        return cls(HomPoly.variable(nvars, index))

    @classmethod
    def constant(cls, nvars: int, value=1) -> GradedPoly:
        return cls(HomPoly.constant(nvars, value))

    @property
    def poly(self) -> HomPoly:
        return self._poly

    @property
    def nvars(self) -> int:
        return self._poly.nvars

    def is_zero(self) -> bool:
        return self._poly.is_zero()

    def is_homogeneous(self) -> bool:
        return self._poly.is_homogeneous()

    @property
    def degree(self) -> Optional[int]:
        """Degree of a nonzero homogeneous element; None for zero."""
        if self.is_zero():
            return None
        if not self.is_homogeneous():
            raise DegreeMismatchError(f"{self._poly} is not homogeneous")
        return self._poly.total_degree()

    def pieces(self) -> Dict[int, GradedPoly]:
        return {d: GradedPoly(p) for d, p in self._poly.homogeneous_components().items()}

    def piece(self, degree: int) -> GradedPoly:
        return GradedPoly(self._poly.homogeneous_piece(degree))

    def __add__(self, other: GradedPoly) -> GradedPoly:
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return GradedPoly(self._poly + other._poly)

    def __sub__(self, other: GradedPoly) -> GradedPoly:
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return GradedPoly(self._poly - other._poly)

    def __mul__(self, other) -> GradedPoly:
        if isinstance(other, GradedPoly):
            return GradedPoly(self._poly * other._poly)
        return GradedPoly(self._poly * other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> GradedPoly:
        return GradedPoly(self._poly ** exponent)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self._poly == other._poly

    def __hash__(self) -> int:
        return hash(self._poly)

    def __bool__(self) -> bool:
        return bool(self._poly)

    def __str__(self) -> str:
        return str(self._poly)

    def __repr__(self) -> str:
        return f"GradedPoly({self._poly.nvars}, {str(self._poly)!r})"


def graded_piece(p: GradedPoly, degree: int) -> GradedPoly:
    """The degree-d homogeneous component S_d of p."""
    return p.piece(degree)


def h0_dimension(n: int, m: int) -> int:
    """
    Dimension of H^0(CP^n, O(m)).

    Args:
        n: Dimension of projective space (n + 1 homogeneous coordinates)
        m: Twist

    Returns:
        0 for m < 0, otherwise the number of degree-m monomials in n + 1 variables
    """
    if n < 0:
        raise DimensionMismatchError(f"Projective dimension must be non-negative, got {n}")
    if m < 0:
        return 0
    return comb(n + m, n)


def brute_force_monomials(n: int, m: int) -> np.ndarray:
    """Exponent vectors of all degree-m monomials in n + 1 variables, one row each."""
    if n < 0:
        raise DimensionMismatchError(f"Projective dimension must be non-negative, got {n}")
    if m < 0:
        return np.zeros((0, n + 1), dtype=int)
    rows = []
    for choice in combinations_with_replacement(range(n + 1), m):
        rows.append(np.bincount(np.array(choice, dtype=int), minlength=n + 1))
    return np.array(rows, dtype=int).reshape(-1, n + 1)


def monomial_basis(n: int, m: int) -> Iterable[GradedPoly]:
    for row in brute_force_monomials(n, m):
        yield GradedPoly(HomPoly.monomial([int(e) for e in row]))


def h0_table(n_max: int, m_min: int, m_max: int, check: bool = False) -> pd.DataFrame:
    """
    Table of h0_dimension(n, m) with one row per n and one column per m.

    Args:
        n_max: Largest projective dimension
        m_min: Smallest twist
        m_max: Largest twist
        check: Also compare every entry with the brute-force monomial count

    Raises:
        ValueError: If the ranges are empty
        DegreeMismatchError: If a brute-force count disagrees
    """
    if n_max < 0 or m_max < m_min:
        raise ValueError(f"Empty table range n <= {n_max}, {m_min} <= m <= {m_max}")
    twists = list(range(m_min, m_max + 1))
    table = pd.DataFrame(
        [[h0_dimension(n, m) for m in twists] for n in range(n_max + 1)],
        index=pd.Index(range(n_max + 1), name="n"),
        columns=pd.Index(twists, name="m"),
    )
    if check:
        for n in table.index:
            for m in twists:
                counted = len(brute_force_monomials(n, m))
                if counted != table.loc[n, m]:
                    raise DegreeMismatchError(f"h0({n}, {m}) = {table.loc[n, m]} but {counted} monomials")
        logger.info(f"h0 table verified against monomial enumeration for n <= {n_max}")
    return table
