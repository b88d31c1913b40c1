"""
Localization
Degree-0 (and twisted) fractions g / f^m on the charts D+(f) of Proj S, the map
alpha from S_d to chart families, and chart-compatibility checks.
"""

from __future__ import annotations

from math import gcd
from typing import Dict, List, Tuple

import sympy
from loguru import logger
from sympy.polys.domains import QQ_I

from ..errors import DegreeMismatchError, PreconditionError
from ..exact import HomPoly, MuScalar
from ..exact.matrix import from_sympy, to_sympy
from .graded import GradedPoly


def _gens(nvars: int) -> List[sympy.Symbol]:
    return list(sympy.symbols(f"z0:{nvars}"))


def _to_sympy_poly(p: GradedPoly) -> sympy.Poly:
    data = {m: to_sympy(c.coefficient(0)) for m, c in p.poly.items()}
    return sympy.Poly.from_dict(data, *_gens(p.nvars), domain=QQ_I)


def _from_sympy_poly(poly: sympy.Poly, nvars: int) -> GradedPoly:
    terms = {m: MuScalar.constant(from_sympy(c)) for m, c in poly.as_dict(native=False).items()}
    return GradedPoly(HomPoly(nvars, terms))


def _exact_quotient(g: GradedPoly, f: GradedPoly):
    """g / f when f divides g, otherwise None."""
    quotient, remainder = _to_sympy_poly(g).div(_to_sympy_poly(f))
    if not remainder.is_zero:
        return None
    return _from_sympy_poly(quotient, g.nvars)


def _leading_coefficient(p: GradedPoly):
    monomial, coeff = max(p.poly.items(), key=lambda item: item[0])
    return coeff.coefficient(0)


def _monomial_root(f: GradedPoly) -> Tuple[GradedPoly, int]:
    """For a monomial f = h^e with e maximal, return (h, e); otherwise (f, 1)."""
    if len(f.poly.terms) != 1:
        return f, 1
    (monomial, coeff), = f.poly.items()
    e = 0
    for exponent in monomial:
        e = gcd(e, exponent)
    if e <= 1 or coeff != 1:
        return f, 1
    root = tuple(exponent // e for exponent in monomial)
    return GradedPoly(HomPoly.monomial(root)), e


class LocalFraction:
    """
    g / f^m with f homogeneous and deg g = twist + m * deg f.

    twist = 0 gives the degree-0 part S_(f); twist = d gives sections of O(d)
    over D+(f). On construction the base is made monic (largest monomial first),
    a monomial base is replaced by its root, and factors of f are divided out of
    g while possible, so m is minimal for the stored base.
    """

    __slots__ = ("numerator", "base", "power", "twist")

    def __init__(self, numerator: GradedPoly, base: GradedPoly, power: int, twist: int = 0):
        if power < 0:
            raise ValueError(f"Denominator power must be non-negative, got {power}")
        if numerator.nvars != base.nvars:
            raise DegreeMismatchError("Numerator and denominator live in different rings")
        if base.is_zero():
            raise PreconditionError("Cannot localize at the zero polynomial")
        if not base.is_homogeneous():
            raise DegreeMismatchError(f"Localization base {base} is not homogeneous")
        if not numerator.is_zero():
            if not numerator.is_homogeneous():
                raise DegreeMismatchError(f"Numerator {numerator} is not homogeneous")
            expected = twist + power * base.degree
            if numerator.degree != expected:
                raise DegreeMismatchError(
                    f"deg g = {numerator.degree} but the fraction needs degree {expected}"
                )

        lead = _leading_coefficient(base)
        if lead != 1:
            scale = lead.inverse()
            base = base * scale
            numerator = numerator * scale ** power
        base, root_power = _monomial_root(base)
        power *= root_power

        if numerator.is_zero():
            power = 0
        elif base.degree > 0:
            while power > 0:
                quotient = _exact_quotient(numerator, base)
                if quotient is None:
                    break
                numerator = quotient
                power -= 1

        self.numerator = numerator
        self.base = base
        self.power = power
        self.twist = twist

    @property
    def nvars(self) -> int:
        return self.base.nvars

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def denominator(self) -> GradedPoly:
        return self.base ** self.power

    def __eq__(self, other: object) -> bool:
        """Equality on the common chart D+(f1 f2): g1 f2^m2 = g2 f1^m1."""
        if not isinstance(other, LocalFraction):
            return NotImplemented
        if self.twist != other.twist or self.nvars != other.nvars:
            return False
        return self.numerator * other.denominator() == other.numerator * self.denominator()

    def __hash__(self) -> int:
        # equal fractions may have different bases; only the twist is a safe key
        return hash((self.twist, self.nvars))

    def __mul__(self, other: LocalFraction) -> LocalFraction:
        if not isinstance(other, LocalFraction):
            return NotImplemented
        twist = self.twist + other.twist
        if self.base == other.base:
            return LocalFraction(self.numerator * other.numerator, self.base, self.power + other.power, twist)
        base = self.denominator() * other.denominator()
        return LocalFraction(self.numerator * other.numerator, base, 1, twist)

    def restrict(self, h: GradedPoly) -> LocalFraction:
        """The same section on the smaller chart D+(f h)."""
        return LocalFraction(self.numerator * h ** self.power, self.base * h, self.power, self.twist)

    def untwist(self) -> LocalFraction:
        """Trivialize an O(d) section over D+(f) to the degree-0 fraction g / f^(m + d/deg f)."""
        degree = self.base.degree
        if degree == 0 or self.twist % degree:
            raise DegreeMismatchError(f"Twist {self.twist} is not a multiple of deg f = {degree}")
        return LocalFraction(self.numerator, self.base, self.power + self.twist // degree, 0)

    def __repr__(self) -> str:
        twist = f", twist={self.twist}" if self.twist else ""
        return f"LocalFraction(({self.numerator}) / ({self.base})^{self.power}{twist})"


def localize(g: GradedPoly, f: GradedPoly, m: int) -> LocalFraction:
    """
    The degree-0 fraction g / f^m in S_(f).

    Raises:
        DegreeMismatchError: If deg g != m * deg f
        PreconditionError: If f is zero
    """
    return LocalFraction(g, f, m)


def alpha(a: GradedPoly) -> List[LocalFraction]:
    """
    a in S_d as a section of O(d): the family a/1 over the charts D+(z_i).

    Raises:
        DegreeMismatchError: If a is not homogeneous
    """
    if not a.is_zero() and not a.is_homogeneous():
        raise DegreeMismatchError(f"{a} is not homogeneous")
    d = a.degree or 0
    family = []
    for i in range(a.nvars):
        family.append(LocalFraction(a, GradedPoly.variable(a.nvars, i), 0, twist=d))
    return family


def transition(nvars: int, i: int, j: int, degree: int) -> LocalFraction:
    """(z_i / z_j)^d, the transition function of O(d) from chart i to chart j."""
    z_i = GradedPoly.variable(nvars, i)
    z_j = GradedPoly.variable(nvars, j)
    return LocalFraction(z_i ** degree, z_j, degree)


def sections_agree(first: LocalFraction, second: LocalFraction) -> bool:
    """Compare two chart representatives on the overlap of their charts."""
    return first.restrict(second.base) == second.restrict(first.base)


def chart_compatibility(a: GradedPoly, i: int, j: int, family: List[LocalFraction] = None) -> bool:
    """
    Check that the chart representatives of alpha(a) glue on D+(z_i z_j).

    Both the twisted representatives and their degree-0 trivializations related
    by the transition function are compared.

    Args:
        a: Homogeneous element
        i: First chart index
        j: Second chart index
        family: Chart family to test; defaults to alpha(a)
    """
    family = alpha(a) if family is None else family
    first, second = family[i], family[j]
    if not sections_agree(first, second):
        logger.debug(f"Twisted representatives disagree on charts {i}, {j}")
        return False
    glued = first.untwist() * transition(a.nvars, i, j, first.twist)
    if glued != second.untwist():
        logger.debug(f"Trivializations disagree on charts {i}, {j}")
        return False
    return True


def chart_family_summary(a: GradedPoly) -> Dict[str, object]:
    family = alpha(a)
    return {
        'degree': a.degree,
        'charts': [repr(fraction) for fraction in family],
        'zero': all(fraction.is_zero() for fraction in family),
    }
