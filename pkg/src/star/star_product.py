"""
Star Product Module
Weyl-type star product of polynomials driven by a skew Poisson matrix, with its validators.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import factorial
from typing import Dict, List, Sequence, Tuple, Union

from loguru import logger

from ..errors import (
    ConfigValidationError,
    DegreeMismatchError,
    DimensionMismatchError,
    NonConstantPoissonError,
)
from ..exact import ExactMatrix, GaussRational, HomPoly, MuScalar

# Normal form of a bidifferential operator: (left multi-index, right multi-index) -> coefficient in z
OperatorForm = Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], HomPoly]


def _shift(counts: Tuple[int, ...], index: int) -> Tuple[int, ...]:
    return counts[:index] + (counts[index] + 1,) + counts[index + 1:]


class PoissonMatrix:
    """
    Skew matrix Lambda^{ab} of the biderivation.

    Entries are polynomials in the ambient variables; a constant matrix is the
    case the star product supports.
    """

    def __init__(self, entries: Sequence[Sequence[Union[HomPoly, GaussRational, int, str]]], nvars: int = None):
        size = len(entries)
        nvars = size if nvars is None else nvars
        if any(len(row) != size for row in entries):
            raise ConfigValidationError("Poisson matrix must be square")
        if size != nvars:
            raise DimensionMismatchError(f"Poisson matrix of size {size} for {nvars} variables")
        self._nvars = nvars
        self._entries: List[List[HomPoly]] = [
            [self._as_poly(v) for v in row] for row in entries
        ]
        for a in range(size):
            for b in range(size):
                if self._entries[a][b] != -self._entries[b][a]:
                    raise ConfigValidationError(
                        f"Poisson matrix is not skew-symmetric at ({a}, {b})"
                    )

    def _as_poly(self, value) -> HomPoly:
        if isinstance(value, HomPoly):
            if value.nvars != self._nvars:
                raise DimensionMismatchError("Poisson matrix entry lives in the wrong ring")
            return value
        if isinstance(value, str):
            value = GaussRational.parse(value)
        return HomPoly.constant(self._nvars, value)

    @classmethod
    def from_matrix(cls, matrix: ExactMatrix) -> PoissonMatrix:
        return cls(matrix.rows())

    @property
    def nvars(self) -> int:
        return self._nvars

    def entry(self, a: int, b: int) -> HomPoly:
        return self._entries[a][b]

    def is_constant(self) -> bool:
        return all(e.is_constant() and not any(p for p in e.mu_powers()) for row in self._entries for e in row)

    def constant_matrix(self) -> ExactMatrix:
        if not self.is_constant():
            raise NonConstantPoissonError("Poisson matrix has non-constant entries")
        origin = (0,) * self._nvars
        return ExactMatrix([
            [e.coefficient(origin).coefficient(0) for e in row] for row in self._entries
        ])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PoissonMatrix):
            return NotImplemented
        return self._entries == other._entries

    def __repr__(self) -> str:
        return f"PoissonMatrix({[[str(e) for e in row] for row in self._entries]})"


@dataclass(frozen=True)
class StarContext:
    """Ambient data of every star-product call: the number of variables and Lambda."""

    nvars: int
    lambda_matrix: PoissonMatrix

    def __post_init__(self):
        if self.lambda_matrix.nvars != self.nvars:
            raise DimensionMismatchError(
                f"Poisson matrix of size {self.lambda_matrix.nvars} for {self.nvars} variables"
            )

    @classmethod
    def from_matrix(cls, matrix: ExactMatrix) -> StarContext:
        return cls(matrix.size, PoissonMatrix.from_matrix(matrix))

    def _check(self, *polys: HomPoly) -> None:
        for p in polys:
            if p.nvars != self.nvars:
                raise DimensionMismatchError(
                    f"Polynomial in {p.nvars} variables used with a {self.nvars}-variable context"
                )

    @cached_property
    def _nonzero_pairs(self) -> List[Tuple[int, int, GaussRational]]:
        lam = self.lambda_matrix.constant_matrix()
        return [
            (a, b, lam[a, b])
            for a in range(self.nvars)
            for b in range(self.nvars)
            if lam[a, b]
        ]

    def moyal_term(self, f: HomPoly, g: HomPoly, k: int) -> HomPoly:
        """
        The k-th summand (1/k!)(mu/2)^k Lambda...Lambda d^k f d^k g of the star product.

        Ordered index sequences are grouped into multisets of (a, b) pairs; the
        multinomial count k!/prod(m!) cancels the 1/k! prefactor.
        """
        self._check(f, g)
        return self._moyal(f, g, k, self._nonzero_pairs)

    def _moyal(self, f: HomPoly, g: HomPoly, k: int, pairs: List[Tuple[int, int, GaussRational]]) -> HomPoly:
        if k == 0:
            return f * g
        total = HomPoly.zero(self.nvars)
        left_cache: Dict[Tuple[int, ...], HomPoly] = {}
        right_cache: Dict[Tuple[int, ...], HomPoly] = {}
        for choice in combinations_with_replacement(range(len(pairs)), k):
            left = [0] * self.nvars
            right = [0] * self.nvars
            multiplicity: Dict[int, int] = {}
            for idx in choice:
                a, b, _ = pairs[idx]
                left[a] += 1
                right[b] += 1
                multiplicity[idx] = multiplicity.get(idx, 0) + 1
            left_key, right_key = tuple(left), tuple(right)
            if left_key not in left_cache:
                left_cache[left_key] = f.derivative(left_key)
            df = left_cache[left_key]
            if not df:
                continue
            if right_key not in right_cache:
                right_cache[right_key] = g.derivative(right_key)
            dg = right_cache[right_key]
            if not dg:
                continue
            weight = GaussRational(1)
            for idx, m in multiplicity.items():
                weight = weight * pairs[idx][2] ** m / factorial(m)
            total = total + (df * dg).scale(weight)
        return total.scale(MuScalar.mu(k, Fraction(1, 2 ** k)))

    def star(self, f: HomPoly, g: HomPoly) -> HomPoly:
        """f # g; the sum stops at k = min(deg f, deg g)."""
        self._check(f, g)
        if not f or not g:
            return HomPoly.zero(self.nvars)
        pairs = self._nonzero_pairs
        result = f * g
        for k in range(1, min(f.total_degree(), g.total_degree()) + 1):
            result = result + self._moyal(f, g, k, pairs)
        return result

    def star_power(self, f: HomPoly, k: int) -> HomPoly:
        if k < 0:
            raise ValueError("Star powers are only defined for k >= 0")
        result = HomPoly.constant(self.nvars, 1)
        for _ in range(k):
            result = self.star(result, f)
        return result

    def commutator(self, f: HomPoly, g: HomPoly) -> HomPoly:
        return self.star(f, g) - self.star(g, f)

    def poisson_bracket(self, f: HomPoly, g: HomPoly) -> HomPoly:
        """Sum of Lambda^{ab} d_a f d_b g, without a mu factor."""
        self._check(f, g)
        result = HomPoly.zero(self.nvars)
        for a in range(self.nvars):
            df = f.partial(a)
            if not df:
                continue
            for b in range(self.nvars):
                entry = self.lambda_matrix.entry(a, b)
                if not entry:
                    continue
                dg = g.partial(b)
                if dg:
                    result = result + entry * df * dg
        return result

    def graded_star_component(self, f: HomPoly, g: HomPoly, target_degree: int) -> HomPoly:
        """The piece of f # g of z-degree ``target_degree``; f and g must be homogeneous."""
        self._check(f, g)
        if not (f.is_homogeneous() and g.is_homogeneous()):
            raise DegreeMismatchError("graded_star_component needs homogeneous factors")
        if not f or not g:
            return HomPoly.zero(self.nvars)
        gap = f.total_degree() + g.total_degree() - target_degree
        if gap < 0 or gap % 2:
            raise DegreeMismatchError(
                f"Degree {target_degree} is not of the form deg f + deg g - 2k "
                f"(deg f = {f.total_degree()}, deg g = {g.total_degree()})"
            )
        k = gap // 2
        if k > min(f.total_degree(), g.total_degree()):
            raise DegreeMismatchError(
                f"Degree {target_degree} needs k = {k} contractions, more than min(deg f, deg g) = "
                f"{min(f.total_degree(), g.total_degree())}"
            )
        return self.moyal_term(f, g, k)

    def check_lambda_relation(self, k: int, test_degree: int) -> bool:
        """
        Compare both sides of the constants-out-front assumption at order k.

        The two operators agree on every pair of monomials of degree <= test_degree
        iff their normal-form coefficients agree for all derivative orders <= test_degree.
        """
        if k < 1:
            raise ValueError("The relation is stated for k >= 1")
        iterated = bidifferential_iterated(self.lambda_matrix, k)
        direct = bidifferential_direct(self.lambda_matrix, k)
        for key in set(iterated) | set(direct):
            left, right = key
            if sum(left) > test_degree or sum(right) > test_degree:
                continue
            if iterated.get(key, HomPoly.zero(self.nvars)) != direct.get(key, HomPoly.zero(self.nvars)):
                logger.info(f"Lambda relation fails at order {k} for derivative orders {key}")
                return False
        return True


def bidifferential_iterated(lam: PoissonMatrix, k: int) -> OperatorForm:
    """
    Normal form of the k-fold composite of f (x) g -> Lambda^{ab} d_a f (x) d_b g.

    Lambda multiplies into the left factor at each step, so later derivatives
    also act on it.
    """
    n = lam.nvars
    zero = (0,) * n
    form: OperatorForm = {(zero, zero): HomPoly.constant(n, 1)}
    for _ in range(k):
        nxt: OperatorForm = {}
        for (left, right), coeff in form.items():
            for a in range(n):
                d_coeff = coeff.partial(a)
                for b in range(n):
                    entry = lam.entry(a, b)
                    if not entry:
                        continue
                    right_key = _shift(right, b)
                    for key, value in (
                        ((_shift(left, a), right_key), entry * coeff),
                        ((left, right_key), entry * d_coeff),
                    ):
                        if value:
                            nxt[key] = nxt.get(key, HomPoly.zero(n)) + value
        form = {key: v for key, v in nxt.items() if v}
    return form


def bidifferential_direct(lam: PoissonMatrix, k: int) -> OperatorForm:
    """Normal form of Lambda^{a1b1}...Lambda^{akbk} d_{a1..ak} (x) d_{b1..bk}, constants out front."""
    n = lam.nvars
    form: OperatorForm = {}
    indices = [(a, b) for a in range(n) for b in range(n) if lam.entry(a, b)]
    for sequence in product(indices, repeat=k):
        left = [0] * n
        right = [0] * n
        coeff = HomPoly.constant(n, 1)
        for a, b in sequence:
            left[a] += 1
            right[b] += 1
            coeff = coeff * lam.entry(a, b)
        key = (tuple(left), tuple(right))
        form[key] = form.get(key, HomPoly.zero(n)) + coeff
    return {key: v for key, v in form.items() if v}


def apply_bidifferential(form: OperatorForm, f: HomPoly, g: HomPoly) -> HomPoly:
    """Evaluate a normal-form bidifferential operator on f (x) g and multiply out."""
    result = HomPoly.zero(f.nvars)
    for (left, right), coeff in form.items():
        df = f.derivative(left)
        if not df:
            continue
        dg = g.derivative(right)
        if dg:
            result = result + coeff * df * dg
    return result


def check_jacobi(lam: PoissonMatrix) -> bool:
    """Jacobi rule: sum_m Lambda^{am} d_m Lambda^{bc} + cyclic = 0 for all a, b, c."""
    n = lam.nvars
    for a, b, c in product(range(n), repeat=3):
        total = HomPoly.zero(n)
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            for m in range(n):
                entry = lam.entry(x, m)
                if entry:
                    total = total + entry * lam.entry(y, z).partial(m)
        if total:
            logger.info(f"Jacobi rule fails for indices ({a}, {b}, {c})")
            return False
    return True


def specialize_mu(p: HomPoly, value: Union[GaussRational, int, Fraction]) -> HomPoly:
    """Substitute mu = value and collect in z."""
    value = GaussRational.coerce(value)
    return HomPoly(p.nvars, {m: MuScalar.constant(c.evaluate(value)) for m, c in p.items()})


def star(ctx: StarContext, f: HomPoly, g: HomPoly) -> HomPoly:
    return ctx.star(f, g)


def commutator(ctx: StarContext, f: HomPoly, g: HomPoly) -> HomPoly:
    return ctx.commutator(f, g)


def poisson_bracket(ctx: StarContext, f: HomPoly, g: HomPoly) -> HomPoly:
    return ctx.poisson_bracket(f, g)


def graded_star_component(ctx: StarContext, f: HomPoly, g: HomPoly, target_degree: int) -> HomPoly:
    return ctx.graded_star_component(f, g, target_degree)


def check_lambda_relation(ctx: StarContext, k: int, test_degree: int) -> bool:
    return ctx.check_lambda_relation(k, test_degree)
