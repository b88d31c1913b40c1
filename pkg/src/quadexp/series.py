"""
Truncated Power Series
Exact power series in t, truncated at a fixed order, with scalar, matrix and polynomial coefficients.

A series of order K carries the coefficients of t^0..t^K; everything beyond is
unknown, so binary operations return the smaller of the two orders.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Generic, List, Sequence, Tuple, TypeVar, Union

import sympy

from ..errors import DimensionMismatchError, PreconditionError, SingularMatrixError
from ..exact import ExactMatrix, GaussRational, HomPoly, MuScalar, ONE, ZERO
from ..exact.matrix import from_sympy, to_sympy

C = TypeVar("C")
Scalar = Union[GaussRational, Fraction, int]

_X = sympy.Symbol("x")
_TAYLOR_FUNCTIONS: dict = {
    "exp": sympy.exp(_X),
    "tan": sympy.tan(_X),
    "tanh": sympy.tanh(_X),
    "arctan": sympy.atan(_X),
    "log1p": sympy.log(1 + _X),
    "cosh": sympy.cosh(_X),
    "sinh": sympy.sinh(_X),
}


@lru_cache(maxsize=None)
def taylor_coefficients(name: str, order: int) -> Tuple[GaussRational, ...]:
    """Exact Maclaurin coefficients c_0..c_order of an elementary function."""
    if name not in _TAYLOR_FUNCTIONS:
        raise ValueError(f"Unknown function {name!r}; expected one of {sorted(_TAYLOR_FUNCTIONS)}")
    expansion = sympy.series(_TAYLOR_FUNCTIONS[name], _X, 0, order + 1).removeO()
    poly = sympy.Poly(expansion, _X)
    return tuple(from_sympy(poly.coeff_monomial(_X ** k)) for k in range(order + 1))


@lru_cache(maxsize=None)
def binomial_coefficients(exponent: Fraction, order: int) -> Tuple[GaussRational, ...]:
    """Coefficients of (1 + x)^exponent, the canonical branch with value 1 at 0."""
    r = sympy.Rational(exponent.numerator, exponent.denominator)
    return tuple(from_sympy(sympy.binomial(r, k)) for k in range(order + 1))


class TruncatedSeries(Generic[C]):
    """Base class: coefficient storage and the operations shared by every coefficient kind."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Sequence[C]):
        if not coeffs:
            raise ValueError("A series needs at least its constant coefficient")
        self._coeffs: Tuple[C, ...] = tuple(coeffs)

    # hooks ------------------------------------------------------------------

    def _new(self, coeffs: Sequence[C]):
        return type(self)(coeffs)

    def _zero(self) -> C:
        raise NotImplementedError

    def _one(self) -> C:
        raise NotImplementedError

    @staticmethod
    def _product(x: C, y: C) -> C:
        return x * y

    @staticmethod
    def _is_zero(x: C) -> bool:
        return not x

    # basics -----------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> Tuple[C, ...]:
        return self._coeffs

    def __getitem__(self, j: int) -> C:
        return self._coeffs[j]

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def truncate(self, order: int):
        if order > self.order:
            raise ValueError(f"Cannot extend a series of order {self.order} to order {order}")
        return self._new(self._coeffs[: order + 1])

    def is_zero(self) -> bool:
        return all(self._is_zero(c) for c in self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return type(self) is type(other) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((type(self).__name__, self._coeffs))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(order={self.order}, coeffs={list(self._coeffs)!r})"

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        n = min(self.order, other.order)
        return self._new([self._coeffs[j] + other._coeffs[j] for j in range(n + 1)])

    def __sub__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        n = min(self.order, other.order)
        return self._new([self._coeffs[j] - other._coeffs[j] for j in range(n + 1)])

    def __neg__(self):
        return self._new([-c for c in self._coeffs])

    def __mul__(self, other):
        if isinstance(other, type(self)):
            n = min(self.order, other.order)
            out: List[C] = []
            for j in range(n + 1):
                total = self._zero()
                for i in range(j + 1):
                    a, b = self._coeffs[i], other._coeffs[j - i]
                    if self._is_zero(a) or self._is_zero(b):
                        continue
                    total = total + self._product(a, b)
                out.append(total)
            return self._new(out)
        if isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._new([c * other for c in self._coeffs])

    def __rmul__(self, other):
        if isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._new([other * c for c in self._coeffs])

    def power(self, k: int):
        result = self._new([self._one()] + [self._zero()] * self.order)
        for _ in range(k):
            result = result * self
        return result

    # calculus ---------------------------------------------------------------

    def deriv(self):
        """d/dt; the result has order one less."""
        if self.order == 0:
            return self._new([self._zero()])
        return self._new([self._coeffs[j] * j for j in range(1, self.order + 1)])

    def integ(self, constant: C = None):
        """Antiderivative with the given constant term; the result has order one more."""
        head = self._zero() if constant is None else constant
        return self._new([head] + [c * Fraction(1, j + 1) for j, c in enumerate(self._coeffs)])

    def shift(self, k: int):
        """Multiply by t^k, keeping the order."""
        if k < 0:
            raise ValueError("Only non-negative shifts keep a power series")
        head = [self._zero()] * min(k, self.order + 1)
        return self._new(head + list(self._coeffs[: max(0, self.order + 1 - k)]))

    def rescale(self, factor: Scalar):
        """Substitute t -> factor * t."""
        factor = GaussRational.coerce(factor)
        out = []
        power = ONE
        for c in self._coeffs:
            out.append(c * power)
            power = power * factor
        return self._new(out)

    def compose(self, taylor: Sequence[Scalar]):
        """
        sum_k taylor[k] * self^k for a series with zero constant term.

        ``taylor`` must supply at least order+1 coefficients.
        """
        if not self._is_zero(self._coeffs[0]):
            raise PreconditionError("Composition needs a series with zero constant term")
        if len(taylor) < self.order + 1:
            raise ValueError("Not enough Taylor coefficients for the series order")
        result = self._new([self._one() * taylor[0]] + [self._zero()] * self.order)
        power = self._new([self._one()] + [self._zero()] * self.order)
        for k in range(1, self.order + 1):
            power = power * self
            if taylor[k]:
                result = result + power * taylor[k]
        return result

    def apply(self, name: str):
        """An elementary function (exp, tan, tanh, arctan, log1p, cosh, sinh) of a series with zero constant term."""
        return self.compose(taylor_coefficients(name, self.order))


class ScalarSeries(TruncatedSeries[GaussRational]):
    """Series with Gaussian-rational coefficients."""

    __slots__ = ()

    def __init__(self, coeffs: Sequence[Scalar]):
        super().__init__([GaussRational.coerce(c) for c in coeffs])

    def _zero(self) -> GaussRational:
        return ZERO

    def _one(self) -> GaussRational:
        return ONE

    @classmethod
    def constant(cls, value: Scalar, order: int) -> ScalarSeries:
        return cls([value] + [ZERO] * order)

    @classmethod
    def variable(cls, order: int) -> ScalarSeries:
        return cls([ZERO, ONE][: order + 1] + [ZERO] * max(0, order - 1))

    def inverse(self) -> ScalarSeries:
        head = self._coeffs[0]
        if not head:
            raise PreconditionError("Series with zero constant term has no inverse")
        inv_head = head.inverse()
        out = [inv_head]
        for j in range(1, self.order + 1):
            total = ZERO
            for i in range(1, j + 1):
                total = total + self._coeffs[i] * out[j - i]
            out.append(-inv_head * total)
        return ScalarSeries(out)

    def log(self) -> ScalarSeries:
        """log of a series with constant term 1."""
        if self._coeffs[0] != 1:
            raise PreconditionError("log needs a series with constant term 1")
        return (self - ScalarSeries.constant(1, self.order)).apply("log1p")

    def exp(self) -> ScalarSeries:
        """exp of a series with zero constant term."""
        return self.apply("exp")

    def power_binomial(self, exponent: Fraction) -> ScalarSeries:
        """self**exponent for a series with constant term 1 (binomial branch)."""
        if self._coeffs[0] != 1:
            raise PreconditionError("Fractional powers need a series with constant term 1")
        delta = self - ScalarSeries.constant(1, self.order)
        return delta.compose(binomial_coefficients(Fraction(exponent), self.order))

    def is_even(self) -> bool:
        return all(not c for c in self._coeffs[1::2])

    def is_odd(self) -> bool:
        return all(not c for c in self._coeffs[0::2])


class MatrixSeries(TruncatedSeries[ExactMatrix]):
    """Series whose coefficients are square matrices of a fixed size; products are matrix products."""

    __slots__ = ()

    def __init__(self, coeffs: Sequence[ExactMatrix]):
        super().__init__(coeffs)
        sizes = {c.shape for c in self._coeffs}
        if len(sizes) != 1:
            raise DimensionMismatchError(f"Matrix series coefficients have shapes {sorted(sizes)}")

    @property
    def dim(self) -> int:
        return self._coeffs[0].size

    def _zero(self) -> ExactMatrix:
        return ExactMatrix.zeros(self.dim)

    def _one(self) -> ExactMatrix:
        return ExactMatrix.identity(self.dim)

    @staticmethod
    def _product(x: ExactMatrix, y: ExactMatrix) -> ExactMatrix:
        return x @ y

    @staticmethod
    def _is_zero(x: ExactMatrix) -> bool:
        return x.is_zero()

    @classmethod
    def constant(cls, matrix: ExactMatrix, order: int) -> MatrixSeries:
        n = matrix.size
        return cls([matrix] + [ExactMatrix.zeros(n)] * order)

    @classmethod
    def linear(cls, matrix: ExactMatrix, order: int) -> MatrixSeries:
        """The series matrix * t."""
        n = matrix.size
        coeffs = [ExactMatrix.zeros(n)] * (order + 1)
        if order >= 1:
            coeffs[1] = matrix
        return cls(coeffs)

    @classmethod
    def identity(cls, n: int, order: int) -> MatrixSeries:
        return cls.constant(ExactMatrix.identity(n), order)

    def left(self, matrix: ExactMatrix) -> MatrixSeries:
        return MatrixSeries([matrix @ c for c in self._coeffs])

    def right(self, matrix: ExactMatrix) -> MatrixSeries:
        return MatrixSeries([c @ matrix for c in self._coeffs])

    def transpose(self) -> MatrixSeries:
        return MatrixSeries([c.T for c in self._coeffs])

    def trace(self) -> ScalarSeries:
        return ScalarSeries([c.trace() for c in self._coeffs])

    def entry(self, i: int, j: int) -> ScalarSeries:
        return ScalarSeries([c[i, j] for c in self._coeffs])

    def is_symmetric(self) -> bool:
        return all(c.is_symmetric() for c in self._coeffs)

    def inverse(self) -> MatrixSeries:
        """Inverse series; needs an invertible constant term."""
        try:
            inv_head = self._coeffs[0].inverse()
        except SingularMatrixError:
            raise SingularMatrixError("Constant term of the matrix series is singular") from None
        out = [inv_head]
        for j in range(1, self.order + 1):
            total = self._zero()
            for i in range(1, j + 1):
                if not self._coeffs[i].is_zero():
                    total = total + self._coeffs[i] @ out[j - i]
            out.append(-(inv_head @ total))
        return MatrixSeries(out)

    def det(self) -> ScalarSeries:
        """Determinant as a series, expanded exactly through sympy."""
        t = sympy.Symbol("t")
        n = self.dim
        entries = [
            [sum((to_sympy(c[i, j]) * t ** k for k, c in enumerate(self._coeffs)), sympy.Integer(0))
             for j in range(n)]
            for i in range(n)
        ]
        value = sympy.expand(sympy.Matrix(entries).det(method="berkowitz"))
        poly = sympy.Poly(value, t) if value.has(t) else None
        coeffs = []
        for k in range(self.order + 1):
            if poly is None:
                coeffs.append(from_sympy(value) if k == 0 else ZERO)
            else:
                coeffs.append(from_sympy(poly.coeff_monomial(t ** k)))
        return ScalarSeries(coeffs)


class PolySeries(TruncatedSeries[HomPoly]):
    """Series whose coefficients are polynomials in a fixed number of variables."""

    __slots__ = ()

    @property
    def nvars(self) -> int:
        return self._coeffs[0].nvars

    def _zero(self) -> HomPoly:
        return HomPoly.zero(self.nvars)

    def _one(self) -> HomPoly:
        return HomPoly.constant(self.nvars, 1)

    @classmethod
    def constant(cls, poly: HomPoly, order: int) -> PolySeries:
        return cls([poly] + [HomPoly.zero(poly.nvars)] * order)

    def map(self, fn: Callable[[HomPoly], HomPoly]) -> PolySeries:
        return PolySeries([fn(c) for c in self._coeffs])

    def scale_mu(self, factor: MuScalar) -> PolySeries:
        return PolySeries([c.scale(factor) for c in self._coeffs])

    def exp(self) -> PolySeries:
        """exp of a polynomial series with zero constant term, via E' = P' E."""
        if self._coeffs[0]:
            raise PreconditionError("exp needs a polynomial series with zero constant term")
        out = [HomPoly.constant(self.nvars, 1)]
        for n in range(1, self.order + 1):
            total = HomPoly.zero(self.nvars)
            for k in range(1, n + 1):
                if self._coeffs[k] and out[n - k]:
                    total = total + (self._coeffs[k] * out[n - k]).scale(k)
            out.append(total.scale(Fraction(1, n)))
        return PolySeries(out)
