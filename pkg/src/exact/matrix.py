"""
Exact Matrices
Square matrices over Q(i) stored as numpy object arrays; inverse and determinant via sympy.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, List, Sequence, Tuple, Union

import numpy as np
import sympy
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from ..errors import ConfigValidationError, DimensionMismatchError, SingularMatrixError
from .scalars import ONE, ZERO, GaussRational, ScalarLike


def to_sympy(value: GaussRational) -> sympy.Expr:
    return QQ_I.to_sympy(value.domain_value)


def from_sympy(expr: Any) -> GaussRational:
    re_part, im_part = sympy.expand(expr).as_real_imag()
    if not (re_part.is_Rational and im_part.is_Rational):
        raise ValueError(f"Expression {expr} is not a Gaussian rational")
    return GaussRational(
        Fraction(int(re_part.p), int(re_part.q)),
        Fraction(int(im_part.p), int(im_part.q)),
    )


class ExactMatrix:
    """Dense matrix with GaussRational entries."""

    __slots__ = ("_data",)

    def __init__(self, rows: Union[Sequence[Sequence[ScalarLike]], np.ndarray]):
        data = np.array(
            [[GaussRational.coerce(v) for v in row] for row in rows],
            dtype=object,
        )
        if data.ndim != 2:
            if data.size == 0:
                data = np.empty((0, 0), dtype=object)
            else:
                raise DimensionMismatchError("Matrix rows must have equal length")
        self._data = data

    @classmethod
    def _wrap(cls, data: np.ndarray) -> ExactMatrix:
        obj = object.__new__(ExactMatrix)
        obj._data = data
        return obj

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int = None) -> ExactMatrix:
        return cls([[ZERO] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[Any]]) -> ExactMatrix:
        """Build from a row-major list of rational strings (ints are accepted too)."""
        try:
            parsed = [[GaussRational.parse(str(v)) for v in row] for row in rows]
        except (TypeError, ValueError) as e:
            raise ConfigValidationError(f"Invalid matrix entry: {e}") from e
        width = {len(row) for row in parsed}
        if len(width) > 1:
            raise ConfigValidationError("Matrix rows have different lengths")
        return cls(parsed)

    # -- shape --------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return tuple(self._data.shape)

    @property
    def size(self) -> int:
        rows, cols = self.shape
        if rows != cols:
            raise DimensionMismatchError(f"Matrix of shape {self.shape} is not square")
        return rows

    def __getitem__(self, index: Tuple[int, int]) -> GaussRational:
        return self._data[index]

    def rows(self) -> List[List[GaussRational]]:
        return [list(row) for row in self._data]

    def to_strings(self) -> List[List[str]]:
        return [[str(v) for v in row] for row in self._data]

    def to_sympy(self) -> sympy.Matrix:
        return sympy.Matrix([[to_sympy(v) for v in row] for row in self._data])

    # -- arithmetic ---------------------------------------------------------

    def _check_same_shape(self, other: ExactMatrix) -> None:
        if self.shape != other.shape:
            raise DimensionMismatchError(f"Shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return ExactMatrix._wrap(self._data + other._data)

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return ExactMatrix._wrap(self._data - other._data)

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix._wrap(-self._data)

    def __mul__(self, scalar: ScalarLike) -> ExactMatrix:
        if isinstance(scalar, ExactMatrix):
            raise TypeError("Use @ for matrix products")
        value = GaussRational.coerce(scalar)
        return ExactMatrix._wrap(np.array(
            [[v * value for v in row] for row in self._data], dtype=object
        ).reshape(self._data.shape))

    def __rmul__(self, scalar: ScalarLike) -> ExactMatrix:
        return self * scalar

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape[1] != other.shape[0]:
            raise DimensionMismatchError(f"Cannot multiply shapes {self.shape} and {other.shape}")
        if self._data.size == 0 or other._data.size == 0:
            return ExactMatrix.zeros(self.shape[0], other.shape[1])
        return ExactMatrix._wrap(self._data @ other._data)

    def __pow__(self, exponent: int) -> ExactMatrix:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ExactMatrix.identity(self.size)
        base = self
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result

    @property
    def T(self) -> ExactMatrix:
        return ExactMatrix._wrap(self._data.T.copy())

    def transpose(self) -> ExactMatrix:
        return self.T

    def trace(self) -> GaussRational:
        return sum((self._data[i, i] for i in range(self.size)), ZERO)

    def _domain_matrix(self) -> DomainMatrix:
        rows = [[v.domain_value for v in row] for row in self._data]
        return DomainMatrix(rows, self.shape, QQ_I)

    def det(self) -> GaussRational:
        n = self.size
        if n == 0:
            return ONE
        dm = self._domain_matrix()
        return GaussRational.from_domain(dm.det())

    def inverse(self) -> ExactMatrix:
        n = self.size
        if n == 0:
            return self
        if not self.det():
            raise SingularMatrixError("Matrix is singular and cannot be inverted")
        inv = self._domain_matrix().inv().to_Matrix()
        return ExactMatrix([[from_sympy(inv[i, j]) for j in range(n)] for i in range(n)])

    # -- predicates ---------------------------------------------------------

    def is_square(self) -> bool:
        rows, cols = self.shape
        return rows == cols

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def is_skew(self) -> bool:
        return self.is_square() and self == -self.T

    def is_zero(self) -> bool:
        return all(not v for v in self._data.flat)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for a, b in zip(self._data.flat, other._data.flat)
        )

    def __hash__(self) -> int:
        return hash((self.shape, tuple(self._data.flat)))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.to_strings()})"


class SymMatrix(ExactMatrix):
    """Symmetric matrix; the quadratic forms A, B."""

    __slots__ = ()

    def __init__(self, rows):
        super().__init__(rows)
        if not self.is_symmetric():
            raise ConfigValidationError(f"Matrix is not symmetric: {self.to_strings()}")


class SkewMatrix(ExactMatrix):
    """Skew-symmetric matrix with zero diagonal."""

    __slots__ = ()

    def __init__(self, rows):
        super().__init__(rows)
        if not self.is_skew():
            raise ConfigValidationError(f"Matrix is not skew-symmetric: {self.to_strings()}")


def as_matrix(value: Union[ExactMatrix, Iterable[Iterable[ScalarLike]]]) -> ExactMatrix:
    if isinstance(value, ExactMatrix):
        return value
    return ExactMatrix(value)


def standard_symplectic(nvars: int) -> SkewMatrix:
    """The block matrix [[0, 1], [-1, 0]] of size nvars (even)."""
    if nvars % 2:
        raise DimensionMismatchError(f"The standard symplectic matrix needs an even size, got {nvars}")
    half = nvars // 2
    rows = [[0] * nvars for _ in range(nvars)]
    for i in range(half):
        rows[i][half + i] = 1
        rows[half + i][i] = -1
    return SkewMatrix(rows)
