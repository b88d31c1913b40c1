"""
Exception hierarchy for the star-product engine.
Every error carries a machine-readable code and the CLI exit status it maps to.
"""

from typing import FrozenSet, Iterable, Optional


class StarEngineError(Exception):
    """Base class for all engine errors."""

    code = "ENGINE_ERROR"
    exit_code = 1


class DimensionMismatchError(StarEngineError, ValueError):
    """Operands live in rings (or matrix spaces) of different sizes."""

    code = "DIMENSION_MISMATCH"
    exit_code = 4


class ExprSyntaxError(StarEngineError):
    """Syntax error in an expression, located by a 1-based offset."""

    code = "PARSE_ERROR"
    exit_code = 2

    def __init__(self, message: str, offset: int, expected: Optional[Iterable[str]] = None):
        self.offset = offset
        self.expected: FrozenSet[str] = frozenset(expected or ())
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)


class ConfigValidationError(StarEngineError):
    """Configuration file is malformed or fails validation."""

    code = "CONFIG_INVALID"
    exit_code = 3


class PreconditionError(StarEngineError):
    """A mathematical precondition of an operation does not hold."""

    code = "PRECONDITION_FAILED"
    exit_code = 4


class SingularMatrixError(PreconditionError):
    """A matrix that must be inverted is singular."""

    code = "SINGULAR_MATRIX"


class NonConstantPoissonError(PreconditionError):
    """The star product was requested with a non-constant Poisson matrix."""

    code = "NON_CONSTANT_LAMBDA"


class DegreeMismatchError(PreconditionError):
    """A grading condition is violated."""

    code = "DEGREE_MISMATCH"


class PoleError(PreconditionError):
    """Specialising mu = 0 in the presence of negative mu-powers."""

    code = "MU_POLE"
