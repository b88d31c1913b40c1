"""
Exact Scalars
Gaussian rationals and Laurent polynomials in the formal parameter mu.
"""

from __future__ import annotations

import re
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Dict, Iterable, Mapping, Tuple, Union

from sympy.polys.domains import QQ, QQ_I

from ..errors import PoleError

Rational = Union[int, Fraction]
ScalarLike = Union[int, Fraction, "GaussRational"]

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?")


def _parse_rational(text: str, source: str) -> Fraction:
    if not _RATIONAL_RE.fullmatch(text):
        raise ValueError(f"Not a rational string: {source!r}")
    return Fraction(text)


def _format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _to_qq(value: Rational) -> Any:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _from_qq(value: Any) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


class GaussRational:
    """An element re + im*i of Q(i), wrapping an element of sympy's QQ_I domain."""

    __slots__ = ("_value",)

    def __init__(self, re: Rational = 0, im: Rational = 0) -> None:
        self._value = QQ_I(_to_qq(re), _to_qq(im))

    @classmethod
    def from_domain(cls, value: Any) -> GaussRational:
        """Wrap an element of QQ_I."""
        obj = object.__new__(cls)
        obj._value = value
        return obj

    @classmethod
    def coerce(cls, value: ScalarLike) -> GaussRational:
        if isinstance(value, GaussRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"Cannot interpret {value!r} as a Gaussian rational")

    @classmethod
    def parse(cls, text: str) -> GaussRational:
        """
        Parse the rational-string format used in configs and JSON output.

        Accepted forms: ``"3"``, ``"-3/4"``, ``"i"``, ``"-2/5i"``, ``"1/2+1/3i"``.
        """
        s = text.replace(" ", "")
        if not s:
            raise ValueError("Empty rational string")
        if not s.endswith("i"):
            return cls(_parse_rational(s, text))
        body = s[:-1]
        split = max(body.rfind("+"), body.rfind("-"))
        if split > 0:
            real_text, imag_text = body[:split], body[split:]
        else:
            real_text, imag_text = "", body
        if imag_text in ("", "+"):
            imag = Fraction(1)
        elif imag_text == "-":
            imag = Fraction(-1)
        else:
            imag = _parse_rational(imag_text, text)
        real = _parse_rational(real_text, text) if real_text else Fraction(0)
        return cls(real, imag)

    @property
    def domain_value(self) -> Any:
        return self._value

    @property
    def re(self) -> Fraction:
        return _from_qq(self._value.x)

    @property
    def im(self) -> Fraction:
        return _from_qq(self._value.y)

    def is_real(self) -> bool:
        return not self._value.y

    def conjugate(self) -> GaussRational:
        return GaussRational.from_domain(QQ_I(self._value.x, -self._value.y))

    def norm(self) -> Fraction:
        x, y = self._value.x, self._value.y
        return _from_qq(x * x + y * y)

    def inverse(self) -> GaussRational:
        if not self._value:
            raise ZeroDivisionError("Gaussian rational division by zero")
        return GaussRational.from_domain(QQ_I.one / self._value)

    @staticmethod
    def _operand(other: Any) -> Any:
        if isinstance(other, GaussRational):
            return other._value
        if isinstance(other, (int, Fraction)):
            return QQ_I(_to_qq(other), QQ.zero)
        return None

    def __add__(self, other: ScalarLike) -> GaussRational:
        value = self._operand(other)
        if value is None:
            return NotImplemented
        return GaussRational.from_domain(self._value + value)

    def __radd__(self, other: ScalarLike) -> GaussRational:
        return self + other

    def __neg__(self) -> GaussRational:
        return GaussRational.from_domain(-self._value)

    def __sub__(self, other: ScalarLike) -> GaussRational:
        value = self._operand(other)
        if value is None:
            return NotImplemented
        return GaussRational.from_domain(self._value - value)

    def __rsub__(self, other: ScalarLike) -> GaussRational:
        return (-self) + other

    def __mul__(self, other: ScalarLike) -> GaussRational:
        value = self._operand(other)
        if value is None:
            return NotImplemented
        return GaussRational.from_domain(self._value * value)

    def __rmul__(self, other: ScalarLike) -> GaussRational:
        return self * other

    def __truediv__(self, other: ScalarLike) -> GaussRational:
        value = self._operand(other)
        if value is None:
            return NotImplemented
        if not value:
            raise ZeroDivisionError("Gaussian rational division by zero")
        return GaussRational.from_domain(self._value / value)

    def __rtruediv__(self, other: ScalarLike) -> GaussRational:
        return GaussRational.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> GaussRational:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        value = self._operand(other)
        if value is None:
            return NotImplemented
        return self._value == value

    def __hash__(self) -> int:
        if not self._value.y:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self._value)

    def __repr__(self) -> str:
        return f"GaussRational({str(self)!r})"

    def __str__(self) -> str:
        re_part, im_part = self.re, self.im
        if im_part == 0:
            return _format_rational(re_part)
        if im_part == 1:
            imag = "i"
        elif im_part == -1:
            imag = "-i"
        else:
            imag = f"{_format_rational(im_part)}i"
        if re_part == 0:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{_format_rational(re_part)}{sign}{imag}"


ZERO = GaussRational(0)
ONE = GaussRational(1)
I_UNIT = GaussRational(0, 1)


class MuScalar:
    """
    Laurent polynomial in mu with Gaussian-rational coefficients.

    Stored as a map from mu-exponent to a nonzero coefficient; the empty map
    is zero. Instances are treated as immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[int, ScalarLike], Iterable[Tuple[int, ScalarLike]], None] = None):
        cleaned: Dict[int, GaussRational] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for power, coeff in items:
                value = GaussRational.coerce(coeff)
                total = cleaned.get(power, ZERO) + value
                if total:
                    cleaned[power] = total
                else:
                    cleaned.pop(power, None)
        self._terms = cleaned
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[int, GaussRational]) -> MuScalar:
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, value: ScalarLike) -> MuScalar:
        value = GaussRational.coerce(value)
        return cls._raw({0: value} if value else {})

    @classmethod
    def mu(cls, power: int = 1, coeff: ScalarLike = 1) -> MuScalar:
        value = GaussRational.coerce(coeff)
        return cls._raw({power: value} if value else {})

    @property
    def terms(self) -> Mapping[int, GaussRational]:
        return MappingProxyType(self._terms)

    def powers(self) -> Tuple[int, ...]:
        return tuple(sorted(self._terms))

    def min_power(self) -> int:
        if not self._terms:
            raise ValueError("Zero has no mu-powers")
        return min(self._terms)

    def max_power(self) -> int:
        if not self._terms:
            raise ValueError("Zero has no mu-powers")
        return max(self._terms)

    def coefficient(self, power: int) -> GaussRational:
        return self._terms.get(power, ZERO)

    def is_constant(self) -> bool:
        return all(power == 0 for power in self._terms)

    def shift(self, power: int) -> MuScalar:
        """Multiply by mu**power."""
        return MuScalar._raw({p + power: c for p, c in self._terms.items()})

    def evaluate(self, value: ScalarLike) -> GaussRational:
        """Substitute mu = value."""
        value = GaussRational.coerce(value)
        if not value and any(p < 0 for p in self._terms):
            raise PoleError("mu-coefficient has a pole at mu = 0")
        total = ZERO
        for power, coeff in self._terms.items():
            if power == 0:
                total = total + coeff
            elif value:
                total = total + coeff * value ** power
        return total

    def __add__(self, other: MuScalar) -> MuScalar:
        if not isinstance(other, MuScalar):
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        result = dict(self._terms)
        for power, coeff in other._terms.items():
            total = result.get(power, ZERO) + coeff
            if total:
                result[power] = total
            else:
                result.pop(power, None)
        return MuScalar._raw(result)

    def __neg__(self) -> MuScalar:
        return MuScalar._raw({p: -c for p, c in self._terms.items()})

    def __sub__(self, other: MuScalar) -> MuScalar:
        if not isinstance(other, MuScalar):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union[MuScalar, ScalarLike]) -> MuScalar:
        if isinstance(other, MuScalar):
            result: Dict[int, GaussRational] = {}
            for p1, c1 in self._terms.items():
                for p2, c2 in other._terms.items():
                    power = p1 + p2
                    total = result.get(power, ZERO) + c1 * c2
                    if total:
                        result[power] = total
                    else:
                        result.pop(power, None)
            return MuScalar._raw(result)
        if isinstance(other, (int, Fraction, GaussRational)):
            if not other:
                return MU_ZERO
            return MuScalar._raw({p: c * other for p, c in self._terms.items()})
        return NotImplemented

    def __rmul__(self, other: ScalarLike) -> MuScalar:
        return self * other

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MuScalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, GaussRational)):
            return self == MuScalar.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        inner = ", ".join(f"{p}: {str(c)!r}" for p, c in sorted(self._terms.items()))
        return f"MuScalar({{{inner}}})"


MU_ZERO = MuScalar()
MU_ONE = MuScalar.constant(1)
