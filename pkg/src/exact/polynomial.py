"""
Sparse Polynomials
Multivariate polynomials in z_0..z_n with mu-Laurent coefficients, graded by z-degree.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..errors import DimensionMismatchError
from .scalars import MU_ZERO, GaussRational, MuScalar, ScalarLike

Monomial = Tuple[int, ...]
CoeffLike = Union[MuScalar, ScalarLike]


def monomial_degree(monomial: Monomial) -> int:
    return sum(monomial)


def _as_mu(coeff: CoeffLike) -> MuScalar:
    if isinstance(coeff, MuScalar):
        return coeff
    return MuScalar.constant(coeff)


def default_names(nvars: int) -> List[str]:
    return [f"z{i}" for i in range(nvars)]


class HomPoly:
    """
    Sparse polynomial in ``nvars`` commuting variables.

    Terms map an exponent tuple to a nonzero MuScalar. Despite the name the
    polynomial need not be homogeneous; ``is_homogeneous`` and
    ``homogeneous_components`` expose the z-grading.
    """

    __slots__ = ("_nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Monomial, CoeffLike]] = None):
        if nvars < 0:
            raise ValueError(f"nvars must be non-negative, got {nvars}")
        cleaned: Dict[Monomial, MuScalar] = {}
        for monomial, coeff in (terms or {}).items():
            monomial = tuple(int(e) for e in monomial)
            if len(monomial) != nvars or any(e < 0 for e in monomial):
                raise DimensionMismatchError(
                    f"Monomial {monomial} is not a valid exponent vector for {nvars} variables"
                )
            total = cleaned.get(monomial, MU_ZERO) + _as_mu(coeff)
            if total:
                cleaned[monomial] = total
            else:
                cleaned.pop(monomial, None)
        self._nvars = nvars
        self._terms = cleaned
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Monomial, MuScalar]) -> HomPoly:
        obj = object.__new__(cls)
        obj._nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> HomPoly:
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, coeff: CoeffLike = 1) -> HomPoly:
        value = _as_mu(coeff)
        return cls._raw(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def variable(cls, nvars: int, index: int) -> HomPoly:
        if not 0 <= index < nvars:
            raise IndexError(f"Variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls._raw(nvars, {tuple(exps): MuScalar.constant(1)})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: CoeffLike = 1) -> HomPoly:
        return cls(len(exponents), {tuple(exponents): coeff})

    # -- accessors ----------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> Mapping[Monomial, MuScalar]:
        return dict(self._terms)

    def items(self) -> Iterable[Tuple[Monomial, MuScalar]]:
        return self._terms.items()

    def coefficient(self, monomial: Sequence[int]) -> MuScalar:
        return self._terms.get(tuple(monomial), MU_ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(monomial_degree(m) == 0 for m in self._terms)

    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted({monomial_degree(m) for m in self._terms}))

    def total_degree(self) -> int:
        """Largest z-degree of a monomial; -1 for the zero polynomial."""
        return max((monomial_degree(m) for m in self._terms), default=-1)

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        found = self.degrees()
        if not found:
            return True
        if len(found) != 1:
            return False
        return degree is None or found[0] == degree

    def mu_powers(self) -> Tuple[int, ...]:
        powers = set()
        for coeff in self._terms.values():
            powers.update(coeff.powers())
        return tuple(sorted(powers))

    def mu_coefficient(self, power: int) -> HomPoly:
        """The z-polynomial multiplying mu**power."""
        result = {}
        for monomial, coeff in self._terms.items():
            value = coeff.coefficient(power)
            if value:
                result[monomial] = MuScalar.constant(value)
        return HomPoly._raw(self._nvars, result)

    def map_coefficients(self, fn) -> HomPoly:
        return HomPoly(self._nvars, {m: fn(c) for m, c in self._terms.items()})

    # -- ring operations ----------------------------------------------------

    def _check(self, other: HomPoly) -> None:
        if self._nvars != other._nvars:
            raise DimensionMismatchError(
                f"Polynomials in {self._nvars} and {other._nvars} variables cannot be combined"
            )

    def __add__(self, other: HomPoly) -> HomPoly:
        if not isinstance(other, HomPoly):
            return NotImplemented
        self._check(other)
        if not other._terms:
            return self
        result = dict(self._terms)
        for monomial, coeff in other._terms.items():
            total = result.get(monomial, MU_ZERO) + coeff
            if total:
                result[monomial] = total
            else:
                result.pop(monomial, None)
        return HomPoly._raw(self._nvars, result)

    def __neg__(self) -> HomPoly:
        return HomPoly._raw(self._nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: HomPoly) -> HomPoly:
        if not isinstance(other, HomPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union[HomPoly, CoeffLike]) -> HomPoly:
        if isinstance(other, HomPoly):
            self._check(other)
            result: Dict[Monomial, MuScalar] = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    monomial = tuple(a + b for a, b in zip(m1, m2))
                    total = result.get(monomial, MU_ZERO) + c1 * c2
                    if total:
                        result[monomial] = total
                    else:
                        result.pop(monomial, None)
            return HomPoly._raw(self._nvars, result)
        if isinstance(other, (MuScalar, GaussRational, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: CoeffLike) -> HomPoly:
        if isinstance(other, (MuScalar, GaussRational, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, factor: CoeffLike) -> HomPoly:
        if not isinstance(factor, (MuScalar, GaussRational, int, Fraction)):
            raise TypeError(f"Cannot scale a polynomial by {factor!r}")
        if not factor:
            return HomPoly.zero(self._nvars)
        result = {}
        for monomial, coeff in self._terms.items():
            value = coeff * factor
            if value:
                result[monomial] = value
        return HomPoly._raw(self._nvars, result)

    def __pow__(self, exponent: int) -> HomPoly:
        if exponent < 0:
            raise ValueError("Polynomials only support non-negative integer powers")
        result = HomPoly.constant(self._nvars, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def partial(self, index: int) -> HomPoly:
        if not 0 <= index < self._nvars:
            raise IndexError(f"Variable index {index} out of range for {self._nvars} variables")
        result = {}
        for monomial, coeff in self._terms.items():
            e = monomial[index]
            if e == 0:
                continue
            lowered = monomial[:index] + (e - 1,) + monomial[index + 1:]
            result[lowered] = coeff * e
        return HomPoly._raw(self._nvars, result)

    def derivative(self, counts: Sequence[int]) -> HomPoly:
        """Iterated partial derivative, ``counts[a]`` times in variable ``a``."""
        if len(counts) != self._nvars:
            raise DimensionMismatchError(
                f"Multi-index of length {len(counts)} for {self._nvars} variables"
            )
        if not any(counts):
            return self
        result = {}
        for monomial, coeff in self._terms.items():
            if any(e < c for e, c in zip(monomial, counts)):
                continue
            weight = 1
            for e, c in zip(monomial, counts):
                if c:
                    weight *= factorial(e) // factorial(e - c)
            lowered = tuple(e - c for e, c in zip(monomial, counts))
            result[lowered] = coeff * weight
        return HomPoly._raw(self._nvars, result)

    def homogeneous_components(self) -> Dict[int, HomPoly]:
        pieces: Dict[int, Dict[Monomial, MuScalar]] = {}
        for monomial, coeff in self._terms.items():
            pieces.setdefault(monomial_degree(monomial), {})[monomial] = coeff
        return {d: HomPoly._raw(self._nvars, t) for d, t in sorted(pieces.items())}

    def homogeneous_piece(self, degree: int) -> HomPoly:
        return HomPoly._raw(
            self._nvars,
            {m: c for m, c in self._terms.items() if monomial_degree(m) == degree},
        )

    def substitute(self, images: Sequence[HomPoly]) -> HomPoly:
        """Ring homomorphism sending z_a to ``images[a]``."""
        if len(images) != self._nvars:
            raise DimensionMismatchError(
                f"Expected {self._nvars} images, got {len(images)}"
            )
        target = images[0].nvars if images else 0
        result = HomPoly.zero(target)
        for monomial, coeff in self._terms.items():
            term = HomPoly.constant(target, coeff)
            for image, e in zip(images, monomial):
                if e:
                    term = term * image ** e
            result = result + term
        return result

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, HomPoly):
            return self._nvars == other._nvars and self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- rendering ----------------------------------------------------------

    def sorted_terms(self) -> List[Tuple[Monomial, int, GaussRational]]:
        """(monomial, mu-power, coefficient) triples in canonical order."""
        ordered = []
        for monomial in sorted(self._terms, reverse=True):
            coeff = self._terms[monomial]
            for power in coeff.powers():
                ordered.append((monomial, power, coeff.coefficient(power)))
        return ordered

    def render(self, names: Optional[Sequence[str]] = None) -> str:
        names = list(names) if names is not None else default_names(self._nvars)
        if len(names) != self._nvars:
            raise DimensionMismatchError(f"{len(names)} names for {self._nvars} variables")
        pieces: List[str] = []
        for monomial, power, coeff in self.sorted_terms():
            factors = []
            if power == 1:
                factors.append("mu")
            elif power:
                factors.append(f"mu^{power}")
            for name, e in zip(names, monomial):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            negative = coeff.is_real() and coeff.re < 0
            magnitude = -coeff if negative else coeff
            if magnitude == 1 and factors:
                text = "*".join(factors)
            else:
                if magnitude.is_real() and magnitude.re.denominator == 1:
                    coeff_text = str(magnitude)
                else:
                    coeff_text = f"({magnitude})"
                text = "*".join([coeff_text] + factors)
            if not pieces:
                pieces.append(f"-{text}" if negative else text)
            else:
                pieces.append(f" - {text}" if negative else f" + {text}")
        return "".join(pieces) if pieces else "0"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"HomPoly({self._nvars}, {self.render()!r})"

    # -- serialization ------------------------------------------------------

    def to_json(self) -> Dict[str, Any]:
        return {
            "nvars": self._nvars,
            "terms": [
                {
                    "monomial": list(monomial),
                    "coefficients": {
                        str(power): str(coeff.coefficient(power)) for power in coeff.powers()
                    },
                }
                for monomial, coeff in sorted(self._terms.items(), reverse=True)
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> HomPoly:
        nvars = int(data["nvars"])
        terms = {}
        for entry in data.get("terms", []):
            coeff = MuScalar({int(p): GaussRational.parse(c) for p, c in entry["coefficients"].items()})
            terms[tuple(entry["monomial"])] = coeff
        return cls(nvars, terms)


def add(p: HomPoly, q: HomPoly) -> HomPoly:
    return p + q


def mul(p: HomPoly, q: HomPoly) -> HomPoly:
    return p * q


def partial(p: HomPoly, index: int) -> HomPoly:
    return p.partial(index)


def homogeneous_components(p: HomPoly) -> Dict[int, HomPoly]:
    return p.homogeneous_components()
