"""
Exact Algebra Core

Labels, exact rationals, finitely supported formal sums and the polynomial
containers every invariant is valued in.

Scalars are Fractions. UniPoly and BiPoly are sympy sparse ring elements over
QQ; ExponentPoly allows rational exponents, which sympy rings do not.
"""

import logging
from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Any, Generic, TypeVar

from sympy import Rational
from sympy.polys.domains import QQ
from sympy.polys.polyfuncs import interpolate
from sympy.polys.rings import PolyElement, ring

logger = logging.getLogger(__name__)

T = TypeVar("T", bound=Hashable)
U = TypeVar("U", bound=Hashable)

RationalLike = Fraction | int | str

UNI_RING, T_GEN = ring("t", QQ)
BI_RING, X_GEN, Y_GEN = ring("x,y", QQ)


# ---------------------------------------------------------------------------
# Labels
# ---------------------------------------------------------------------------


def normalize_label(label: object) -> str:
    """Labels are strings; integers become their decimal form."""
    if isinstance(label, bool):
        raise ValueError(f"Invalid label: {label!r}")
    if isinstance(label, int):
        return str(label)
    if isinstance(label, str) and label:
        return label
    raise ValueError(f"Invalid label: {label!r}")


def label_key(label: str) -> tuple[int, int, str]:
    # numeric labels sort numerically and before everything else
    if label.isdigit():
        return (0, int(label), label)
    return (1, 0, label)


def sorted_labels(labels: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(labels, key=label_key))


def set_key(labels: Iterable[str]) -> tuple[int, tuple[tuple[int, int, str], ...]]:
    """Canonical ordering of label sets: by size, then lexicographically."""
    ordered = sorted_labels(labels)
    return (len(ordered), tuple(label_key(label) for label in ordered))


def format_set(labels: Iterable[str]) -> str:
    return ",".join(sorted_labels(labels))


def subsets(ground: Iterable[str]) -> Iterator[frozenset[str]]:
    """All subsets of ``ground`` in canonical order (by size, then labels)."""
    ordered = sorted_labels(ground)
    for size in range(len(ordered) + 1):
        for combo in combinations(ordered, size):
            yield frozenset(combo)


def require_subset(subset: Iterable[str], ground: frozenset[str]) -> frozenset[str]:
    subset = frozenset(subset)
    if not subset <= ground:
        raise ValueError(
            f"Subset {{{format_set(subset)}}} is not contained in ground set "
            f"{{{format_set(ground)}}}"
        )
    return subset


# ---------------------------------------------------------------------------
# Rationals
# ---------------------------------------------------------------------------


def parse_rational(value: object) -> Fraction:
    """
    Parse an exact rational.

    Accepts Fractions, ints and strings "p" or "p/q". Floats are refused:
    every value in this package must be exact.
    """
    if isinstance(value, bool):
        raise ValueError(f"Invalid rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"Invalid rational: {value!r}")
    raise ValueError(f"Invalid rational {value!r}: use an int or a 'p/q' string")


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def qq(value: RationalLike) -> Any:
    """Convert to an element of the sympy QQ domain."""
    value = parse_rational(value)
    return QQ(value.numerator, value.denominator)


def rational(coefficient: Any) -> Fraction:
    """Convert a QQ (or ZZ) domain element back to a Fraction."""
    return Fraction(int(coefficient.numerator), int(coefficient.denominator))


# ---------------------------------------------------------------------------
# Formal sums
# ---------------------------------------------------------------------------


class FormalSum(Generic[T]):
    """
    Finitely supported rational linear combination of hashable objects.

    Zero coefficients are never stored, so two sums are equal exactly when
    their term maps are equal.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[T, RationalLike] | Iterable[tuple[T, RationalLike]] = ()):
        accumulated: dict[T, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for item, coefficient in items:
            value = accumulated.get(item, Fraction(0)) + parse_rational(coefficient)
            if value:
                accumulated[item] = value
            else:
                accumulated.pop(item, None)
        self._terms = accumulated

    @classmethod
    def of(cls, item: T, coefficient: RationalLike = 1) -> "FormalSum[T]":
        return cls([(item, coefficient)])

    @classmethod
    def zero(cls) -> "FormalSum[T]":
        return cls()

    @staticmethod
    def tensor(left: "FormalSum[T]", right: "FormalSum[U]") -> "FormalSum[tuple[T, U]]":
        """Bilinear tensor product; terms are pairs."""
        return FormalSum(
            ((a, b), ca * cb) for a, ca in left.items() for b, cb in right.items()
        )

    def map_linear(self, fn: Callable[[T], "FormalSum[U]"]) -> "FormalSum[U]":
        """Extend ``fn`` (object -> sum) linearly to this sum."""
        result: dict[U, Fraction] = {}
        for item, coefficient in self._terms.items():
            for image, image_coefficient in fn(item).items():
                result[image] = result.get(image, Fraction(0)) + coefficient * image_coefficient
        return FormalSum(result)

    def items(self) -> list[tuple[T, Fraction]]:
        """Terms in deterministic order."""
        return sorted(self._terms.items(), key=lambda kv: str(kv[0]))

    def support(self) -> list[T]:
        return [item for item, _ in self.items()]

    def coefficient(self, item: T) -> Fraction:
        return self._terms.get(item, Fraction(0))

    def __contains__(self, item: object) -> bool:
        return item in self._terms

    def __iter__(self) -> Iterator[T]:
        return iter(self.support())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: object) -> "FormalSum[T]":
        if isinstance(other, FormalSum):
            return FormalSum([*self._terms.items(), *other._terms.items()])
        if other == 0:
            return self
        return NotImplemented

    def __radd__(self, other: object) -> "FormalSum[T]":
        return self.__add__(other)

    def __neg__(self) -> "FormalSum[T]":
        return FormalSum({item: -c for item, c in self._terms.items()})

    def __sub__(self, other: object) -> "FormalSum[T]":
        if isinstance(other, FormalSum):
            return self + (-other)
        if other == 0:
            return self
        return NotImplemented

    def __mul__(self, scalar: object) -> "FormalSum[T]":
        if isinstance(scalar, Fraction | int) and not isinstance(scalar, bool):
            return FormalSum({item: c * scalar for item, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FormalSum):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "FormalSum(0)"
        body = " + ".join(f"{format_rational(c)}*[{item}]" for item, c in self.items())
        return f"FormalSum({body})"


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


def _monomial_name(symbols: Iterable[object], exponents: Iterable[object]) -> str:
    factors = []
    for symbol, exponent in zip(symbols, exponents, strict=True):
        if exponent == 0:
            continue
        if exponent == 1:
            factors.append(str(symbol))
        else:
            shown = format_rational(exponent) if isinstance(exponent, Fraction) else str(exponent)
            factors.append(f"{symbol}^{shown}")
    return "*".join(factors) or "1"


def poly_coefficients(poly: PolyElement) -> dict[tuple[int, ...], Fraction]:
    return {monom: rational(coeff) for monom, coeff in poly.terms()}


def format_poly(poly: PolyElement) -> dict[str, str]:
    """Coefficient map keyed by monomial names such as "x^2*y" or "1"."""
    return {
        _monomial_name(poly.ring.symbols, monom): format_rational(rational(coeff))
        for monom, coeff in poly.terms()
    }


def uni_poly(coefficients: Mapping[int, RationalLike]) -> PolyElement:
    return UNI_RING.from_dict({(degree,): qq(c) for degree, c in coefficients.items()})


def bi_poly(coefficients: Mapping[tuple[int, int], RationalLike]) -> PolyElement:
    return BI_RING.from_dict({monom: qq(c) for monom, c in coefficients.items()})


def to_uni(poly: PolyElement) -> PolyElement:
    """Move a univariate polynomial from any one-generator ring into t."""
    if poly.ring.ngens != 1:
        raise ValueError(f"Expected a univariate polynomial, got ring {poly.ring}")
    return UNI_RING.from_dict(dict(poly.items()))


def interpolate_values(values: list[Fraction]) -> PolyElement:
    """The polynomial of degree < len(values) taking ``values[k]`` at t = k."""
    data = [(k, Rational(v.numerator, v.denominator)) for k, v in enumerate(values)]
    return UNI_RING.from_expr(interpolate(data, UNI_RING.symbols[0]))


def evaluate_uni(poly: PolyElement, point: RationalLike) -> Fraction:
    return rational(poly(qq(point)))


class ExponentPoly:
    """
    Laurent-type polynomial whose exponents may be any rationals.

    Used for the universal norm and the universal Tutte character, whose
    y-exponents are values of a submodular function.
    """

    __slots__ = ("variables", "_terms")

    def __init__(
        self,
        variables: tuple[str, ...],
        terms: Mapping[tuple[RationalLike, ...], RationalLike] | None = None,
    ):
        self.variables = variables
        accumulated: dict[tuple[Fraction, ...], Fraction] = {}
        for exponents, coefficient in (terms or {}).items():
            if len(exponents) != len(variables):
                raise ValueError(
                    f"Monomial {exponents} does not match variables {variables}"
                )
            key = tuple(parse_rational(e) for e in exponents)
            value = accumulated.get(key, Fraction(0)) + parse_rational(coefficient)
            if value:
                accumulated[key] = value
            else:
                accumulated.pop(key, None)
        self._terms = accumulated

    @classmethod
    def monomial(
        cls, variables: tuple[str, ...], exponents: tuple[RationalLike, ...], coefficient: RationalLike = 1
    ) -> "ExponentPoly":
        return cls(variables, {exponents: coefficient})

    @classmethod
    def constant(cls, variables: tuple[str, ...], value: RationalLike) -> "ExponentPoly":
        return cls(variables, {tuple(0 for _ in variables): value})

    def terms(self) -> list[tuple[tuple[Fraction, ...], Fraction]]:
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, exponents: tuple[RationalLike, ...]) -> Fraction:
        return self._terms.get(tuple(parse_rational(e) for e in exponents), Fraction(0))

    def format(self) -> dict[str, str]:
        return {
            _monomial_name(self.variables, exponents): format_rational(c)
            for exponents, c in self.terms()
        }

    def _coerce(self, other: object) -> "ExponentPoly | None":
        if isinstance(other, ExponentPoly):
            if other.variables != self.variables:
                raise ValueError(f"Variable mismatch: {self.variables} vs {other.variables}")
            return other
        if isinstance(other, Fraction | int) and not isinstance(other, bool):
            return ExponentPoly.constant(self.variables, other)
        return None

    def __add__(self, other: object) -> "ExponentPoly":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        merged = dict(self._terms)
        for exponents, c in coerced._terms.items():
            merged[exponents] = merged.get(exponents, Fraction(0)) + c
        return ExponentPoly(self.variables, merged)

    __radd__ = __add__

    def __neg__(self) -> "ExponentPoly":
        return ExponentPoly(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: object) -> "ExponentPoly":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self + (-coerced)

    def __rsub__(self, other: object) -> "ExponentPoly":
        return (-self) + other

    def __mul__(self, other: object) -> "ExponentPoly":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        product: dict[tuple[Fraction, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in coerced._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2, strict=True))
                product[key] = product.get(key, Fraction(0)) + c1 * c2
        return ExponentPoly(self.variables, product)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ExponentPoly):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, Fraction | int):
            return self == ExponentPoly.constant(self.variables, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"ExponentPoly({self.format()})"


# ---------------------------------------------------------------------------
# Quasisymmetric functions (monomial basis)
# ---------------------------------------------------------------------------

QSymMonomial = FormalSum[tuple[int, ...]]


def principal_specialization(qsym: QSymMonomial, k: int) -> Fraction:
    """Value at k ones: M_alpha(1^k) = C(k, len(alpha))."""
    return sum(
        (c * comb(k, len(composition)) for composition, c in qsym.items()),
        Fraction(0),
    )


def format_composition(composition: tuple[int, ...]) -> str:
    return "M(" + ",".join(str(part) for part in composition) + ")"
