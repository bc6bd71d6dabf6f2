"""
Common Schema Types

Label and rational field types shared by every payload, and the encoder
that turns engine values into JSON-ready data.
"""

from collections.abc import Mapping
from fractions import Fraction
from typing import Annotated, Any

from pydantic import BeforeValidator, PlainSerializer, PlainValidator
from sympy.polys.rings import PolyElement

from engines.services.algebra import (
    ExponentPoly,
    FormalSum,
    format_composition,
    format_poly,
    format_rational,
    normalize_label,
    parse_rational,
    sorted_labels,
)

Label = Annotated[str, BeforeValidator(normalize_label)]

Rational = Annotated[
    Fraction,
    PlainValidator(parse_rational),
    PlainSerializer(format_rational, return_type=str),
]


def parse_subset_key(key: str) -> frozenset[str]:
    """'1,2' -> {1, 2}; the empty string is the empty set."""
    if not key.strip():
        return frozenset()
    return frozenset(normalize_label(part.strip()) for part in key.split(","))


def _item_key(item: object) -> str:
    if isinstance(item, tuple) and all(isinstance(part, int) for part in item):
        return format_composition(item)
    return str(item)


def encode_value(value: Any) -> Any:
    """
    JSON-ready form of an engine value.

    Rationals become "p/q" strings, polynomials and formal sums become maps
    from monomial or item strings to rationals, label sets become sorted
    lists.
    """
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction | int):
        return format_rational(value)
    if isinstance(value, PolyElement):
        return format_poly(value)
    if isinstance(value, ExponentPoly):
        return value.format()
    if isinstance(value, FormalSum):
        return {_item_key(item): format_rational(c) for item, c in value.items()}
    if isinstance(value, frozenset | set):
        return list(sorted_labels(value))
    if isinstance(value, Mapping):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [encode_value(v) for v in value]
    return str(value)
