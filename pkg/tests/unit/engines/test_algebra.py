"""
Exact Algebra Unit Tests

Tests for labels, rationals, formal sums and polynomial containers.
"""

from fractions import Fraction

import pytest

from engines.services.algebra import (
    T_GEN,
    X_GEN,
    Y_GEN,
    ExponentPoly,
    FormalSum,
    format_poly,
    format_rational,
    interpolate_values,
    normalize_label,
    parse_rational,
    principal_specialization,
    sorted_labels,
    subsets,
)


class TestLabels:
    """Test label normalization and canonical ordering."""

    def test_integers_become_strings(self):
        assert normalize_label(3) == "3"
        assert normalize_label("a") == "a"

    def test_empty_and_boolean_labels_rejected(self):
        with pytest.raises(ValueError):
            normalize_label("")
        with pytest.raises(ValueError):
            normalize_label(True)

    def test_numeric_labels_sort_numerically_first(self):
        assert sorted_labels(["a", "10", "2"]) == ("2", "10", "a")

    def test_subsets_by_size_then_labels(self):
        assert list(subsets(["2", "1"])) == [
            frozenset(),
            frozenset({"1"}),
            frozenset({"2"}),
            frozenset({"1", "2"}),
        ]


class TestRationals:
    """Test exact rational parsing and formatting."""

    def test_parse_reduces(self):
        assert parse_rational("3/6") == Fraction(1, 2)
        assert parse_rational(4) == Fraction(4)

    def test_floats_refused(self):
        with pytest.raises(ValueError):
            parse_rational(0.5)

    def test_zero_denominator_refused(self):
        with pytest.raises(ValueError):
            parse_rational("1/0")

    def test_format(self):
        assert format_rational(Fraction(4, 2)) == "2"
        assert format_rational(Fraction(-1, 3)) == "-1/3"


class TestFormalSum:
    """Test finitely supported linear combinations."""

    def test_cancelling_terms_vanish(self):
        total = FormalSum([("a", 1), ("a", -1)])
        assert not total
        assert total == 0

    def test_arithmetic(self):
        first = FormalSum({"a": 1, "b": 2})
        second = FormalSum({"b": -2, "c": Fraction(1, 2)})
        total = first + second
        assert total.support() == ["a", "c"]
        assert total.coefficient("c") == Fraction(1, 2)
        assert (total * 2).coefficient("a") == 2
        assert (first - first) == 0

    def test_map_linear(self):
        total = FormalSum({"ab": 2}).map_linear(lambda s: FormalSum([(c, 1) for c in s]))
        assert total == FormalSum({"a": 2, "b": 2})

    def test_tensor(self):
        product = FormalSum.tensor(FormalSum({"a": 2}), FormalSum({"b": 3}))
        assert product.coefficient(("a", "b")) == 6

    def test_items_are_deterministic(self):
        total = FormalSum({"b": 1, "a": 1, "c": 1})
        assert [item for item, _ in total.items()] == ["a", "b", "c"]


class TestPolynomials:
    """Test polynomial formatting, interpolation and rational exponents."""

    def test_format_poly(self):
        assert format_poly(X_GEN**2 + 2 * Y_GEN + 1) == {"x^2": "1", "y": "2", "1": "1"}

    def test_interpolation(self):
        values = [Fraction(k * k) for k in range(3)]
        assert interpolate_values(values) == T_GEN**2

    def test_exponent_poly_rational_exponents(self):
        half = ExponentPoly.monomial(("x", "y"), (1, Fraction(1, 2)))
        square = half * half
        assert square.coefficient((2, 1)) == 1
        assert square.format() == {"x^2*y": "1"}

    def test_exponent_poly_cancellation(self):
        term = ExponentPoly.monomial(("x",), (Fraction(1, 3),), 2)
        assert not (term - term)

    def test_variable_mismatch(self):
        with pytest.raises(ValueError):
            ExponentPoly.constant(("x",), 1) + ExponentPoly.constant(("y",), 1)


class TestQuasisymmetric:
    """Test the principal specialization of monomial quasisymmetric functions."""

    def test_principal_specialization(self):
        qsym = FormalSum([((1, 1), 1), ((2,), 1)])
        # C(3, 2) + C(3, 1)
        assert principal_specialization(qsym, 3) == 6
