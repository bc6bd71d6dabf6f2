"""
Valuation Lab Unit Tests

Tests for relations, the invariant registry and the weak, strong and
pointwise checks.
"""

from fractions import Fraction

import pytest

from engines.config import get_settings
from engines.services.algebra import FormalSum
from engines.services.matroid import Matroid
from engines.services.permutahedra import SubmodularGP
from engines.services.preposet import Preposet
from engines.services.valuation_lab import (
    INVARIANTS,
    Cell,
    SubdivisionComplex,
    applicable_invariants,
    as_convex,
    builtin_relations,
    coerce,
    convex_combination,
    get_builtin,
    get_invariant,
    list_builtins,
    list_invariants,
    object_dimension,
    pointwise_check,
    run_checks,
    strong_check,
    weak_check,
)
from tests.factories import make_cone, make_relaxed_u24, make_uniform_matroid


class TestCoercion:
    """Test conversion of objects to the kinds invariants consume."""

    def test_matroid_to_polytope(self, u24):
        assert isinstance(as_convex(u24), SubmodularGP)
        assert isinstance(coerce(u24, "gp"), SubmodularGP)

    def test_poset_is_not_a_matroid(self, chain3):
        with pytest.raises(ValueError):
            coerce(chain3, "matroid")

    def test_cone_to_poset(self):
        assert coerce(make_cone(), "poset").relation == make_cone().preposet.relation

    def test_preposet_with_a_class_is_not_a_poset(self):
        preposet = Preposet.from_relations([1, 2], [(1, 2), (2, 1)])
        with pytest.raises(ValueError):
            coerce(preposet, "poset")

    def test_no_indicator(self):
        with pytest.raises(ValueError):
            as_convex("U(2,4)")

    def test_convex_combination(self, u24):
        combination = convex_combination(u24)
        assert combination == FormalSum.of(u24.to_gp())

    def test_dimensions(self, u24, chain3):
        assert object_dimension(u24) == 3
        assert object_dimension(chain3) == 2


class TestRelations:
    """Test relation construction and validation."""

    def test_subdivision_signs(self):
        relation = get_builtin("u24-split")
        assert [c.coefficient for c in relation.cells] == [1, 1, -1]
        assert [c.dimension for c in relation.cells] == [3, 3, 2]

    def test_valid_relation_has_no_problems(self):
        assert get_builtin("u24-split").problems() == []

    def test_wrong_recorded_dimension(self, u24):
        relation = SubdivisionComplex("bad", u24, (Cell(u24, 2, Fraction(1)),))
        assert relation.problems() == ["cell 0 records dimension 2, computed 3"]

    def test_cell_on_another_ground_set(self, u24):
        other = make_uniform_matroid(labels=["a", "b", "c", "d"])
        relation = SubdivisionComplex.build("bad", u24, [other])
        assert relation.problems() == ["cell 0 lives on a different ground set"]

    def test_unknown_builtin(self):
        with pytest.raises(ValueError):
            get_builtin("nope")

    def test_list_builtins(self):
        names = [entry["name"] for entry in list_builtins()]
        assert names == [r.name for r in builtin_relations()]
        assert "chain-cone-split" in names


class TestRegistry:
    """Test the invariant registry."""

    def test_listing(self):
        listed = list_invariants()
        assert len(listed) == len(INVARIANTS) == 19
        assert [entry["name"] for entry in listed] == sorted(INVARIANTS)

    def test_unknown_invariant(self):
        with pytest.raises(ValueError):
            get_invariant("nope")

    def test_applicable_to_matroids(self):
        names = applicable_invariants(get_builtin("u24-split"))
        assert {"one", "tutte", "universal_tutte"} <= set(names)
        assert "poincare" not in names

    def test_applicable_to_cones(self):
        names = applicable_invariants(get_builtin("chain-cone-split"))
        assert {"one", "poset_tutte", "order_polynomial"} <= set(names)
        assert "tutte" not in names


class TestChecks:
    """Test the weak, strong and pointwise checks."""

    @pytest.mark.parametrize("relation", builtin_relations(), ids=lambda r: r.name)
    def test_builtins_pass(self, relation, rng):
        samples = get_settings().pointwise_samples
        report = run_checks(relation, None, samples, rng)
        assert report.pointwise.samples == samples
        assert report.problems == []
        assert report.strong_passed
        assert report.pointwise.passed
        assert all(r.passed for r in report.reports)
        assert report.passed

    def test_weak_check_reports_alternating_sum(self):
        report = weak_check("beta_crapo", get_builtin("u24-split"))
        assert report.passed
        assert report.alternating_sum == "0"

    def test_dropped_cell_fails(self, u24, rng):
        relation = SubdivisionComplex.build("broken", u24, [make_relaxed_u24("12")])
        assert not strong_check(relation)
        assert not weak_check("tutte", relation).passed
        report = run_checks(relation, ["tutte"], 40, rng)
        assert not report.passed

    def test_pointwise_finds_uncovered_points(self, rng):
        parent = Matroid.uniform(1, 2)
        point = Matroid.from_bases(["1", "2"], [["1"]])
        relation = SubdivisionComplex.build("segment-minus-end", parent, [(point, 1)])
        report = pointwise_check(relation, 40, rng)
        assert report.samples > 0
        assert not report.passed

    def test_unknown_invariant_in_run(self, rng):
        with pytest.raises(ValueError):
            run_checks(get_builtin("trivial-u24"), ["nope"], 10, rng)

    def test_summary_carries_verdicts(self, rng):
        summary = run_checks(get_builtin("trivial-u24"), ["one"], 10, rng).summary()
        assert summary["passed"] is True
        assert summary["pointwise"]["passed"] is True
        assert summary["reports"][0]["invariant"] == "one"
