"""
Canonical Form Unit Tests

Tests for the canonical form and exact equality of indicator functions.
"""

import random
from fractions import Fraction

import pytest

from engines.services.algebra import FormalSum
from engines.services.osp import WeightedOSP, evaluate_indicator
from engines.services.permutahedra import (
    SubmodularGP,
    brianchon_gram,
    canonical_form,
    indicator_equal,
    indicator_expansion,
    straighten,
)
from engines.services.preposet import Preposet, WeightedPreposet
from tests.factories import (
    all_polytopes,
    all_preposets,
    label_run,
    make_relaxed_u24,
    make_segment,
    make_uniform_matroid,
)


def _weighted(preposet: Preposet, rng: random.Random) -> WeightedPreposet:
    return WeightedPreposet.of(preposet, {c: rng.randint(-3, 3) for c in preposet.classes})


class TestStraightening:
    """Test the expansion of preposet cones over ordered set partitions."""

    def test_antichain_cone(self):
        cone = WeightedPreposet.of(Preposet.antichain([1, 2]), {frozenset({"1"}): 1, frozenset({"2"}): 2})
        expansion = straighten(cone)
        assert expansion.coefficient(WeightedOSP.of("1|2", [1, 2])) == 1
        assert expansion.coefficient(WeightedOSP.of("2|1", [2, 1])) == 1
        assert expansion.coefficient(WeightedOSP.of("12", [3])) == -1

    def test_total_cone_is_itself(self):
        element = WeightedOSP.of("1|2", [0, 0])
        assert straighten(element) == FormalSum.of(element)

    @pytest.mark.parametrize("size", [1, 2, 3, 4])
    def test_idempotent(self, size, rng):
        for preposet in all_preposets(size):
            expansion = straighten(_weighted(preposet, rng))
            assert expansion.map_linear(straighten) == expansion, str(preposet)

    @pytest.mark.parametrize("size", [1, 2, 3])
    def test_total_preposet_is_its_partition(self, size, rng):
        for preposet in all_preposets(size):
            if not preposet.is_total:
                continue
            cone = _weighted(preposet, rng)
            element = cone.as_weighted_osp()
            assert straighten(WeightedPreposet.from_weighted_osp(element)) == FormalSum.of(element)
            assert straighten(cone) == FormalSum.of(element)


class TestCanonicalForm:
    """Test phi on polytopes, cones and combinations."""

    def test_point_expansion_is_its_indicator(self):
        point = SubmodularGP.point({1: 1, 2: 2})
        expansion = indicator_expansion(point)
        assert evaluate_indicator(expansion, {"1": Fraction(1), "2": Fraction(2)}) == 1
        assert evaluate_indicator(expansion, {"1": Fraction(2), "2": Fraction(1)}) == 0

    def test_brianchon_gram_counts_faces(self):
        segment = make_segment()
        assert sum(c for _, c in brianchon_gram(segment).items()) == 1

    @pytest.mark.parametrize("size", [1, 2, 3])
    def test_brianchon_gram_keeps_the_indicator(self, size):
        for polytope in all_polytopes(label_run(1, size)):
            cones = brianchon_gram(polytope)
            assert indicator_expansion(cones) == indicator_expansion(polytope), str(polytope)
            for cone in cones:
                assert indicator_expansion(FormalSum.of(cone)) == straighten(cone)
                assert indicator_expansion(cone) == straighten(cone)

    @pytest.mark.parametrize(
        ("partition", "weights", "sign"),
        [("123", [0], -1), ("1|23", [0, 1], 1), ("1|2|3", [1, 0, -1], -1), ("13|2", [2, 0], 1)],
    )
    def test_cone_sign_follows_block_count(self, partition, weights, sign):
        element = WeightedOSP.of(partition, weights)
        assert canonical_form(element) == FormalSum.of(element, sign)
        cone = WeightedPreposet.from_weighted_osp(element)
        assert canonical_form(cone) == FormalSum.of(element, sign)

    def test_sign_does_not_follow_ground_size(self):
        element = WeightedOSP.of("12", [0])
        assert canonical_form(element) == FormalSum.of(element, -1)

    def test_nonzero_for_any_polytope(self):
        assert canonical_form(SubmodularGP.simplex([1, 2, 3]))

    def test_linear(self):
        simplex = SubmodularGP.simplex([1, 2])
        doubled = canonical_form(FormalSum.of(simplex, 2))
        assert doubled == canonical_form(simplex) * 2


class TestIndicatorEqual:
    """Test exact equality of indicator functions."""

    def test_reflexive(self):
        permutahedron = SubmodularGP.permutahedron([1, 2, 3])
        assert indicator_equal(permutahedron, permutahedron)

    def test_different_polytopes(self):
        assert not indicator_equal(SubmodularGP.simplex([1, 2]), make_segment())

    def test_segment_split_at_midpoint(self):
        left = make_segment(end=(1, 1))
        right = make_segment(start=(1, 1))
        middle = SubmodularGP.point({1: 1, 2: 1})
        combination = FormalSum([(left, 1), (right, 1), (middle, -1)])
        assert indicator_equal(make_segment(), combination)

    def test_hypersimplex_split(self):
        combination = FormalSum(
            [
                (make_relaxed_u24("12").to_gp(), 1),
                (make_relaxed_u24("34").to_gp(), 1),
                (make_relaxed_u24("12", "34").to_gp(), -1),
            ]
        )
        assert indicator_equal(make_uniform_matroid().to_gp(), combination)

    def test_point_cone_straightening(self):
        point = WeightedPreposet.of(Preposet.antichain([1, 2]), {frozenset({"1"}): 0, frozenset({"2"}): 0})
        combination = FormalSum(
            [
                (WeightedOSP.of("1|2", [0, 0]), 1),
                (WeightedOSP.of("2|1", [0, 0]), 1),
                (WeightedOSP.of("12", [0]), -1),
            ]
        )
        assert indicator_equal(point, combination)

    def test_ground_sets_must_agree(self):
        with pytest.raises(ValueError):
            indicator_equal(SubmodularGP.point({1: 0}), SubmodularGP.point({2: 0}))
