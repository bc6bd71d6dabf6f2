"""
Preposet Unit Tests

Tests for preposets, posets, prelinear extensions and translated cones.
"""

from fractions import Fraction

import pytest

from engines.errors import AxiomViolation
from engines.services.osp import OrderedSetPartition
from engines.services.preposet import (
    Poset,
    Preposet,
    WeightedPreposet,
    all_closed_relations,
    prelinear_extensions,
)


class TestPreposet:
    """Test closure, classes, ideals and Hopf operations."""

    def test_transitive_closure(self):
        preposet = Preposet.from_relations([1, 2, 3], [(1, 2), (2, 3)])
        assert preposet.leq("1", "3")
        assert not preposet.leq("3", "1")

    def test_cycle_forms_a_class(self):
        preposet = Preposet.from_relations([1, 2, 3], [(1, 2), (2, 1)])
        assert frozenset({"1", "2"}) in preposet.classes
        assert preposet.size == 2
        assert not preposet.is_antisymmetric

    def test_relation_outside_ground_rejected(self):
        with pytest.raises(ValueError):
            Preposet.from_relations([1], [(1, 2)])

    def test_lower_ideals_of_chain(self, chain3):
        assert chain3.lower_ideals == (
            frozenset(),
            frozenset({"1"}),
            frozenset({"1", "2"}),
            frozenset({"1", "2", "3"}),
        )

    def test_cone_dimension(self, chain3, antichain3):
        assert chain3.cone_dimension() == 2
        assert antichain3.cone_dimension() == 0
        assert Preposet.from_relations([1, 2], [(1, 2), (2, 1)]).cone_dimension() == 1

    def test_split_needs_lower_ideal(self):
        chain = Preposet.chain([1, 2])
        assert chain.split({"2"}) is None
        head, tail = chain.split({"1"})
        assert head.ground == frozenset({"1"})
        assert tail.ground == frozenset({"2"})

    def test_from_osp_is_total(self):
        preposet = Preposet.from_osp(OrderedSetPartition.parse("12|3"))
        assert preposet.is_total
        assert str(preposet.as_osp()) == "12|3"

    def test_product_of_disjoint(self):
        product = Preposet.chain([1, 2]).product(Preposet.antichain([3]))
        assert product.ground == frozenset({"1", "2", "3"})
        with pytest.raises(ValueError):
            product.product(Preposet.antichain([3]))


class TestPoset:
    """Test the antisymmetry axiom and poset queries."""

    def test_cycle_violates_antisymmetry(self):
        preposet = Preposet.from_relations([1, 2], [(1, 2), (2, 1)])
        with pytest.raises(AxiomViolation) as excinfo:
            Poset(preposet.ground, preposet.relation)
        assert excinfo.value.axiom == "antisymmetry"
        assert excinfo.value.witness_labels() == ["1", "2"]

    def test_linear_extensions(self, v_poset):
        assert sorted(v_poset.linear_extensions()) == [("1", "2", "3"), ("1", "3", "2")]

    def test_minimal_elements(self, v_poset, antichain3):
        assert v_poset.minimal_elements() == frozenset({"1"})
        assert len(antichain3.minimal_elements()) == 3

    def test_down_set(self, chain3):
        assert chain3.down_set({"3"}) == frozenset({"1", "2", "3"})
        assert chain3.down_set({"3"}, strict=True) == frozenset({"1", "2"})


class TestPrelinearExtensions:
    """Test the expansion of a preposet over total preposets."""

    def test_antichain_on_two(self):
        found = {str(p): sign for p, sign in prelinear_extensions(Preposet.antichain([1, 2]))}
        assert found == {"1|2": 1, "2|1": 1, "12": -1}

    def test_chain_has_one(self, chain3):
        assert [str(p) for p, _ in prelinear_extensions(chain3)] == ["1|2|3"]


class TestWeightedPreposet:
    """Test translated cone membership and weights."""

    def test_membership(self):
        cone = WeightedPreposet.of(Preposet.chain([1, 2]), {frozenset({"1"}): 0, frozenset({"2"}): 0})
        assert cone.contains({"1": Fraction(-1), "2": Fraction(1)})
        assert not cone.contains({"1": Fraction(1), "2": Fraction(-1)})

    def test_weights_follow_classes(self):
        preposet = Preposet.from_relations([1, 2, 3], [(1, 2), (2, 1)])
        cone = WeightedPreposet.from_representatives(preposet, {"2": 3, "3": -1})
        assert cone.weight(frozenset({"1", "2"})) == 3
        assert cone.total_weight == 2
        assert cone.dimension() == 1

    def test_class_weighted_twice(self):
        preposet = Preposet.from_relations([1, 2], [(1, 2), (2, 1)])
        with pytest.raises(ValueError):
            WeightedPreposet.from_representatives(preposet, {"1": 0, "2": 0})

    def test_missing_class_weight(self):
        with pytest.raises(ValueError):
            WeightedPreposet.of(Preposet.antichain([1, 2]), {frozenset({"1"}): 0})


class TestEnumeration:
    """Test brute-force enumeration of preposets."""

    def test_preorders_on_two_and_three(self):
        assert len(list(all_closed_relations(["1", "2"]))) == 4
        assert len(list(all_closed_relations(["1", "2", "3"]))) == 29
