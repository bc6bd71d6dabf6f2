"""
Matroid Unit Tests

Tests for matroid axioms, minors, flats, polytopes and flag matroids.
"""

import pytest

from engines.errors import AxiomViolation
from engines.services.matroid import FlagMatroid, Matroid, all_bases_families, gale_check
from tests.factories import make_uniform_matroid


class TestMatroidAxioms:
    """Test validation of basis families."""

    def test_basis_exchange_violation(self):
        with pytest.raises(AxiomViolation) as excinfo:
            Matroid.from_bases([1, 2, 3, 4], [[1, 2], [3, 4]])
        assert excinfo.value.axiom == "basis exchange"

    def test_unequal_basis_sizes(self):
        with pytest.raises(AxiomViolation) as excinfo:
            Matroid.from_bases([1, 2], [[1], [1, 2]])
        assert excinfo.value.axiom == "equal basis sizes"

    def test_no_bases(self):
        with pytest.raises(AxiomViolation):
            Matroid.from_bases([1], [])

    def test_uniform_range(self):
        with pytest.raises(ValueError):
            Matroid.uniform(3, 2)

    def test_counts_of_labelled_matroids(self):
        assert len(all_bases_families(["1", "2"])) == 5
        assert len(all_bases_families(["1", "2", "3"])) == 16


class TestMatroidStructure:
    """Test rank, flats, loops and coloops."""

    def test_u24(self, u24):
        assert len(u24.bases) == 6
        assert u24.rank() == 2
        assert u24.rank({"1"}) == 1
        assert len(u24.flats) == 6

    def test_closure(self, u24):
        assert u24.closure({"1", "2"}) == u24.ground
        assert u24.closure({"1"}) == frozenset({"1"})

    def test_loops_and_coloops(self):
        matroid = Matroid.from_bases([1, 2], [[1]])
        assert matroid.loops() == frozenset({"2"})
        assert matroid.coloops() == frozenset({"1"})
        assert matroid.has_unique_basis


class TestMinors:
    """Test restriction, contraction and direct sums."""

    def test_restrict(self, u24):
        assert u24.restrict({"1", "2"}) == make_uniform_matroid(rank=2, size=2)

    def test_contract(self, u24):
        assert u24.contract({"1"}) == make_uniform_matroid(rank=1, size=3, labels=["2", "3", "4"])

    def test_minor_needs_nested_sets(self, u24):
        with pytest.raises(ValueError):
            u24.minor({"1"}, {"2"})

    def test_direct_sum(self):
        product = make_uniform_matroid(rank=1, size=1).product(
            make_uniform_matroid(rank=0, size=1, labels=["2"])
        )
        assert product.bases == frozenset({frozenset({"1"})})
        assert product.loops() == frozenset({"2"})


class TestMatroidPolytope:
    """Test the matroid base polytope."""

    def test_hypersimplex(self, u24):
        polytope = u24.to_gp()
        assert len(polytope.vertices) == 6
        assert polytope.dimension == 3

    def test_rank_function_is_submodular(self, u24):
        u24.to_gp().check_submodular()


class TestFlagMatroid:
    """Test flag matroids and their polytopes."""

    def test_ranks_must_increase(self):
        with pytest.raises(AxiomViolation) as excinfo:
            FlagMatroid((make_uniform_matroid(rank=2, size=3), make_uniform_matroid(rank=1, size=3)))
        assert excinfo.value.axiom == "flag rank monotonicity"

    def test_ground_sets_must_agree(self):
        with pytest.raises(ValueError):
            FlagMatroid((make_uniform_matroid(rank=1, size=2), make_uniform_matroid(rank=2, size=3)))

    def test_polytope_is_minkowski_sum(self):
        flag = FlagMatroid((make_uniform_matroid(rank=1, size=3), make_uniform_matroid(rank=2, size=3)))
        polytope = flag.to_gp()
        assert polytope({"1"}) == 2
        assert polytope({"1", "2", "3"}) == 3
        assert len(polytope.vertices) == 6

    def test_gale_condition_for_a_quotient(self):
        flag = FlagMatroid((make_uniform_matroid(rank=1, size=3), make_uniform_matroid(rank=2, size=3)))
        assert gale_check(flag)
        assert len(flag.flags()) == 6
