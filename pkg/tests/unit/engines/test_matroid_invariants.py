"""
Matroid Invariant Unit Tests

Tests for Tutte and characteristic polynomials, beta, CSM weights, the
G-invariant and the volume polynomial.
"""

from fractions import Fraction

import pytest

from engines.services.algebra import T_GEN, X_GEN, Y_GEN, FormalSum, format_poly
from engines.services.matroid import Matroid
from engines.services.matroid_invariants import (
    beta,
    bjr_character,
    char_poly,
    csm_weight,
    g_invariant,
    mu_i,
    reduced_char,
    tutte,
    volume_polynomial,
)
from engines.services.osp import OrderedSetPartition, all_osps
from tests.factories import make_relaxed_u24, make_uniform_matroid


class TestTutte:
    """Test the Tutte polynomial."""

    def test_u24(self, u24):
        assert format_poly(tutte(u24)) == {"x^2": "1", "x": "2", "y": "2", "y^2": "1"}

    def test_parallel_pair(self):
        assert tutte(make_uniform_matroid(rank=1, size=2)) == X_GEN + Y_GEN

    def test_loop_and_coloop(self):
        assert tutte(Matroid.from_bases([1, 2], [[1]])) == X_GEN * Y_GEN

    def test_valuative_on_hypersimplex_split(self, u24):
        total = (
            tutte(make_relaxed_u24("12"))
            + tutte(make_relaxed_u24("34"))
            - tutte(make_relaxed_u24("12", "34"))
        )
        assert total == tutte(u24)


class TestCharacteristicPolynomial:
    """Test characteristic and reduced characteristic polynomials."""

    def test_u24(self, u24):
        assert char_poly(u24) == T_GEN**2 - 4 * T_GEN + 3
        assert reduced_char(u24) == T_GEN - 3

    def test_zero_with_a_loop(self):
        assert char_poly(Matroid.from_bases([1, 2], [[1]])) == 0

    def test_reduced_undefined_at_rank_zero(self):
        with pytest.raises(ValueError):
            reduced_char(Matroid.from_bases([], [[]]))

    def test_mu_i(self, u24):
        assert mu_i(u24, 0) == 1
        assert mu_i(u24, 1) == 3
        assert mu_i(u24, 2) == 0


class TestBeta:
    """Test both beta conventions."""

    def test_crapo(self, u24):
        assert beta(u24) == 2
        assert beta(make_uniform_matroid(rank=2, size=3)) == 1

    def test_reduced_constant(self, u24):
        assert beta(u24, "paper") == 3
        assert beta(make_uniform_matroid(rank=2, size=3), "paper") == 2

    def test_crapo_zero_for_disconnected(self):
        disconnected = make_relaxed_u24("12", "34")
        assert beta(disconnected) == 0
        assert beta(disconnected, "paper") == 1

    def test_reduced_constant_zero_with_loop(self):
        assert beta(Matroid.from_bases([1, 2], [[1]]), "paper") == 0

    def test_unknown_convention(self, u24):
        with pytest.raises(ValueError):
            beta(u24, "other")  # type: ignore[arg-type]


class TestCSM:
    """Test Chern-Schwartz-MacPherson weights of braid cones."""

    def test_single_block(self):
        coloop = make_uniform_matroid(rank=1, size=1)
        assert csm_weight(coloop, OrderedSetPartition.parse("1")) == 1

    def test_non_flat_prefix_vanishes(self, u24):
        # U_{2,4} restricted to {1,2} is U_{2,2}, whose beta vanishes
        assert csm_weight(u24, OrderedSetPartition.parse("12|34")) == 0

    def test_partition_must_cover_ground(self, u24):
        with pytest.raises(ValueError):
            csm_weight(u24, OrderedSetPartition.parse("12"))

    def test_valuative_on_hypersimplex_split(self, u24):
        pieces = [make_relaxed_u24("12"), make_relaxed_u24("34"), make_relaxed_u24("12", "34")]
        for partition in all_osps(u24.ground):
            value = csm_weight(pieces[0], partition) + csm_weight(pieces[1], partition)
            value -= csm_weight(pieces[2], partition)
            assert value == csm_weight(u24, partition), str(partition)


class TestRankJumpInvariants:
    """Test the G-invariant and the unique-basis character."""

    def test_g_invariant(self):
        assert g_invariant(make_uniform_matroid(rank=1, size=2)) == FormalSum({"10": 2})

    def test_g_invariant_u24_counts_orders(self, u24):
        assert g_invariant(u24) == FormalSum({"1100": 24})

    def test_bjr(self):
        assert bjr_character(make_uniform_matroid(rank=2, size=2)) == 1
        assert bjr_character(make_uniform_matroid(rank=1, size=2)) == 0


class TestVolumePolynomial:
    """Test the volume polynomial of the Chow ring."""

    def test_rank_one(self):
        assert volume_polynomial(make_uniform_matroid(rank=1, size=1)) == FormalSum({"1": 1})

    def test_u23(self):
        value = volume_polynomial(make_uniform_matroid(rank=2, size=3))
        assert value == FormalSum({"t[1]": 1, "t[2]": 1, "t[3]": 1})

    def test_loops_rejected(self):
        with pytest.raises(ValueError):
            volume_polynomial(Matroid.from_bases([1, 2], [[1]]))

    def test_coefficients_are_exact(self, u24):
        value = volume_polynomial(u24)
        assert all(isinstance(c, Fraction) for _, c in value.items())
