"""
Identity Unit Tests

Exhaustive small-case checks of the exact identities behind the canonical
form: face sums, straightening, Hopf compatibility, the antipode and the
polynomial invariants.
"""

import random
from fractions import Fraction
from itertools import permutations
from itertools import product as cartesian

import pytest

from engines.services.algebra import FormalSum, evaluate_uni, sorted_labels, subsets
from engines.services.building_sets import bs_minors, f_polynomial, find_nestohedral_subdivision
from engines.services.hopf import (
    antipode_face_sum,
    matroid_morphism,
    tutte_specialization,
    universal_tutte,
)
from engines.services.matroid import direct_sum, flag_to_gp, minors, to_gp
from engines.services.matroid_invariants import tutte
from engines.services.osp import (
    OrderedSetPartition,
    coproduct_of_sums,
    evaluate_indicator,
    product_of_sums,
)
from engines.services.permutahedra import (
    SubmodularGP,
    brianchon_gram,
    canonical_form,
    face,
    indicator_expansion,
    membership,
    product,
    restrict_contract,
    sample_points,
    straighten,
    vertex,
)
from engines.services.poset_invariants import order_polynomial
from engines.services.preposet import WeightedPreposet, poset_coproduct, weighted_cone_membership
from tests.factories import (
    all_graphs,
    all_matroids,
    all_polytopes,
    all_posets,
    all_preposets,
    label_run,
    make_path_building_set,
    make_uniform_matroid,
)

SMALL_MATROIDS = [m for size in (1, 2, 3) for m in all_matroids(size)]

SAMPLES = 100


def _polytopes(size: int) -> list[SubmodularGP]:
    return all_polytopes(label_run(1, size))


def _cone_points(cone: WeightedPreposet, count: int, rng: random.Random) -> list[dict[str, Fraction]]:
    apex = cone.apex()
    labels = sorted_labels(cone.ground)
    points = [apex]
    while len(points) < count:
        point = {x: apex[x] + Fraction(rng.randint(-8, 8), 4) for x in labels}
        if rng.randrange(4):
            point[labels[-1]] = cone.total_weight - sum((point[x] for x in labels[:-1]), Fraction(0))
        points.append(point)
    return points


class TestGreedyVertices:
    """Test greedy vertices and faces against membership."""

    @pytest.mark.parametrize("size", [1, 2, 3])
    def test_every_greedy_vertex_is_in_the_polytope(self, size):
        for polytope in _polytopes(size):
            for order in permutations(polytope.labels):
                assert membership(polytope, polytope.point_of(vertex(polytope, order)))

    def test_faces_of_the_permutahedron(self):
        permutahedron = SubmodularGP.permutahedron([1, 2, 3])
        dimensions = sorted(f.dimension for f in permutahedron.faces)
        assert dimensions == [0] * 6 + [1] * 6 + [2]
        assert face(permutahedron, OrderedSetPartition.parse("123")).dimension == 2


class TestBrianchonGram:
    """Test the face sum of tangent cones pointwise."""

    @pytest.mark.parametrize("size", [1, 2, 3, 4])
    def test_tangent_cones_sum_to_the_polytope(self, size, rng):
        for polytope in _polytopes(size):
            cones = brianchon_gram(polytope)
            for point in sample_points(polytope, SAMPLES, rng):
                expected = Fraction(1 if polytope.contains(point) else 0)
                value = sum((c for cone, c in cones.items() if cone.contains(point)), Fraction(0))
                assert value == expected, (str(polytope), point)

    @pytest.mark.parametrize("size", [1, 2, 3, 4])
    def test_weighted_partitions_sum_to_the_polytope(self, size, rng):
        for polytope in _polytopes(size):
            expansion = indicator_expansion(polytope)
            for point in sample_points(polytope, SAMPLES, rng):
                expected = Fraction(1 if polytope.contains(point) else 0)
                assert evaluate_indicator(expansion, point) == expected, (str(polytope), point)


class TestStraightening:
    """Test the expansion of preposet cones over prelinear extensions."""

    @pytest.mark.parametrize("size", [1, 2, 3, 4])
    def test_pointwise(self, size, rng):
        for preposet in all_preposets(size):
            weights = {c: Fraction(rng.randint(-3, 3)) for c in preposet.classes}
            cone = WeightedPreposet.of(preposet, weights)
            expansion = straighten(cone)
            for point in _cone_points(cone, SAMPLES, rng):
                expected = Fraction(1 if weighted_cone_membership(cone, point) else 0)
                assert evaluate_indicator(expansion, point) == expected, (str(cone), point)


class TestHopfMorphism:
    """Test that the canonical form respects products and coproducts."""

    @pytest.mark.parametrize(("left", "right"), [(1, 1), (1, 2), (2, 1)])
    def test_products(self, left, right):
        for first in all_polytopes(label_run(1, left)):
            for second in all_polytopes(label_run(left + 1, right)):
                assert canonical_form(product(first, second)) == product_of_sums(
                    canonical_form(first), canonical_form(second)
                ), (str(first), str(second))

    def test_matroid_products_are_direct_sums(self):
        for first in all_matroids(1):
            for second in all_matroids(2):
                right = second.relabel({"1": "2", "2": "3"})
                assert product(to_gp(first), to_gp(right)) == to_gp(direct_sum(first, right))

    @pytest.mark.parametrize("size", [2, 3])
    def test_coproducts(self, size):
        for polytope in _polytopes(size):
            for subset in subsets(polytope.ground):
                if not subset or subset == polytope.ground:
                    continue
                restricted, contracted = restrict_contract(polytope, subset)
                expected = FormalSum.tensor(canonical_form(restricted), canonical_form(contracted))
                assert coproduct_of_sums(canonical_form(polytope), subset) == expected, (str(polytope), subset)

    def test_matroid_minors_give_polytope_minors(self, u24):
        restricted, contracted = minors(u24, {"1", "2"})
        assert (to_gp(restricted), to_gp(contracted)) == restrict_contract(to_gp(u24), {"1", "2"})

    def test_poset_coproduct_needs_a_lower_ideal(self, chain3):
        assert poset_coproduct(chain3, {"3"}) is None
        lower, upper = poset_coproduct(chain3, {"1"})
        assert lower.ground == frozenset({"1"})
        assert upper.ground == frozenset({"2", "3"})


class TestAntipode:
    """Test that the face-sum antipode is a signed relative interior."""

    def test_relative_interior(self, rng):
        for polytope in [to_gp(m) for m in SMALL_MATROIDS]:
            expansion = indicator_expansion(antipode_face_sum(polytope))
            sign = (-1) ** (len(polytope.ground) - polytope.dimension)
            for point in sample_points(polytope, SAMPLES, rng):
                expected = sign if polytope.contains_relative_interior(point) else 0
                assert evaluate_indicator(expansion, point) == expected, (str(polytope), point)


class TestUniversalTutte:
    """Test the specialization of the universal Tutte character."""

    def test_every_matroid_on_four_labels(self):
        for size in (1, 2, 3, 4):
            for matroid in all_matroids(size):
                assert tutte_specialization(universal_tutte(to_gp(matroid))) == tutte(matroid)

    def test_flag_polytope(self):
        flag = matroid_morphism(make_uniform_matroid(rank=1, size=3), make_uniform_matroid(rank=2, size=3))
        assert flag_to_gp(flag)({"1", "2", "3"}) == 3


class TestOrderPolynomial:
    """Test order polynomials against brute-force map counting."""

    @staticmethod
    def _count(poset, k: int, strict: bool) -> int:
        labels = sorted_labels(poset.ground)
        pairs = [(a, b) for a, b in poset.relation if a != b]
        total = 0
        for values in cartesian(range(1, k + 1), repeat=len(labels)):
            f = dict(zip(labels, values, strict=True))
            if strict and all(f[a] < f[b] for a, b in pairs):
                total += 1
            elif not strict and all(f[a] <= f[b] for a, b in pairs):
                total += 1
        return total

    @pytest.mark.parametrize("size", [1, 2, 3, 4])
    def test_counts_maps(self, size):
        for poset in all_posets(size):
            strict = order_polynomial(poset)
            weak = order_polynomial(poset, strict=False)
            for k in range(1, 5):
                assert evaluate_uni(strict, k) == self._count(poset, k, strict=True)
                assert evaluate_uni(weak, k) == self._count(poset, k, strict=False)


class TestNestohedra:
    """Test nestohedron f-polynomials and the absence of relations among them."""

    @pytest.mark.parametrize("size", [1, 2, 3, 4])
    def test_recurrence_matches_faces(self, size):
        for building_set in all_graphs(size):
            assert f_polynomial(building_set) == f_polynomial(building_set, method="direct")

    def test_minors_are_restriction_and_contraction(self):
        path = make_path_building_set()
        assert bs_minors(path, {"2"}) == (path.restrict({"2"}), path.contract({"2"}))

    @pytest.mark.parametrize(("size", "trials"), [(3, 60), (4, 120)])
    def test_no_relation_among_graph_nestohedra(self, size, trials):
        candidates = list(all_graphs(size))
        assert find_nestohedral_subdivision(candidates, random.Random(size), trials=trials) is None
