"""
Generalized Permutahedra

Bounded generalized permutahedra given by submodular functions, their faces
and tangent cones, and the canonical form that decides equality of
indicator functions.

A submodular z on 2^I (z(empty) = 0) defines

    P = {x : sum over I of x = z(I), sum over A of x <= z(A) for all A}

The canonical form of a polytope is

    phi(P) = sgn( sum over faces F of (-1)^dim F * straighten(tangent_cone(P, F)) )

where sgn multiplies a weighted ordered set partition by (-1)^(number of
blocks). Cones skip the face sum. phi vanishes exactly on linear
combinations whose indicator functions cancel.
"""

import logging
import random
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, permutations

from sympy import Matrix, Rational

from engines.errors import AxiomViolation
from engines.services.algebra import (
    FormalSum,
    RationalLike,
    format_rational,
    format_set,
    normalize_label,
    parse_rational,
    require_subset,
    set_key,
    sorted_labels,
    subsets,
)
from engines.services.osp import (
    OrderedSetPartition,
    WeightedOSP,
    WOSPSum,
    all_osps,
    sign_automorphism,
)
from engines.services.preposet import Preposet, WeightedPreposet, prelinear_extensions

logger = logging.getLogger(__name__)

Vertex = tuple[Fraction, ...]
Point = Mapping[str, Fraction]


def affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    """Dimension of the affine hull of a finite point set."""
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [
        [Rational((p - b).numerator, (p - b).denominator) for p, b in zip(point, base, strict=True)]
        for point in points[1:]
    ]
    return int(Matrix(rows).rank())


class SubmodularGP:
    """
    Bounded generalized permutahedron stored as its submodular function.

    The function must be given on every subset of the ground set. It is
    checked for normalization and submodularity on construction.
    """

    def __init__(
        self,
        ground: Iterable[object],
        z: Mapping[frozenset[str], RationalLike],
        validate: bool = True,
    ):
        self.ground = frozenset(normalize_label(x) for x in ground)
        self.labels = sorted_labels(self.ground)
        values: dict[frozenset[str], Fraction] = {}
        for subset, value in z.items():
            key = frozenset(normalize_label(x) for x in subset)
            if not key <= self.ground:
                raise ValueError(
                    f"z is given on {{{format_set(key)}}}, outside ground set "
                    f"{{{format_set(self.ground)}}}"
                )
            values[key] = parse_rational(value)
        for subset in subsets(self.ground):
            if subset not in values:
                raise AxiomViolation("totality", (subset,), "z must be given on every subset")
        if values[frozenset()] != 0:
            raise AxiomViolation(
                "normalization", (frozenset(),), f"z(empty) = {format_rational(values[frozenset()])}"
            )
        self._values = values
        self._key = (self.ground, frozenset(values.items()))
        if validate:
            self.check_submodular()

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_vertices(cls, ground: Iterable[object], points: Iterable[Point]) -> "SubmodularGP":
        """Support function z(A) = max over the points of their sum over A."""
        labels = frozenset(normalize_label(x) for x in ground)
        points = list(points)
        if not points:
            raise ValueError("A polytope needs at least one point")
        z = {
            subset: max(sum((p[x] for x in subset), Fraction(0)) for p in points)
            for subset in subsets(labels)
        }
        return cls(labels, z)

    @classmethod
    def point(cls, coordinates: Mapping[object, RationalLike]) -> "SubmodularGP":
        coords = {normalize_label(k): parse_rational(v) for k, v in coordinates.items()}
        return cls(
            coords,
            {s: sum((coords[x] for x in s), Fraction(0)) for s in subsets(coords)},
            validate=False,
        )

    @classmethod
    def simplex(cls, ground: Iterable[object], support: Iterable[object] | None = None) -> "SubmodularGP":
        """Delta_J = conv{e_j : j in J} inside R^I."""
        labels = frozenset(normalize_label(x) for x in ground)
        face = labels if support is None else frozenset(normalize_label(x) for x in support)
        if not face or not face <= labels:
            raise ValueError(f"Simplex support {{{format_set(face)}}} must be a nonempty subset of the ground set")
        return cls(labels, {s: 1 if s & face else 0 for s in subsets(labels)}, validate=False)

    @classmethod
    def permutahedron(cls, ground: Iterable[object]) -> "SubmodularGP":
        labels = frozenset(normalize_label(x) for x in ground)
        n = len(labels)
        return cls(
            labels,
            {s: sum(range(n - len(s) + 1, n + 1)) for s in subsets(labels)},
            validate=False,
        )

    # -- axioms -------------------------------------------------------------

    def check_submodular(self) -> None:
        """
        Submodularity in its local form.

        z(A+i) + z(A+j) >= z(A+i+j) + z(A) for all A and i, j outside A is
        equivalent to the full pairwise inequality.
        """
        for subset in subsets(self.ground):
            outside = sorted_labels(self.ground - subset)
            for i, j in combinations(outside, 2):
                left = self(subset | {i}) + self(subset | {j})
                right = self(subset | {i, j}) + self(subset)
                if left < right:
                    raise AxiomViolation(
                        "submodularity",
                        (subset | {i}, subset | {j}),
                        f"z(A)+z(B) = {format_rational(left)} < "
                        f"z(A|B)+z(A&B) = {format_rational(right)}",
                    )

    # -- basic access -------------------------------------------------------

    def __call__(self, subset: Iterable[str]) -> Fraction:
        return self._values[frozenset(subset)]

    def items(self) -> list[tuple[frozenset[str], Fraction]]:
        return sorted(self._values.items(), key=lambda kv: set_key(kv[0]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubmodularGP):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __str__(self) -> str:
        body = " ".join(
            f"{format_set(s)}={format_rational(v)}" for s, v in self.items() if s
        )
        return f"GP[{body}]"

    __repr__ = __str__

    def point_of(self, vertex: Vertex) -> dict[str, Fraction]:
        return dict(zip(self.labels, vertex, strict=True))

    # -- vertices and faces -------------------------------------------------

    def vertex(self, order: Sequence[str]) -> Vertex:
        """
        Greedy vertex for a linear order of the ground set.

        v_{l_k} = z({l_1..l_k}) - z({l_1..l_{k-1}}); the result maximizes every
        linear functional that strictly decreases along the order.
        """
        order = [normalize_label(x) for x in order]
        if len(order) != len(self.ground) or set(order) != self.ground:
            raise ValueError(f"{order} is not a linear order of {{{format_set(self.ground)}}}")
        coordinates: dict[str, Fraction] = {}
        prefix: frozenset[str] = frozenset()
        for label in order:
            extended = prefix | {label}
            coordinates[label] = self(extended) - self(prefix)
            prefix = extended
        return tuple(coordinates[label] for label in self.labels)

    @cached_property
    def _vertex_by_order(self) -> dict[tuple[str, ...], Vertex]:
        return {order: self.vertex(order) for order in permutations(self.labels)}

    @cached_property
    def vertices(self) -> tuple[Vertex, ...]:
        return tuple(sorted(set(self._vertex_by_order.values())))

    def tight_sets(self, points: Iterable[Vertex]) -> tuple[frozenset[str], ...]:
        points = list(points)
        tight = []
        for subset in subsets(self.ground):
            bound = self(subset)
            if all(
                sum((p[i] for i, x in enumerate(self.labels) if x in subset), Fraction(0)) == bound
                for p in points
            ):
                tight.append(subset)
        return tuple(tight)

    def face(self, partition: OrderedSetPartition) -> "GPFace":
        """Face maximized by the chain of functionals e_{F_1} > e_{F_1 u F_2} > ..."""
        if partition.ground != self.ground:
            raise ValueError(
                f"{partition} is not an ordered set partition of {{{format_set(self.ground)}}}"
            )
        points = tuple(sorted({self._vertex_by_order[o] for o in partition.linear_orders()}))
        return GPFace(
            parent=self,
            vertices=points,
            tight_sets=self.tight_sets(points),
            dimension=affine_rank(points),
        )

    @cached_property
    def faces(self) -> tuple["GPFace", ...]:
        """Distinct nonempty faces, deduplicated over all ordered set partitions."""
        found: dict[tuple[Vertex, ...], GPFace] = {}
        for partition in all_osps(self.ground):
            points = tuple(sorted({self._vertex_by_order[o] for o in partition.linear_orders()}))
            if points not in found:
                found[points] = GPFace(
                    parent=self,
                    vertices=points,
                    tight_sets=self.tight_sets(points),
                    dimension=affine_rank(points),
                )
        logger.debug(f"{len(found)} faces of {self}")
        return tuple(sorted(found.values(), key=lambda f: (f.dimension, f.vertices)))

    @cached_property
    def dimension(self) -> int:
        return affine_rank(self.vertices)

    # -- membership ---------------------------------------------------------

    def _coordinates(self, point: Point) -> dict[str, Fraction]:
        coords = {normalize_label(k): parse_rational(v) for k, v in point.items()}
        if set(coords) != self.ground:
            raise ValueError(
                f"Point coordinates {sorted_labels(coords)} do not match ground set "
                f"{list(self.labels)}"
            )
        return coords

    def contains(self, point: Point) -> bool:
        coords = self._coordinates(point)
        if sum(coords.values(), Fraction(0)) != self(self.ground):
            return False
        return all(
            sum((coords[x] for x in subset), Fraction(0)) <= bound
            for subset, bound in self._values.items()
        )

    def contains_relative_interior(self, point: Point) -> bool:
        """In P and tight only on the sets tight on all of P."""
        if not self.contains(point):
            return False
        coords = self._coordinates(point)
        always_tight = set(self.tight_sets(self.vertices))
        return all(
            subset in always_tight
            for subset, bound in self._values.items()
            if sum((coords[x] for x in subset), Fraction(0)) == bound
        )

    # -- Hopf structure -----------------------------------------------------

    def restrict(self, subset: Iterable[str]) -> "SubmodularGP":
        subset = require_subset(subset, self.ground)
        return SubmodularGP(subset, {a: self(a) for a in subsets(subset)}, validate=False)

    def contract(self, subset: Iterable[str]) -> "SubmodularGP":
        subset = require_subset(subset, self.ground)
        base = self(subset)
        rest = self.ground - subset
        return SubmodularGP(rest, {b: self(subset | b) - base for b in subsets(rest)}, validate=False)

    def split(self, subset: Iterable[str]) -> tuple["SubmodularGP", "SubmodularGP"]:
        """(P|_S, P/_S): the face maximizing the sum over S is their product."""
        return self.restrict(subset), self.contract(subset)

    def product(self, other: "SubmodularGP") -> "SubmodularGP":
        if self.ground & other.ground:
            raise ValueError(
                f"Ground sets overlap on {{{format_set(self.ground & other.ground)}}}"
            )
        ground = self.ground | other.ground
        return SubmodularGP(
            ground,
            {a: self(a & self.ground) + other(a & other.ground) for a in subsets(ground)},
            validate=False,
        )

    def minkowski_sum(self, other: "SubmodularGP") -> "SubmodularGP":
        if self.ground != other.ground:
            raise ValueError("Minkowski sums need a common ground set")
        return SubmodularGP(
            self.ground, {a: self(a) + other(a) for a in subsets(self.ground)}, validate=False
        )

    def relabel(self, mapping: Mapping[str, str]) -> "SubmodularGP":
        return SubmodularGP(
            frozenset(mapping[x] for x in self.ground),
            {frozenset(mapping[x] for x in a): v for a, v in self._values.items()},
            validate=False,
        )


@dataclass(frozen=True)
class GPFace:
    """A nonempty face: its vertex set, the sets tight on it, and its dimension."""

    parent: SubmodularGP = field(compare=False)
    vertices: tuple[Vertex, ...]
    tight_sets: tuple[frozenset[str], ...]
    dimension: int

    @property
    def barycenter(self) -> dict[str, Fraction]:
        count = len(self.vertices)
        return {
            label: sum((v[i] for v in self.vertices), Fraction(0)) / count
            for i, label in enumerate(self.parent.labels)
        }

    def as_gp(self) -> SubmodularGP:
        return SubmodularGP.from_vertices(
            self.parent.ground, [self.parent.point_of(v) for v in self.vertices]
        )


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def vertex(polytope: SubmodularGP, order: Sequence[str]) -> Vertex:
    return polytope.vertex(order)


def face(polytope: SubmodularGP, partition: OrderedSetPartition) -> GPFace:
    return polytope.face(partition)


def restrict_contract(polytope: SubmodularGP, subset: Iterable[str]) -> tuple[SubmodularGP, SubmodularGP]:
    return polytope.split(subset)


def product(first: SubmodularGP, second: SubmodularGP) -> SubmodularGP:
    return first.product(second)


def membership(polytope: SubmodularGP, point: Point) -> bool:
    return polytope.contains(point)


def tangent_cone(polytope: SubmodularGP, face_: GPFace) -> WeightedPreposet:
    """
    Tangent cone of P at a face, as a translated preposet cone.

    Algorithm:
    1. i <=_q j iff every set tight on the face that contains j contains i;
       the lower ideals of q are then exactly the tight sets.
    2. Each class of q is weighted by the sum of the face barycenter over it.
    """
    if face_.vertices not in {f.vertices for f in polytope.faces}:
        raise ValueError(f"{list(face_.vertices)} is not the vertex set of a face of {polytope}")
    tight = face_.tight_sets
    pairs = frozenset(
        (i, j)
        for i in polytope.ground
        for j in polytope.ground
        if all(i in subset for subset in tight if j in subset)
    )
    preposet = Preposet(polytope.ground, pairs)
    center = face_.barycenter
    return WeightedPreposet.of(
        preposet,
        {cls_: sum((center[x] for x in cls_), Fraction(0)) for cls_ in preposet.classes},
    )


def brianchon_gram(polytope: SubmodularGP) -> FormalSum[WeightedPreposet]:
    """Sum over nonempty faces F of (-1)^dim F times the tangent cone at F."""
    return FormalSum(
        (tangent_cone(polytope, f), (-1) ** f.dimension) for f in polytope.faces
    )


def straighten(cone: WeightedPreposet | WeightedOSP) -> WOSPSum:
    """
    Expand a translated preposet cone over its prelinear extensions.

    cone(w, q) = sum over l of (-1)^{|q| - |l|} cone(w_l, l), where a block of
    l carries the total weight of the classes it merges.
    """
    if isinstance(cone, WeightedOSP):
        return FormalSum.of(cone)
    terms = []
    for extension, sign in prelinear_extensions(cone.preposet):
        weights = tuple(
            sum((w for cls_, w in cone.weights if cls_ <= block), Fraction(0))
            for block in extension.blocks
        )
        terms.append((WeightedOSP(extension, weights), sign))
    return FormalSum(terms)


ConvexObject = SubmodularGP | WeightedPreposet | WeightedOSP


@lru_cache(maxsize=1024)
def _polytope_expansion(polytope: SubmodularGP) -> WOSPSum:
    expansion: WOSPSum = FormalSum()
    for f in polytope.faces:
        expansion = expansion + straighten(tangent_cone(polytope, f)) * (-1) ** f.dimension
    logger.debug(f"Indicator expansion of {polytope}: {len(expansion)} weighted partitions")
    return expansion


def _as_sum(element: "FormalSum[ConvexObject] | ConvexObject") -> "FormalSum[ConvexObject]":
    if isinstance(element, FormalSum):
        return element
    return FormalSum.of(element)


def indicator_expansion(element: "FormalSum[ConvexObject] | ConvexObject") -> WOSPSum:
    """
    Signed sum of weighted OSP cones with the same indicator function.

    Polytopes go through the face sum, cones straight to straightening.
    """

    def expand(item: ConvexObject) -> WOSPSum:
        if isinstance(item, SubmodularGP):
            return _polytope_expansion(item)
        if isinstance(item, WeightedPreposet | WeightedOSP):
            return straighten(item)
        raise ValueError(f"Cannot expand {type(item).__name__} into weighted partitions")

    return _as_sum(element).map_linear(expand)


def canonical_form(element: "FormalSum[ConvexObject] | ConvexObject") -> WOSPSum:
    """phi: sign automorphism after the indicator expansion."""
    return sign_automorphism(indicator_expansion(element))


def _ground_of(item: ConvexObject) -> frozenset[str]:
    return item.ground


def indicator_equal(
    first: "FormalSum[ConvexObject] | ConvexObject",
    second: "FormalSum[ConvexObject] | ConvexObject",
) -> bool:
    """Decide sum a_i 1_{P_i} == sum b_j 1_{Q_j} exactly via the canonical form."""
    first, second = _as_sum(first), _as_sum(second)
    grounds = {_ground_of(item) for item in (*first.support(), *second.support())}
    if len(grounds) > 1:
        raise ValueError(
            f"Objects live on different ground sets: "
            f"{sorted(('{' + format_set(g) + '}' for g in grounds))}"
        )
    return not canonical_form(first - second)


def sample_points(
    polytope: SubmodularGP, count: int, rng: random.Random
) -> list[dict[str, Fraction]]:
    """
    Rational test points around a polytope.

    Vertices, edge midpoints and the barycenter come first, then random
    convex combinations, random points of the ambient hyperplane near the
    polytope, and points off the hyperplane.
    """
    labels = polytope.labels
    points: list[dict[str, Fraction]] = [polytope.point_of(v) for v in polytope.vertices]
    for f in polytope.faces:
        if f.dimension == 1:
            points.append(f.barycenter)
    points.append(polytope.faces[-1].barycenter if polytope.faces else {})
    vertices = polytope.vertices
    low = min((c for v in vertices for c in v), default=Fraction(0)) - 1
    high = max((c for v in vertices for c in v), default=Fraction(0)) + 1
    span = max(1, int(4 * (high - low)))
    total = polytope(polytope.ground)
    while len(points) < count:
        kind = rng.randrange(3)
        if kind == 0 or not labels:
            weights = [Fraction(rng.randint(0, 4)) for _ in vertices]
            if not sum(weights):
                weights[0] = Fraction(1)
            norm = sum(weights)
            points.append(
                {
                    x: sum((w * v[i] for w, v in zip(weights, vertices, strict=True)), Fraction(0)) / norm
                    for i, x in enumerate(labels)
                }
            )
        elif kind == 1:
            coords = {x: low + Fraction(rng.randint(0, span), 4) for x in labels[:-1]}
            coords[labels[-1]] = total - sum(coords.values(), Fraction(0))
            points.append(coords)
        else:
            points.append({x: low + Fraction(rng.randint(0, span), 4) for x in labels})
    return points[:count] if count else points
