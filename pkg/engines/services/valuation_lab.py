"""
Valuation Lab

Subdivisions and other indicator relations, the registry of invariants that
should vanish on them, and the weak, strong and pointwise checks.

A relation says 1_P = sum c_i 1_{P_i}. For a subdivision c_i is the sign
(-1)^{dim P - dim P_i}; other relations carry explicit coefficients.
"""

import logging
import random
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal

from sympy.polys.rings import PolyElement

from engines.schemas.common import encode_value
from engines.schemas.results import PointwiseReport, SubdivisionReport, ValuationReport
from engines.services.algebra import FormalSum, format_rational, qq, sorted_labels
from engines.services.building_sets import BuildingSet, f_polynomial, nestohedron
from engines.services.hopf import (
    get_character,
    qsym_invariant,
    universal_norm,
    universal_tutte,
)
from engines.services.matroid import FlagMatroid, Matroid
from engines.services.matroid_invariants import (
    beta,
    char_poly,
    csm_weight,
    g_invariant,
    tutte,
    volume_polynomial,
)
from engines.services.osp import OrderedSetPartition, WeightedOSP, all_osps
from engines.services.permutahedra import SubmodularGP, canonical_form, sample_points
from engines.services.poset_invariants import (
    antichain_polynomial,
    order_polynomial,
    ordered_poincare,
    poincare,
    poset_tutte,
)
from engines.services.preposet import Poset, Preposet, WeightedPreposet

logger = logging.getLogger(__name__)

ObjectKind = Literal["any", "matroid", "gp", "poset", "preposet", "building_set"]


# ---------------------------------------------------------------------------
# Coercions
# ---------------------------------------------------------------------------


def as_convex(element: Any) -> SubmodularGP | WeightedPreposet | WeightedOSP:
    """The polytope or cone whose indicator function an object stands for."""
    if isinstance(element, SubmodularGP | WeightedPreposet | WeightedOSP):
        return element
    if isinstance(element, Matroid | FlagMatroid):
        return element.to_gp()
    if isinstance(element, BuildingSet):
        return nestohedron(element)
    if isinstance(element, Preposet):
        return WeightedPreposet.of(element, {c: 0 for c in element.classes})
    raise ValueError(f"{type(element).__name__} has no indicator function")


def convex_combination(element: Any) -> FormalSum[Any]:
    """An object or formal sum of objects, rewritten over polytopes and cones."""
    if not isinstance(element, FormalSum):
        element = FormalSum.of(element)
    return element.map_linear(lambda item: FormalSum.of(as_convex(item)))


def coerce(element: Any, kind: ObjectKind) -> Any:
    """Convert an object to the kind an invariant consumes, or raise ValueError."""
    if kind == "any":
        return element
    if kind == "gp":
        if isinstance(element, SubmodularGP | Matroid | FlagMatroid | BuildingSet):
            return as_convex(element)
    elif kind == "matroid":
        if isinstance(element, Matroid):
            return element
    elif kind == "building_set":
        if isinstance(element, BuildingSet):
            return element
    elif kind in ("poset", "preposet"):
        preposet = element
        if isinstance(element, WeightedPreposet):
            preposet = element.preposet
        elif isinstance(element, WeightedOSP):
            preposet = Preposet.from_osp(element.partition)
        if isinstance(preposet, Preposet):
            if kind == "preposet":
                return preposet.as_preposet()
            if preposet.is_antisymmetric:
                return Poset(preposet.ground, preposet.relation)
    raise ValueError(f"{type(element).__name__} is not usable as a {kind}")


def object_dimension(element: Any) -> int:
    convex = as_convex(element)
    if isinstance(convex, SubmodularGP):
        return convex.dimension
    if isinstance(convex, WeightedOSP):
        return Preposet.from_osp(convex.partition).cone_dimension()
    return convex.dimension()


# ---------------------------------------------------------------------------
# Relations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cell:
    """One term c * 1_{P_i} of a relation."""

    element: Any
    dimension: int
    coefficient: Fraction


@dataclass
class SubdivisionComplex:
    """An indicator relation 1_parent = sum over cells of c_i 1_{cell_i}."""

    name: str
    parent: Any
    cells: tuple[Cell, ...]
    metadata: dict[str, str] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        name: str,
        parent: Any,
        cells: Iterable[Any | tuple[Any, Fraction | int | None]],
        metadata: dict[str, str] | None = None,
    ) -> "SubdivisionComplex":
        """
        Cells are objects or (object, coefficient) pairs. Dimensions are
        computed; a missing coefficient is the subdivision sign.
        """
        top = object_dimension(parent)
        built = []
        for entry in cells:
            element, coefficient = entry if isinstance(entry, tuple) else (entry, None)
            dimension = object_dimension(element)
            if coefficient is None:
                coefficient = (-1) ** (top - dimension)
            built.append(Cell(element, dimension, Fraction(coefficient)))
        return cls(name, parent, tuple(built), dict(metadata or {}))

    @property
    def parent_dimension(self) -> int:
        return object_dimension(self.parent)

    def combination(self) -> FormalSum[Any]:
        """1_parent - sum c_i 1_{cell_i} as a formal sum of convex objects."""
        total = FormalSum.of(as_convex(self.parent))
        for cell in self.cells:
            total = total - FormalSum.of(as_convex(cell.element), cell.coefficient)
        return total

    def problems(self) -> list[str]:
        """
        Desk-scale validation findings.

        Checks ground sets and recorded dimensions for every relation. For
        polytopes it also checks that cell vertices lie in the parent and that
        nonempty pairwise intersections of cell vertex sets are listed cells.
        """
        found = []
        parent = as_convex(self.parent)
        for i, cell in enumerate(self.cells):
            convex = as_convex(cell.element)
            if convex.ground != parent.ground:
                found.append(f"cell {i} lives on a different ground set")
                continue
            computed = object_dimension(cell.element)
            if computed != cell.dimension:
                found.append(f"cell {i} records dimension {cell.dimension}, computed {computed}")
        if found or not isinstance(parent, SubmodularGP):
            return found
        polytopes = [p for p in (as_convex(c.element) for c in self.cells) if isinstance(p, SubmodularGP)]
        if len(polytopes) != len(self.cells):
            return found
        vertex_sets = [frozenset(p.vertices) for p in polytopes]
        for i, p in enumerate(polytopes):
            for v in p.vertices:
                if not parent.contains(p.point_of(v)):
                    found.append(f"cell {i} has vertex {[format_rational(c) for c in v]} outside the parent")
                    break
        listed = set(vertex_sets)
        for i in range(len(vertex_sets)):
            for j in range(i + 1, len(vertex_sets)):
                common = vertex_sets[i] & vertex_sets[j]
                if common and common not in listed:
                    found.append(f"cells {i} and {j} meet in a vertex set that is not a listed cell")
        return found


# ---------------------------------------------------------------------------
# Invariant registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Invariant:
    name: str
    kind: ObjectKind
    evaluate: Callable[[Any], Any]
    description: str


def _csm_weights(matroid: Matroid) -> FormalSum[str]:
    return FormalSum((str(p), csm_weight(matroid, p)) for p in all_osps(matroid.ground))


def _one(_: Any) -> Fraction:
    return Fraction(1)


INVARIANTS: dict[str, Invariant] = {
    inv.name: inv
    for inv in [
        Invariant("one", "any", _one, "constant 1 (Euler relation)"),
        Invariant("tutte", "matroid", tutte, "Tutte polynomial"),
        Invariant("char_poly", "matroid", char_poly, "characteristic polynomial"),
        Invariant("beta_crapo", "matroid", lambda m: beta(m, "crapo"), "beta, Tutte x-coefficient"),
        Invariant("beta_paper", "matroid", lambda m: beta(m, "paper"), "beta, reduced characteristic constant"),
        Invariant("csm_weight", "matroid", _csm_weights, "CSM weight of every braid cone"),
        Invariant("g_invariant", "matroid", g_invariant, "rank-jump sequence histogram"),
        Invariant("volume_polynomial", "matroid", volume_polynomial, "volume polynomial"),
        Invariant("bjr_qsym", "matroid", lambda m: qsym_invariant(get_character("bjr"), m), "BJR quasisymmetric function"),
        Invariant("universal_norm", "gp", universal_norm, "x^|I| y^z(I)"),
        Invariant("universal_tutte", "gp", universal_tutte, "universal Tutte character"),
        Invariant("order_polynomial", "preposet", order_polynomial, "strict order polynomial"),
        Invariant("weak_order_polynomial", "preposet", lambda p: order_polynomial(p, strict=False), "weak order polynomial"),
        Invariant("antichain_qsym", "preposet", lambda p: qsym_invariant(get_character("antichain"), p), "antichain character quasisymmetric function"),
        Invariant("poset_tutte", "poset", poset_tutte, "poset Tutte polynomial"),
        Invariant("antichain_polynomial", "poset", antichain_polynomial, "antichains by size"),
        Invariant("poincare", "poset", poincare, "Poincare polynomial"),
        Invariant("ordered_poincare", "poset", ordered_poincare, "ordered Poincare polynomial"),
        Invariant("f_polynomial", "building_set", f_polynomial, "nestohedron f-polynomial"),
    ]
}


def get_invariant(name: str) -> Invariant:
    if name not in INVARIANTS:
        raise ValueError(f"Unknown invariant {name!r}; known: {sorted(INVARIANTS)}")
    return INVARIANTS[name]


def list_invariants() -> list[dict[str, str]]:
    return [
        {"name": inv.name, "kind": inv.kind, "description": inv.description}
        for inv in sorted(INVARIANTS.values(), key=lambda inv: inv.name)
    ]


def _applies(invariant: Invariant, relation: SubdivisionComplex) -> bool:
    try:
        for element in (relation.parent, *(cell.element for cell in relation.cells)):
            coerce(element, invariant.kind)
    except ValueError:
        return False
    return True


def applicable_invariants(relation: SubdivisionComplex) -> list[str]:
    return [name for name, inv in sorted(INVARIANTS.items()) if _applies(inv, relation)]


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------


def _scaled(value: Any, coefficient: Fraction) -> Any:
    if isinstance(value, PolyElement):
        return value * qq(coefficient)
    return value * coefficient


def weak_check(name: str, relation: SubdivisionComplex) -> ValuationReport:
    """f(P) - sum c_i f(P_i), tested for exact zero."""
    invariant = get_invariant(name)
    problems = relation.problems()
    if problems:
        logger.warning(f"Relation {relation.name} failed validation: {problems}")
    total = invariant.evaluate(coerce(relation.parent, invariant.kind))
    for cell in relation.cells:
        value = invariant.evaluate(coerce(cell.element, invariant.kind))
        total = total - _scaled(value, cell.coefficient)
    passed = not total
    logger.debug(f"{name} on {relation.name}: {'pass' if passed else 'FAIL'}")
    return ValuationReport(
        invariant=name,
        relation=relation.name,
        alternating_sum=encode_value(total),
        passed=passed,
    )


def strong_check(relation: SubdivisionComplex) -> bool:
    """True iff the canonical form of 1_P - sum c_i 1_{P_i} vanishes."""
    residue = canonical_form(relation.combination())
    if residue:
        logger.debug(f"Canonical form residue of {relation.name}: {len(residue)} terms")
    return not residue


def _cone_samples(cone: WeightedPreposet | WeightedOSP, count: int, rng: random.Random) -> list[dict[str, Fraction]]:
    apex = cone.apex()
    labels = sorted_labels(cone.ground)
    total = sum(apex.values(), Fraction(0))
    points = [apex]
    while len(points) < count:
        coords = {x: apex[x] + Fraction(rng.randint(-8, 8), 4) for x in labels}
        if rng.randrange(4) and labels:
            coords[labels[-1]] = total - sum((coords[x] for x in labels[:-1]), Fraction(0))
        points.append(coords)
    return points


def pointwise_check(relation: SubdivisionComplex, samples: int, rng: random.Random) -> PointwiseReport:
    """Evaluate 1_P - sum c_i 1_{P_i} at sampled rational points."""
    parent = as_convex(relation.parent)
    if isinstance(parent, SubmodularGP):
        points = sample_points(parent, samples, rng)
    else:
        points = _cone_samples(parent, samples, rng)
    cells = [(as_convex(cell.element), cell.coefficient) for cell in relation.cells]
    failures = []
    for point in points:
        value = Fraction(1 if parent.contains(point) else 0)
        value -= sum((c for convex, c in cells if convex.contains(point)), Fraction(0))
        if value:
            failures.append({x: format_rational(point[x]) for x in sorted_labels(point)})
    return PointwiseReport(relation=relation.name, samples=len(points), failures=failures)


def check_relation(
    relation: SubdivisionComplex, invariants: Iterable[str] | None = None
) -> list[ValuationReport]:
    """Weak checks for the named (default: all applicable) invariants, tagged with the strong check."""
    names = list(invariants) if invariants is not None else applicable_invariants(relation)
    strong = strong_check(relation)
    reports = []
    for name in names:
        report = weak_check(name, relation)
        reports.append(report.model_copy(update={"strong_passed": strong}))
    return reports


def run_checks(
    relation: SubdivisionComplex,
    invariants: Iterable[str] | None,
    samples: int,
    rng: random.Random,
) -> SubdivisionReport:
    """Validation, strong, weak and pointwise checks of one relation."""
    names = list(invariants) if invariants else applicable_invariants(relation)
    logger.info(f"Checking {relation.name} against {len(names)} invariants")
    reports = check_relation(relation, names)
    strong = reports[0].strong_passed if reports else strong_check(relation)
    return SubdivisionReport(
        relation=relation.name,
        problems=relation.problems(),
        strong_passed=bool(strong),
        reports=reports,
        pointwise=pointwise_check(relation, samples, rng),
    )


# ---------------------------------------------------------------------------
# Built-in relations
# ---------------------------------------------------------------------------


def _u24_split(name: str, first: str, second: str) -> SubdivisionComplex:
    """Split of the hypersimplex along x_a + x_b = 1 for the pair {a,b} = ``first``."""
    parent = Matroid.uniform(2, 4)
    pairs = parent.bases
    left = frozenset(first)
    right = frozenset(second)
    m1 = Matroid(parent.ground, frozenset(b for b in pairs if b != left))
    m2 = Matroid(parent.ground, frozenset(b for b in pairs if b != right))
    m12 = Matroid(parent.ground, frozenset(b for b in pairs if b not in (left, right)))
    return SubdivisionComplex.build(
        name,
        parent,
        [m1, m2, m12],
        {"description": f"U(2,4) split along x_{first[0]}+x_{first[1]}=1"},
    )


def _point_cone_straightening() -> SubdivisionComplex:
    point = WeightedPreposet.of(
        Preposet.antichain(["1", "2"]), {frozenset({"1"}): 0, frozenset({"2"}): 0}
    )
    ray_12 = WeightedPreposet.from_weighted_osp(WeightedOSP.of(OrderedSetPartition.parse("1|2"), [0, 0]))
    ray_21 = WeightedPreposet.from_weighted_osp(WeightedOSP.of(OrderedSetPartition.parse("2|1"), [0, 0]))
    line = WeightedPreposet.from_weighted_osp(WeightedOSP.of(OrderedSetPartition.parse("12"), [0]))
    return SubdivisionComplex.build(
        "point-cone-straightening",
        point,
        [(ray_12, 1), (ray_21, 1), (line, -1)],
        {"description": "antichain cone on {1,2} = ray + ray - line"},
    )


def _chain_cone_split() -> SubdivisionComplex:
    def cone(relations: list[tuple[str, str]]) -> WeightedPreposet:
        preposet = Preposet.from_relations(["1", "2", "3"], relations)
        return WeightedPreposet.of(preposet, {c: 0 for c in preposet.classes})

    return SubdivisionComplex.build(
        "chain-cone-split",
        cone([("1", "2"), ("2", "3")]),
        [cone([("1", "2"), ("1", "3")]), cone([("1", "3"), ("2", "3")]), cone([("1", "3")])],
        {"description": "cone of 1<2<3 split along the ray cone of 1<3"},
    )


def builtin_relations() -> list[SubdivisionComplex]:
    hexagon = BuildingSet.full(["1", "2", "3"])
    return [
        _u24_split("u24-split", "12", "34"),
        _u24_split("u24-split-13-24", "13", "24"),
        _u24_split("u24-split-14-23", "14", "23"),
        SubdivisionComplex.build("trivial-u24", Matroid.uniform(2, 4), [Matroid.uniform(2, 4)]),
        SubdivisionComplex.build("trivial-hexagon", hexagon, [hexagon]),
        _point_cone_straightening(),
        _chain_cone_split(),
    ]


def get_builtin(name: str) -> SubdivisionComplex:
    for relation in builtin_relations():
        if relation.name == name:
            return relation
    raise ValueError(
        f"Unknown builtin relation {name!r}; known: {[r.name for r in builtin_relations()]}"
    )


def list_builtins() -> list[dict[str, Any]]:
    return [
        {
            "name": r.name,
            "cells": len(r.cells),
            "dimensions": [r.parent_dimension, *(c.dimension for c in r.cells)],
            "description": r.metadata.get("description", "trivial subdivision"),
        }
        for r in builtin_relations()
    ]

