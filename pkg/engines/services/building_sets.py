"""
Building Sets and Nestohedra

Building sets with their restriction and contraction, graphical building
sets, nestohedra as Minkowski sums of simplices, and the f-polynomial.

Members form a multiset: singletons may repeat (a repeated singleton only
translates the nestohedron), non-singletons appear once.
"""

import logging
import random
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import networkx as nx
from sympy.polys.rings import PolyElement

from engines.errors import AxiomViolation
from engines.services.algebra import (
    T_GEN,
    UNI_RING,
    FormalSum,
    format_set,
    normalize_label,
    require_subset,
    set_key,
    subsets,
)
from engines.services.permutahedra import SubmodularGP, indicator_equal

logger = logging.getLogger(__name__)

FMethod = Literal["recurrence", "direct"]


@dataclass(frozen=True)
class BuildingSet:
    """A union-closed family of nonempty subsets of a finite label set."""

    ground: frozenset[str]
    members: tuple[frozenset[str], ...]

    def __post_init__(self) -> None:
        members = tuple(sorted(self.members, key=set_key))
        object.__setattr__(self, "members", members)
        for member in members:
            if not member:
                raise ValueError("Building set members must be nonempty")
            require_subset(member, self.ground)
        counts = Counter(members)
        for member, count in counts.items():
            if len(member) > 1 and count > 1:
                raise AxiomViolation(
                    "building-set non-singleton multiplicity",
                    (member,),
                    f"appears {count} times",
                )
        for first in counts:
            for second in counts:
                if first & second and first | second not in counts:
                    raise AxiomViolation("building-set union closure", (first, second))

    @classmethod
    def of(cls, ground: Iterable[object], members: Iterable[Iterable[object]]) -> "BuildingSet":
        return cls(
            frozenset(normalize_label(x) for x in ground),
            tuple(frozenset(normalize_label(x) for x in m) for m in members),
        )

    @classmethod
    def full(cls, ground: Iterable[object]) -> "BuildingSet":
        """Every nonempty subset: its nestohedron is the permutahedron."""
        labels = frozenset(normalize_label(x) for x in ground)
        return cls(labels, tuple(s for s in subsets(labels) if s))

    @classmethod
    def simplex(cls, ground: Iterable[object]) -> "BuildingSet":
        """Singletons and the whole set: its nestohedron is a simplex."""
        labels = frozenset(normalize_label(x) for x in ground)
        members = [frozenset({x}) for x in labels]
        if len(labels) > 1:
            members.append(labels)
        return cls(labels, tuple(members))

    @property
    def distinct(self) -> frozenset[frozenset[str]]:
        return frozenset(self.members)

    @property
    def covered(self) -> frozenset[str]:
        return frozenset().union(*self.members)

    def components(self) -> tuple[frozenset[str], ...]:
        """Maximal members; they partition the union of all members."""
        distinct = self.distinct
        return tuple(
            sorted((m for m in distinct if not any(m < other for other in distinct)), key=set_key)
        )

    @property
    def is_connected(self) -> bool:
        return self.ground in self.distinct

    # -- Hopf structure -----------------------------------------------------

    def restrict(self, subset: Iterable[str]) -> "BuildingSet":
        """B|_S: the members contained in S."""
        subset = require_subset(subset, self.ground)
        return BuildingSet(subset, tuple(m for m in self.members if m <= subset))

    def contract(self, subset: Iterable[str]) -> "BuildingSet":
        """B/_S: J - S for the members J not contained in S."""
        subset = require_subset(subset, self.ground)
        singletons = []
        larger: set[frozenset[str]] = set()
        for member in self.members:
            if member <= subset:
                continue
            rest = member - subset
            if len(rest) == 1:
                singletons.append(rest)
            else:
                larger.add(rest)
        try:
            return BuildingSet(self.ground - subset, (*singletons, *larger))
        except AxiomViolation as exc:
            raise RuntimeError(f"Contraction of {self} by {{{format_set(subset)}}} is invalid: {exc}")

    def split(self, subset: Iterable[str]) -> tuple["BuildingSet", "BuildingSet"]:
        return self.restrict(subset), self.contract(subset)

    def product(self, other: "BuildingSet") -> "BuildingSet":
        if self.ground & other.ground:
            raise ValueError(
                f"Ground sets overlap on {{{format_set(self.ground & other.ground)}}}"
            )
        return BuildingSet(self.ground | other.ground, self.members + other.members)

    def relabel(self, mapping: Mapping[str, str]) -> "BuildingSet":
        return BuildingSet(
            frozenset(mapping[x] for x in self.ground),
            tuple(frozenset(mapping[x] for x in m) for m in self.members),
        )

    def __str__(self) -> str:
        body = " ".join(format_set(m) for m in self.members)
        return f"B({format_set(self.ground)}; {body})"


def graphical_building_set(vertices: Iterable[object], edges: Iterable[Sequence[object]]) -> BuildingSet:
    """Vertex sets of the connected induced subgraphs of a graph."""
    graph = nx.Graph()
    graph.add_nodes_from(normalize_label(v) for v in vertices)
    for edge in edges:
        if len(edge) != 2:
            raise ValueError(f"Edge {list(edge)} must have exactly two endpoints")
        a, b = (normalize_label(v) for v in edge)
        if a not in graph or b not in graph:
            raise ValueError(f"Edge {a}-{b} uses a vertex outside the vertex list")
        graph.add_edge(a, b)
    ground = frozenset(graph.nodes)
    members = tuple(
        s for s in subsets(ground) if s and nx.is_connected(graph.subgraph(s))
    )
    logger.debug(f"Graphical building set on {{{format_set(ground)}}}: {len(members)} members")
    return BuildingSet(ground, members)


def bs_minors(building_set: BuildingSet, subset: Iterable[str]) -> tuple[BuildingSet, BuildingSet]:
    return building_set.split(subset)


def nestohedron(building_set: BuildingSet) -> SubmodularGP:
    """
    Minkowski sum of the simplices Delta_J over the members J.

    z(A) counts the members meeting A, with multiplicity.
    """
    uncovered = building_set.ground - building_set.covered
    if uncovered:
        raise ValueError(
            f"Elements {{{format_set(uncovered)}}} are in no member of the building set"
        )
    z = {
        subset: sum(1 for m in building_set.members if m & subset)
        for subset in subsets(building_set.ground)
    }
    return SubmodularGP(building_set.ground, z)


@lru_cache(maxsize=4096)
def _f_recurrence(building_set: BuildingSet) -> PolyElement:
    ground = building_set.ground
    if len(ground) <= 1:
        return UNI_RING.one
    if not building_set.is_connected:
        result = UNI_RING.one
        for component in building_set.components():
            result *= _f_recurrence(building_set.restrict(component))
        return result
    total = UNI_RING.zero
    for subset in subsets(ground):
        if subset == ground:
            continue
        total += T_GEN ** (len(ground) - len(subset) - 1) * _f_recurrence(building_set.restrict(subset))
    return total


def f_polynomial(building_set: BuildingSet, method: FMethod = "recurrence") -> PolyElement:
    """
    f-polynomial sum over faces F of the nestohedron of t^{dim F}.

    recurrence: 1 on a singleton, the product over components when
    disconnected, and sum over S strictly inside I of t^{|I|-|S|-1} f(B|_S)
    when connected. Uncovered elements contribute a factor 1.
    direct: enumerate the faces of the nestohedron.
    """
    if method == "recurrence":
        return _f_recurrence(building_set)
    if method == "direct":
        total = UNI_RING.zero
        for f in nestohedron(building_set).faces:
            total += T_GEN**f.dimension
        return total
    raise ValueError(f"Unknown f-polynomial method {method!r}: use 'recurrence' or 'direct'")


def find_nestohedral_subdivision(
    candidates: Sequence[BuildingSet],
    rng: random.Random,
    trials: int = 50,
) -> tuple[SubmodularGP, FormalSum[SubmodularGP]] | None:
    """
    Search for a nestohedron whose indicator is a signed sum of two or three
    other full-dimensional nestohedra.

    Returns the first relation found as (target, combination), or None.
    """
    polytopes = []
    for candidate in candidates:
        try:
            polytopes.append(nestohedron(candidate))
        except ValueError:
            continue
    if len(polytopes) < 3:
        return None
    grounds = {p.ground for p in polytopes}
    if len(grounds) > 1:
        raise ValueError("Candidate building sets must share a ground set")
    top = max(p.dimension for p in polytopes)
    full = [p for p in polytopes if p.dimension == top]
    for _ in range(trials):
        target = rng.choice(polytopes)
        others = [p for p in full if p != target]
        if len(others) < 2:
            continue
        cells = rng.sample(others, rng.choice([2, 3]) if len(others) >= 3 else 2)
        combination = FormalSum((cell, rng.choice([1, -1])) for cell in cells)
        if len(combination) >= 2 and indicator_equal(target, combination):
            logger.warning(f"Found nestohedral relation: {target} = {combination}")
            return target, combination
    logger.debug(f"No nestohedral relation in {trials} trials over {len(polytopes)} nestohedra")
    return None
