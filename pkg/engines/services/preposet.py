"""
Preposets and Preposet Cones

Reflexive transitive relations, their equivalence classes and quotient
posets, prelinear extensions, and exact membership in translated preposet
cones.

Convention: i <=_q j contributes the ray e_j - e_i to cone(q). A translated
cone cone(w, q) is therefore cut out by

    sum(x) = sum(w)
    sum of x over D <= sum of w over the classes in D   (D a lower ideal)
"""

import logging
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import networkx as nx

from engines.errors import AxiomViolation
from engines.services.algebra import (
    RationalLike,
    format_rational,
    format_set,
    normalize_label,
    parse_rational,
    require_subset,
    set_key,
    sorted_labels,
)
from engines.services.osp import OrderedSetPartition, WeightedOSP

logger = logging.getLogger(__name__)

Relation = frozenset[tuple[str, str]]


def _closure(ground: frozenset[str], pairs: Iterable[tuple[str, str]]) -> Relation:
    graph = nx.DiGraph()
    graph.add_nodes_from(ground)
    for a, b in pairs:
        if a not in ground or b not in ground:
            raise ValueError(f"Relation {a}<={b} uses labels outside {{{format_set(ground)}}}")
        graph.add_edge(a, b)
    closed = nx.transitive_closure(graph, reflexive=True)
    return frozenset(closed.edges())


@dataclass(frozen=True)
class Preposet:
    """Reflexive and transitive relation on a finite label set."""

    ground: frozenset[str]
    relation: Relation

    def __post_init__(self) -> None:
        object.__setattr__(self, "relation", _closure(self.ground, self.relation))

    @classmethod
    def from_relations(
        cls, ground: Iterable[object], relations: Iterable[tuple[object, object]] = ()
    ) -> "Preposet":
        """``relations`` are pairs (a, b) meaning a <= b."""
        labels = frozenset(normalize_label(x) for x in ground)
        pairs = frozenset((normalize_label(a), normalize_label(b)) for a, b in relations)
        return cls(labels, pairs)

    @classmethod
    def chain(cls, order: Iterable[object]) -> "Preposet":
        labels = [normalize_label(x) for x in order]
        return cls(frozenset(labels), frozenset(zip(labels, labels[1:], strict=False)))

    @classmethod
    def antichain(cls, ground: Iterable[object]) -> "Preposet":
        return cls(frozenset(normalize_label(x) for x in ground), frozenset())

    @classmethod
    def from_osp(cls, partition: OrderedSetPartition) -> "Preposet":
        """The total preposet whose classes are the blocks, in order."""
        pairs = set()
        for earlier, later in zip(partition.blocks, partition.blocks[1:], strict=False):
            pairs.update((a, b) for a in earlier for b in later)
        for block in partition.blocks:
            pairs.update((a, b) for a in block for b in block)
        return cls(partition.ground, frozenset(pairs))

    def leq(self, a: str, b: str) -> bool:
        return (a, b) in self.relation

    def less(self, a: str, b: str) -> bool:
        return (a, b) in self.relation and (b, a) not in self.relation

    @cached_property
    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.ground)
        graph.add_edges_from((a, b) for a, b in self.relation if a != b)
        return graph

    @cached_property
    def classes(self) -> tuple[frozenset[str], ...]:
        """Equivalence classes x ~ y iff x <= y <= x, in canonical order."""
        components = (frozenset(c) for c in nx.strongly_connected_components(self.graph))
        return tuple(sorted(components, key=set_key))

    @cached_property
    def quotient(self) -> nx.DiGraph:
        """Quotient poset q/~ as a transitively closed DAG on the classes."""
        quotient = nx.quotient_graph(self.graph, list(self.classes), create_using=nx.DiGraph)
        quotient.remove_edges_from(list(nx.selfloop_edges(quotient)))
        return quotient

    @property
    def size(self) -> int:
        """|q|, the number of classes."""
        return len(self.classes)

    def class_of(self, label: str) -> frozenset[str]:
        for cls_ in self.classes:
            if label in cls_:
                return cls_
        raise ValueError(f"Label {label!r} not in preposet ground set {{{format_set(self.ground)}}}")

    @cached_property
    def lower_ideals(self) -> tuple[frozenset[str], ...]:
        """
        All lower ideals, as label sets.

        Each is the down-closure of an antichain of the quotient poset, so the
        enumeration runs over class-level antichains only.
        """
        ideals = set()
        for antichain in nx.antichains(self.quotient):
            ideal: frozenset[str] = frozenset()
            for node in antichain:
                ideal |= node
                for below in self.quotient.predecessors(node):
                    ideal |= below
            ideals.add(ideal)
        logger.debug(f"{len(ideals)} lower ideals over {self.size} classes")
        return tuple(sorted(ideals, key=set_key))

    def is_lower_ideal(self, subset: Iterable[str]) -> bool:
        subset = frozenset(subset)
        return all(a in subset for a, b in self.relation if b in subset)

    def minimal_classes(self, within: frozenset[frozenset[str]] | None = None) -> list[frozenset[str]]:
        """Minimal classes of the quotient restricted to ``within`` (all classes by default)."""
        pool = frozenset(self.classes) if within is None else within
        return [
            node
            for node in self.classes
            if node in pool and not any(p in pool for p in self.quotient.predecessors(node))
        ]

    @property
    def is_antisymmetric(self) -> bool:
        return all(len(c) == 1 for c in self.classes)

    @property
    def is_total(self) -> bool:
        count = self.size
        return self.quotient.number_of_edges() == count * (count - 1) // 2

    @property
    def is_preantichain(self) -> bool:
        return self.quotient.number_of_edges() == 0

    def cone_dimension(self) -> int:
        """dim cone(q) = |I| minus the number of comparability components."""
        if not self.ground:
            return 0
        return len(self.ground) - nx.number_weakly_connected_components(self.graph)

    def as_osp(self) -> OrderedSetPartition:
        if not self.is_total:
            raise ValueError(f"Preposet {self} is not total")
        ordered = list(nx.topological_sort(self.quotient))
        return OrderedSetPartition(tuple(ordered))

    def restrict(self, subset: Iterable[str]) -> "Preposet":
        subset = require_subset(subset, self.ground)
        pairs = frozenset((a, b) for a, b in self.relation if a in subset and b in subset)
        return type(self)(subset, pairs)

    def split(self, subset: Iterable[str]) -> tuple["Preposet", "Preposet"] | None:
        """(q|_S, q|_T) when S is a lower ideal, None (the zero coproduct) otherwise."""
        subset = require_subset(subset, self.ground)
        if not self.is_lower_ideal(subset):
            return None
        return self.restrict(subset), self.restrict(self.ground - subset)

    def product(self, other: "Preposet") -> "Preposet":
        if self.ground & other.ground:
            raise ValueError(
                f"Ground sets overlap on {{{format_set(self.ground & other.ground)}}}"
            )
        return type(self)(self.ground | other.ground, self.relation | other.relation)

    def relabel(self, mapping: Mapping[str, str]) -> "Preposet":
        return type(self)(
            frozenset(mapping[x] for x in self.ground),
            frozenset((mapping[a], mapping[b]) for a, b in self.relation),
        )

    def as_preposet(self) -> "Preposet":
        return Preposet(self.ground, self.relation)

    def cover_relations(self) -> list[tuple[frozenset[str], frozenset[str]]]:
        reduction = nx.transitive_reduction(self.quotient)
        return sorted(reduction.edges(), key=lambda e: (set_key(e[0]), set_key(e[1])))

    def __str__(self) -> str:
        classes = " ".join("{" + format_set(c) + "}" for c in self.classes)
        covers = ",".join(
            f"{format_set(a)}<{format_set(b)}" for a, b in self.cover_relations()
        )
        return f"{classes}" + (f" : {covers}" if covers else "")


@dataclass(frozen=True)
class Poset(Preposet):
    """Antisymmetric preposet."""

    def __post_init__(self) -> None:
        super().__post_init__()
        for cls_ in self.classes:
            if len(cls_) > 1:
                a, b = sorted_labels(cls_)[:2]
                raise AxiomViolation(
                    "antisymmetry", (a, b), f"{a}<={b} and {b}<={a} with {a}!={b}"
                )

    def linear_extensions(self) -> list[tuple[str, ...]]:
        return [tuple(order) for order in nx.all_topological_sorts(self.graph)]

    def minimal_elements(self) -> frozenset[str]:
        return frozenset(x for x in self.ground if self.graph.in_degree(x) == 0)

    def down_set(self, labels: Iterable[str], strict: bool = False) -> frozenset[str]:
        labels = frozenset(labels)
        below = {a for a, b in self.relation if b in labels and (not strict or a != b)}
        if strict:
            return frozenset(below) - labels
        return frozenset(below) | labels

    def antichains(self) -> list[frozenset[str]]:
        return sorted((frozenset(a) for a in nx.antichains(self.graph)), key=set_key)

    def is_antichain(self) -> bool:
        return self.graph.number_of_edges() == 0


def prelinear_extensions(preposet: Preposet) -> list[tuple[OrderedSetPartition, int]]:
    """
    Prelinear extensions of a preposet with their straightening signs.

    Algorithm:
    1. The first block is the union of any nonempty set of minimal classes of
       the remaining quotient poset.
    2. Remove those classes and recurse until no class is left.
    3. Each resulting ordered set partition l carries sign (-1)^{|q| - |l|}.
    """
    size = preposet.size
    results: list[tuple[OrderedSetPartition, int]] = []

    def extend(remaining: frozenset[frozenset[str]], prefix: tuple[frozenset[str], ...]) -> None:
        if not remaining:
            results.append((OrderedSetPartition(prefix), (-1) ** (size - len(prefix))))
            return
        minimal = preposet.minimal_classes(remaining)
        for mask in range(1, 1 << len(minimal)):
            chosen = [minimal[i] for i in range(len(minimal)) if mask >> i & 1]
            extend(remaining - frozenset(chosen), (*prefix, frozenset().union(*chosen)))

    extend(frozenset(preposet.classes), ())
    logger.debug(f"{len(results)} prelinear extensions of {preposet}")
    return results


def poset_coproduct(poset: Preposet, subset: Iterable[str]) -> tuple[Preposet, Preposet] | None:
    return poset.split(subset)


@dataclass(frozen=True)
class WeightedPreposet:
    """A preposet with one rational weight per equivalence class: the cone w^q + cone(q)."""

    preposet: Preposet
    weights: tuple[tuple[frozenset[str], Fraction], ...]

    def __post_init__(self) -> None:
        classes = set(self.preposet.classes)
        given = [c for c, _ in self.weights]
        if set(given) != classes or len(given) != len(classes):
            raise ValueError(
                f"Weights must be given once per class of {self.preposet}, got "
                f"{[format_set(c) for c in given]}"
            )
        ordered = tuple(sorted(self.weights, key=lambda item: set_key(item[0])))
        object.__setattr__(self, "weights", ordered)

    @classmethod
    def of(
        cls, preposet: Preposet, weights: Mapping[frozenset[str], RationalLike]
    ) -> "WeightedPreposet":
        return cls(preposet, tuple((c, parse_rational(w)) for c, w in weights.items()))

    @classmethod
    def from_representatives(
        cls, preposet: Preposet, weights: Mapping[str, RationalLike]
    ) -> "WeightedPreposet":
        """Weights keyed by any label of each class."""
        by_class: dict[frozenset[str], Fraction] = {}
        for label, weight in weights.items():
            cls_ = preposet.class_of(normalize_label(label))
            if cls_ in by_class:
                raise ValueError(f"Class {{{format_set(cls_)}}} weighted twice")
            by_class[cls_] = parse_rational(weight)
        return cls.of(preposet, by_class)

    @classmethod
    def from_weighted_osp(cls, element: WeightedOSP) -> "WeightedPreposet":
        return cls.of(
            Preposet.from_osp(element.partition), dict(zip(element.blocks, element.weights, strict=True))
        )

    @property
    def ground(self) -> frozenset[str]:
        return self.preposet.ground

    def weight(self, cls_: frozenset[str]) -> Fraction:
        for candidate, value in self.weights:
            if candidate == cls_:
                return value
        raise ValueError(f"{{{format_set(cls_)}}} is not a class of {self.preposet}")

    @property
    def total_weight(self) -> Fraction:
        return sum((w for _, w in self.weights), Fraction(0))

    def dimension(self) -> int:
        return self.preposet.cone_dimension()

    def apex(self) -> dict[str, Fraction]:
        """A point w^q of the cone: each class weight spread evenly over the class."""
        point: dict[str, Fraction] = {}
        for cls_, weight in self.weights:
            for label in cls_:
                point[label] = weight / len(cls_)
        return point

    def contains(self, point: Mapping[str, Fraction]) -> bool:
        if set(point) != set(self.ground):
            raise ValueError(
                f"Point coordinates {sorted_labels(point)} do not match ground set "
                f"{sorted_labels(self.ground)}"
            )
        if sum(point.values(), Fraction(0)) != self.total_weight:
            return False
        for ideal in self.preposet.lower_ideals:
            mass = sum((point[label] for label in ideal), Fraction(0))
            bound = sum((w for cls_, w in self.weights if cls_ <= ideal), Fraction(0))
            if mass > bound:
                return False
        return True

    def restrict(self, subset: frozenset[str]) -> "WeightedPreposet":
        restricted = self.preposet.restrict(subset)
        return WeightedPreposet.of(
            restricted, {c: w for c, w in self.weights if c <= subset}
        )

    def split(self, subset: Iterable[str]) -> tuple["WeightedPreposet", "WeightedPreposet"] | None:
        """Face maximizing the sum over S: defined when S is a lower ideal."""
        subset = require_subset(subset, self.ground)
        if not self.preposet.is_lower_ideal(subset):
            return None
        return self.restrict(subset), self.restrict(self.ground - subset)

    def product(self, other: "WeightedPreposet") -> "WeightedPreposet":
        return WeightedPreposet(self.preposet.product(other.preposet), self.weights + other.weights)

    def relabel(self, mapping: Mapping[str, str]) -> "WeightedPreposet":
        return WeightedPreposet(
            self.preposet.relabel(mapping),
            tuple((frozenset(mapping[x] for x in c), w) for c, w in self.weights),
        )

    def as_weighted_osp(self) -> WeightedOSP:
        partition = self.preposet.as_osp()
        return WeightedOSP(partition, tuple(self.weight(block) for block in partition.blocks))

    def __str__(self) -> str:
        weights = ",".join(f"{format_set(c)}:{format_rational(w)}" for c, w in self.weights)
        return f"{self.preposet} @ {weights}"


def weighted_cone_membership(cone: WeightedPreposet, point: Mapping[str, Fraction]) -> bool:
    return cone.contains(point)


def all_closed_relations(ground: Iterable[str]) -> Iterator[Preposet]:
    """Every preposet on ``ground`` (brute force over off-diagonal relations)."""
    labels = sorted_labels(ground)
    pairs = [(a, b) for a in labels for b in labels if a != b]
    seen = set()
    for mask in range(1 << len(pairs)):
        chosen = frozenset(pairs[i] for i in range(len(pairs)) if mask >> i & 1)
        preposet = Preposet(frozenset(labels), chosen)
        if preposet.relation not in seen:
            seen.add(preposet.relation)
            yield preposet
