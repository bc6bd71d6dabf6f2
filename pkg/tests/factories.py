"""
Test Factories

Helper functions for creating engine objects and JSON payloads in tests.
"""

from collections.abc import Iterator, Sequence
from fractions import Fraction
from itertools import combinations, permutations
from typing import Any

from engines.services.building_sets import BuildingSet, graphical_building_set
from engines.services.matroid import Matroid, all_bases_families, to_gp
from engines.services.permutahedra import SubmodularGP
from engines.services.preposet import Poset, Preposet, WeightedPreposet, all_closed_relations


def make_uniform_matroid(**overrides) -> Matroid:
    """Create U_{rank,size} with sensible defaults (U_{2,4})."""
    defaults = {"rank": 2, "size": 4, "labels": None}
    defaults.update(overrides)
    return Matroid.uniform(defaults["rank"], defaults["size"], defaults["labels"])


def make_relaxed_u24(*dropped: str) -> Matroid:
    """U_{2,4} with the given pairs (e.g. "12") removed from its bases."""
    parent = make_uniform_matroid()
    removed = {frozenset(pair) for pair in dropped}
    return Matroid(parent.ground, frozenset(b for b in parent.bases if b not in removed))


def make_poset(**overrides) -> Poset:
    """Create a poset from generating relations (default: the chain 1 < 2 < 3)."""
    defaults: dict[str, Any] = {"ground": ["1", "2", "3"], "relations": [("1", "2"), ("2", "3")]}
    defaults.update(overrides)
    preposet = Preposet.from_relations(defaults["ground"], defaults["relations"])
    return Poset(preposet.ground, preposet.relation)


def make_cone(**overrides) -> WeightedPreposet:
    """Create a translated preposet cone (default: the chain 1 < 2 at the origin)."""
    defaults: dict[str, Any] = {"ground": ["1", "2"], "relations": [("1", "2")], "weights": None}
    defaults.update(overrides)
    preposet = Preposet.from_relations(defaults["ground"], defaults["relations"])
    weights = defaults["weights"] or {c: 0 for c in preposet.classes}
    return WeightedPreposet.of(preposet, weights)


def make_segment(**overrides) -> SubmodularGP:
    """Create the segment between two points of the plane x1 + x2 = total."""
    defaults = {"start": (0, 2), "end": (2, 0)}
    defaults.update(overrides)
    points = [dict(zip(("1", "2"), p, strict=True)) for p in (defaults["start"], defaults["end"])]
    return SubmodularGP.from_vertices(["1", "2"], points)


def make_path_building_set(**overrides) -> BuildingSet:
    """Create the graphical building set of a path (default: 1 - 2 - 3)."""
    defaults: dict[str, Any] = {"vertices": ["1", "2", "3"]}
    defaults.update(overrides)
    vertices = defaults["vertices"]
    edges = defaults.get("edges", list(zip(vertices, vertices[1:], strict=False)))
    return graphical_building_set(vertices, edges)


def matroid_json(matroid: Matroid) -> dict[str, Any]:
    """The {"matroid": {...}} payload for a matroid."""
    return {
        "matroid": {
            "ground": sorted(matroid.ground),
            "bases": sorted(sorted(b) for b in matroid.bases),
        }
    }


def make_u24_split_payload(**overrides) -> dict[str, Any]:
    """Create a subdivision payload for the split of U_{2,4} along x_1 + x_2 = 1."""
    defaults: dict[str, Any] = {
        "name": "u24-json",
        "parent": matroid_json(make_uniform_matroid()),
        "cells": [
            matroid_json(make_relaxed_u24("12")),
            matroid_json(make_relaxed_u24("34")),
            matroid_json(make_relaxed_u24("12", "34")),
        ],
    }
    defaults.update(overrides)
    return defaults


def all_matroids(size: int) -> list[Matroid]:
    """Every matroid on the labels 1..size."""
    return all_bases_families([str(i) for i in range(1, size + 1)])


def all_preposets(size: int) -> list[Preposet]:
    """Every preposet on the labels 1..size."""
    return list(all_closed_relations([str(i) for i in range(1, size + 1)]))


def all_posets(size: int) -> list[Poset]:
    """Every poset on the labels 1..size."""
    return [Poset(p.ground, p.relation) for p in all_preposets(size) if p.is_antisymmetric]


def all_graphs(size: int) -> Iterator[BuildingSet]:
    """Graphical building sets of every simple graph on the vertices 1..size."""
    vertices = [str(i) for i in range(1, size + 1)]
    pairs = list(combinations(vertices, 2))
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        yield graphical_building_set(vertices, edges)


def label_run(first: int, count: int) -> list[str]:
    """The labels first, first + 1, ..., as strings."""
    return [str(i) for i in range(first, first + count)]


def all_polytopes(labels: Sequence[str]) -> list[SubmodularGP]:
    """
    Every matroid polytope on ``labels``, plus the permutahedron, the simplex
    and the orbit polytope of (0, 1/2, 2, 9/2, ...), which has fractional vertices.
    """
    mapping = dict(zip(label_run(1, len(labels)), labels, strict=True))
    matroids = [to_gp(m).relabel(mapping) for m in all_matroids(len(labels))]
    values = [Fraction(i * i, 2) for i in range(len(labels))]
    orbit = SubmodularGP.from_vertices(
        labels, [dict(zip(labels, p, strict=True)) for p in permutations(values)]
    )
    return [*matroids, SubmodularGP.permutahedron(labels), SubmodularGP.simplex(labels), orbit]
