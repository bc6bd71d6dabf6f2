"""
Object Schemas

JSON payloads for the combinatorial objects the engines consume. Each
payload converts to its engine object with ``to_domain`` and back with
``from_domain``.
"""

from fractions import Fraction
from typing import Any

from pydantic import BaseModel, Field, model_validator

from engines.schemas.common import Label, Rational, parse_subset_key
from engines.services.algebra import FormalSum, format_set, label_key, sorted_labels
from engines.services.building_sets import BuildingSet, graphical_building_set
from engines.services.matroid import FlagMatroid, Matroid
from engines.services.osp import OrderedSetPartition, WeightedOSP
from engines.services.permutahedra import SubmodularGP
from engines.services.preposet import Poset, Preposet, WeightedPreposet
from engines.services.valuation_lab import Cell, SubdivisionComplex


class MatroidPayload(BaseModel):
    """A matroid given by its bases."""

    ground: list[Label] = Field(..., description="Ground set labels")
    bases: list[list[Label]] = Field(..., description="Every basis, as a list of labels")

    def to_domain(self) -> Matroid:
        return Matroid.from_bases(self.ground, self.bases)

    @classmethod
    def from_domain(cls, matroid: Matroid) -> "MatroidPayload":
        return cls(
            ground=list(sorted_labels(matroid.ground)),
            bases=sorted(list(sorted_labels(b)) for b in matroid.bases),
        )


class FlagMatroidPayload(BaseModel):
    """Matroids of strictly increasing rank on a common ground set."""

    constituents: list[MatroidPayload] = Field(..., min_length=1, description="Constituents, lowest rank first")

    def to_domain(self) -> FlagMatroid:
        return FlagMatroid(tuple(m.to_domain() for m in self.constituents))

    @classmethod
    def from_domain(cls, flag: FlagMatroid) -> "FlagMatroidPayload":
        return cls(constituents=[MatroidPayload.from_domain(m) for m in flag.constituents])


class GPPayload(BaseModel):
    """A bounded generalized permutahedron by its submodular function."""

    ground: list[Label] = Field(..., description="Ground set labels")
    z: dict[str, Rational] = Field(
        ...,
        description='Values on every subset, keyed by comma-joined labels ("1,2"; "" is the empty set)',
    )

    def to_domain(self) -> SubmodularGP:
        return SubmodularGP(self.ground, {parse_subset_key(k): v for k, v in self.z.items()})

    @classmethod
    def from_domain(cls, polytope: SubmodularGP) -> "GPPayload":
        return cls(
            ground=list(polytope.labels),
            z={format_set(s): v for s, v in polytope.items()},
        )


class PosetPayload(BaseModel):
    """A (pre)poset by generating relations a <= b, optionally weighted per class."""

    ground: list[Label] = Field(..., description="Ground set labels")
    relations: list[tuple[Label, Label]] = Field(
        default_factory=list, description="Pairs [a, b] meaning a <= b"
    )
    weights: dict[Label, Rational] | None = Field(
        default=None, description="Cone weights keyed by one representative per class"
    )

    def to_preposet(self) -> Preposet:
        return Preposet.from_relations(self.ground, self.relations)

    def to_poset(self) -> Poset:
        preposet = self.to_preposet()
        return Poset(preposet.ground, preposet.relation)

    def to_cone(self) -> WeightedPreposet:
        preposet = self.to_preposet()
        if self.weights is None:
            return WeightedPreposet.of(preposet, {c: 0 for c in preposet.classes})
        return WeightedPreposet.from_representatives(preposet, self.weights)

    def to_domain(self) -> Preposet | WeightedPreposet:
        """Weighted payloads are cones; unweighted ones are posets when antisymmetric."""
        if self.weights is not None:
            return self.to_cone()
        preposet = self.to_preposet()
        return Poset(preposet.ground, preposet.relation) if preposet.is_antisymmetric else preposet

    @classmethod
    def from_domain(cls, element: Preposet | WeightedPreposet) -> "PosetPayload":
        preposet = element.preposet if isinstance(element, WeightedPreposet) else element
        relations = sorted(
            ((a, b) for a, b in preposet.relation if a != b),
            key=lambda pair: (label_key(pair[0]), label_key(pair[1])),
        )
        weights = None
        if isinstance(element, WeightedPreposet):
            weights = {sorted_labels(c)[0]: w for c, w in element.weights}
        return cls(
            ground=list(sorted_labels(preposet.ground)),
            relations=relations,
            weights=weights,
        )


class OSPPayload(BaseModel):
    """A weighted ordered set partition cone."""

    partition: str = Field(..., description='Blocks separated by "|", e.g. "14|2|35"')
    weights: list[Rational] = Field(..., description="One weight per block")

    def to_domain(self) -> WeightedOSP:
        return WeightedOSP.of(OrderedSetPartition.parse(self.partition), self.weights)

    @classmethod
    def from_domain(cls, element: WeightedOSP) -> "OSPPayload":
        return cls(partition=str(element.partition), weights=list(element.weights))


class BuildingSetPayload(BaseModel):
    """A building set; singletons may repeat."""

    ground: list[Label] = Field(..., description="Ground set labels")
    members: list[list[Label]] = Field(..., description="Members as label lists")

    def to_domain(self) -> BuildingSet:
        return BuildingSet.of(self.ground, self.members)

    @classmethod
    def from_domain(cls, building_set: BuildingSet) -> "BuildingSetPayload":
        return cls(
            ground=list(sorted_labels(building_set.ground)),
            members=[list(sorted_labels(m)) for m in building_set.members],
        )


class GraphPayload(BaseModel):
    """A simple graph, read as its graphical building set."""

    vertices: list[Label] = Field(..., description="Vertex labels")
    edges: list[tuple[Label, Label]] = Field(default_factory=list, description="Edges [a, b]")

    def to_domain(self) -> BuildingSet:
        return graphical_building_set(self.vertices, self.edges)


OBJECT_KEYS = ("matroid", "flag_matroid", "gp", "poset", "osp", "building_set", "graph")


class ObjectPayload(BaseModel):
    """Exactly one combinatorial object, tagged by its key."""

    matroid: MatroidPayload | None = None
    flag_matroid: FlagMatroidPayload | None = None
    gp: GPPayload | None = None
    poset: PosetPayload | None = None
    osp: OSPPayload | None = None
    building_set: BuildingSetPayload | None = None
    graph: GraphPayload | None = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "ObjectPayload":
        given = [key for key in OBJECT_KEYS if getattr(self, key) is not None]
        if len(given) != 1:
            raise ValueError(f"Expected exactly one of {list(OBJECT_KEYS)}, got {given}")
        return self

    @property
    def kind(self) -> str:
        return next(key for key in OBJECT_KEYS if getattr(self, key) is not None)

    def to_domain(self) -> Any:
        return getattr(self, self.kind).to_domain()

    @classmethod
    def from_domain(cls, element: Any) -> "ObjectPayload":
        if isinstance(element, Matroid):
            return cls(matroid=MatroidPayload.from_domain(element))
        if isinstance(element, FlagMatroid):
            return cls(flag_matroid=FlagMatroidPayload.from_domain(element))
        if isinstance(element, SubmodularGP):
            return cls(gp=GPPayload.from_domain(element))
        if isinstance(element, Preposet | WeightedPreposet):
            return cls(poset=PosetPayload.from_domain(element))
        if isinstance(element, WeightedOSP):
            return cls(osp=OSPPayload.from_domain(element))
        if isinstance(element, BuildingSet):
            return cls(building_set=BuildingSetPayload.from_domain(element))
        raise ValueError(f"No payload for {type(element).__name__}")


class TermPayload(ObjectPayload):
    """An object with a rational coefficient."""

    coefficient: Rational = Field(default=Fraction(1), description="Coefficient of the term")


class CombinationPayload(BaseModel):
    """A formal linear combination of objects."""

    terms: list[TermPayload] = Field(..., description="Terms of the combination")

    def to_domain(self) -> FormalSum[Any]:
        total: FormalSum[Any] = FormalSum()
        for term in self.terms:
            total = total + FormalSum.of(term.to_domain(), term.coefficient)
        return total

    @classmethod
    def from_domain(cls, combination: FormalSum[Any]) -> "CombinationPayload":
        return cls(
            terms=[
                TermPayload(coefficient=c, **ObjectPayload.from_domain(item).model_dump(exclude_none=True))
                for item, c in combination.items()
            ]
        )


class CellPayload(ObjectPayload):
    """A cell of a subdivision; dimension and coefficient default to computed values."""

    dimension: int | None = Field(default=None, ge=0, description="Recorded dimension")
    coefficient: Rational | None = Field(
        default=None, description="Coefficient; defaults to (-1)^(dim P - dim cell)"
    )


class SubdivisionPayload(BaseModel):
    """A parent object and the cells of a relation 1_P = sum c_i 1_{P_i}."""

    name: str = Field(default="custom", description="Name of the relation")
    parent: ObjectPayload = Field(..., description="The subdivided object")
    cells: list[CellPayload] = Field(..., min_length=1, description="Cells with their coefficients")
    metadata: dict[str, str] = Field(default_factory=dict, description="Free-form notes")

    def to_domain(self) -> SubdivisionComplex:
        relation = SubdivisionComplex.build(
            self.name,
            self.parent.to_domain(),
            [(cell.to_domain(), cell.coefficient) for cell in self.cells],
            self.metadata,
        )
        recorded = [cell.dimension for cell in self.cells]
        return SubdivisionComplex(
            relation.name,
            relation.parent,
            tuple(
                c if d is None else Cell(c.element, d, c.coefficient)
                for c, d in zip(relation.cells, recorded, strict=True)
            ),
            relation.metadata,
        )


def enforce_ground_limit(element: Any, limit: int) -> None:
    """Reject objects (or combinations of them) whose ground set exceeds ``limit``."""
    items = [item for item, _ in element.items()] if isinstance(element, FormalSum) else [element]
    for item in items:
        ground = getattr(item, "ground", None)
        if ground is not None and len(ground) > limit:
            raise ValueError(
                f"Ground set of size {len(ground)} exceeds the limit of {limit}; "
                "raise GPVAL_MAX_GROUND_SIZE to allow it"
            )


def load_object(data: Any, limit: int) -> Any:
    """
    Validate a JSON object into its engine object.

    A mapping with a ``terms`` key is a formal combination; anything else
    must hold exactly one object key.
    """
    if not isinstance(data, dict):
        raise ValueError(f"Expected a JSON object, got {type(data).__name__}")
    element = (
        CombinationPayload.model_validate(data).to_domain()
        if "terms" in data
        else ObjectPayload.model_validate(data).to_domain()
    )
    enforce_ground_limit(element, limit)
    return element


def load_subdivision(data: Any, limit: int) -> SubdivisionComplex:
    relation = SubdivisionPayload.model_validate(data).to_domain()
    for element in (relation.parent, *(cell.element for cell in relation.cells)):
        enforce_ground_limit(element, limit)
    return relation
