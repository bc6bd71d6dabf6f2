"""
Matroids

Matroids given by their bases, minors along the Hopf structure, flats, the
matroid polytope as a submodular function, and flag matroids.
"""

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations, product

from engines.errors import AxiomViolation
from engines.services.algebra import (
    format_set,
    label_key,
    normalize_label,
    require_subset,
    set_key,
    sorted_labels,
    subsets,
)
from engines.services.permutahedra import SubmodularGP

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Matroid:
    """A matroid on a finite label set, given by its bases."""

    ground: frozenset[str]
    bases: frozenset[frozenset[str]]
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.bases:
            raise AxiomViolation("nonempty bases", (), "a matroid needs at least one basis")
        for basis in self.bases:
            if not basis <= self.ground:
                raise ValueError(
                    f"Basis {{{format_set(basis)}}} is not contained in {{{format_set(self.ground)}}}"
                )
        if self.validate:
            self.check_axioms()

    @classmethod
    def from_bases(cls, ground: Iterable[object], bases: Iterable[Iterable[object]]) -> "Matroid":
        return cls(
            frozenset(normalize_label(x) for x in ground),
            frozenset(frozenset(normalize_label(x) for x in b) for b in bases),
        )

    @classmethod
    def uniform(cls, rank: int, size: int, labels: Sequence[object] | None = None) -> "Matroid":
        """U_{rank,size}; labels default to 1..size."""
        if not 0 <= rank <= size:
            raise ValueError(f"Uniform matroid needs 0 <= rank <= size, got U_{{{rank},{size}}}")
        names = [normalize_label(x) for x in (labels or range(1, size + 1))]
        return cls(
            frozenset(names),
            frozenset(frozenset(c) for c in combinations(names, rank)),
            validate=False,
        )

    def check_axioms(self) -> None:
        """Equal basis sizes and the basis exchange axiom, checked exhaustively."""
        sizes = {len(b) for b in self.bases}
        if len(sizes) > 1:
            small = min(self.bases, key=len)
            large = max(self.bases, key=len)
            raise AxiomViolation("equal basis sizes", (small, large))
        for first in self.bases:
            for second in self.bases:
                for a in first - second:
                    if not any((first - {a}) | {b} in self.bases for b in second - first):
                        raise AxiomViolation(
                            "basis exchange",
                            (first, second),
                            f"no b in {{{format_set(second - first)}}} can replace {a}",
                        )

    # -- rank ----------------------------------------------------------------

    @cached_property
    def _rank_table(self) -> dict[frozenset[str], int]:
        return {s: max(len(s & b) for b in self.bases) for s in subsets(self.ground)}

    def rank(self, subset: Iterable[str] | None = None) -> int:
        if subset is None:
            return len(next(iter(self.bases)))
        return self._rank_table[frozenset(subset)]

    def closure(self, subset: Iterable[str]) -> frozenset[str]:
        subset = frozenset(subset)
        base = self.rank(subset)
        return frozenset(x for x in self.ground if self.rank(subset | {x}) == base)

    def is_flat(self, subset: Iterable[str]) -> bool:
        subset = frozenset(subset)
        return self.closure(subset) == subset

    @cached_property
    def flats(self) -> tuple[frozenset[str], ...]:
        found = {self.closure(s) for s in subsets(self.ground)}
        logger.debug(f"{len(found)} flats on {{{format_set(self.ground)}}}")
        return tuple(sorted(found, key=lambda f: (self.rank(f), set_key(f))))

    def loops(self) -> frozenset[str]:
        return frozenset(x for x in self.ground if self.rank({x}) == 0)

    def coloops(self) -> frozenset[str]:
        return frozenset(x for x in self.ground if all(x in b for b in self.bases))

    @property
    def has_unique_basis(self) -> bool:
        return len(self.bases) == 1

    # -- minors and Hopf structure --------------------------------------------

    def restrict(self, subset: Iterable[str]) -> "Matroid":
        """M|_S: the maximal intersections B & S."""
        subset = require_subset(subset, self.ground)
        target = self.rank(subset)
        return Matroid(
            subset,
            frozenset(b & subset for b in self.bases if len(b & subset) == target),
            validate=False,
        )

    def contract(self, subset: Iterable[str]) -> "Matroid":
        """M/_S: B - S over the bases meeting S in a basis of M|_S."""
        subset = require_subset(subset, self.ground)
        target = self.rank(subset)
        return Matroid(
            self.ground - subset,
            frozenset(b - subset for b in self.bases if len(b & subset) == target),
            validate=False,
        )

    def split(self, subset: Iterable[str]) -> tuple["Matroid", "Matroid"]:
        return self.restrict(subset), self.contract(subset)

    def minor(self, lower: Iterable[str], upper: Iterable[str]) -> "Matroid":
        """M[A, B] = (M|_B)/_A for A contained in B."""
        lower, upper = frozenset(lower), frozenset(upper)
        if not lower <= upper:
            raise ValueError(
                f"Minor M[A,B] needs A <= B, got A={{{format_set(lower)}}}, B={{{format_set(upper)}}}"
            )
        return self.restrict(upper).contract(lower)

    def delete(self, label: str) -> "Matroid":
        return self.restrict(self.ground - {label})

    def contract_element(self, label: str) -> "Matroid":
        return self.contract({label})

    def product(self, other: "Matroid") -> "Matroid":
        """Direct sum on disjoint ground sets."""
        if self.ground & other.ground:
            raise ValueError(
                f"Ground sets overlap on {{{format_set(self.ground & other.ground)}}}"
            )
        return Matroid(
            self.ground | other.ground,
            frozenset(a | b for a in self.bases for b in other.bases),
            validate=False,
        )

    def relabel(self, mapping: Mapping[str, str]) -> "Matroid":
        return Matroid(
            frozenset(mapping[x] for x in self.ground),
            frozenset(frozenset(mapping[x] for x in b) for b in self.bases),
            validate=False,
        )

    def to_gp(self) -> SubmodularGP:
        """Matroid polytope: z is the rank function."""
        return SubmodularGP(self.ground, dict(self._rank_table), validate=False)

    def __str__(self) -> str:
        bases = " ".join(sorted(format_set(b) or "-" for b in self.bases))
        return f"M({format_set(self.ground)}; {bases})"


def minors(matroid: Matroid, subset: Iterable[str]) -> tuple[Matroid, Matroid]:
    return matroid.split(subset)


def direct_sum(first: Matroid, second: Matroid) -> Matroid:
    return first.product(second)


def to_gp(matroid: Matroid) -> SubmodularGP:
    return matroid.to_gp()


@dataclass(frozen=True)
class FlagMatroid:
    """Matroids on a common ground set with strictly increasing ranks."""

    constituents: tuple[Matroid, ...]

    def __post_init__(self) -> None:
        if not self.constituents:
            raise ValueError("A flag matroid needs at least one constituent")
        ground = self.constituents[0].ground
        for m in self.constituents[1:]:
            if m.ground != ground:
                raise ValueError(
                    f"Flag constituents must share a ground set: {{{format_set(ground)}}} vs "
                    f"{{{format_set(m.ground)}}}"
                )
        ranks = [m.rank() for m in self.constituents]
        for i, (a, b) in enumerate(zip(ranks, ranks[1:], strict=False)):
            if a >= b:
                raise AxiomViolation(
                    "flag rank monotonicity",
                    (f"rank {a} at position {i}", f"rank {b} at position {i + 1}"),
                )

    @property
    def ground(self) -> frozenset[str]:
        return self.constituents[0].ground

    def to_gp(self) -> SubmodularGP:
        """Minkowski sum of the constituent polytopes."""
        return SubmodularGP(
            self.ground,
            {s: sum(m.rank(s) for m in self.constituents) for s in subsets(self.ground)},
            validate=False,
        )

    def flags(self) -> list[tuple[frozenset[str], ...]]:
        """All nested chains B_1 <= ... <= B_k with B_i a basis of the i-th constituent."""
        chains = []
        for choice in product(*(sorted(m.bases, key=set_key) for m in self.constituents)):
            if all(a <= b for a, b in zip(choice, choice[1:], strict=False)):
                chains.append(tuple(choice))
        return chains


def _gale_leq(first: frozenset[str], second: frozenset[str], position: Mapping[str, int]) -> bool:
    a = sorted(position[x] for x in first)
    b = sorted(position[x] for x in second)
    return all(x <= y for x, y in zip(a, b, strict=True))


def flag_to_gp(flag: FlagMatroid) -> SubmodularGP:
    return flag.to_gp()


def gale_check(flag: FlagMatroid, orders: Iterable[Sequence[str]] | None = None) -> bool:
    """
    Flag axiom: for every linear order the nested basis flags have a unique
    Gale-minimal element (componentwise Gale order).
    """
    chains = flag.flags()
    if not chains:
        return False
    labels = sorted(flag.ground, key=label_key)
    for order in orders if orders is not None else permutations(labels):
        position = {x: i for i, x in enumerate(order)}
        minimal = [
            c
            for c in chains
            if not any(
                d != c
                and all(_gale_leq(x, y, position) for x, y in zip(d, c, strict=True))
                for d in chains
            )
        ]
        if len(minimal) != 1:
            logger.debug(f"Order {order}: {len(minimal)} Gale-minimal flags")
            return False
    return True


def all_bases_families(ground: Iterable[str]) -> list[Matroid]:
    """Every matroid on ``ground`` (brute force over equal-size families)."""
    labels = sorted_labels(ground)
    found = []
    for rank in range(len(labels) + 1):
        candidates = [frozenset(c) for c in combinations(labels, rank)]
        for mask in range(1, 1 << len(candidates)):
            family = frozenset(candidates[i] for i in range(len(candidates)) if mask >> i & 1)
            try:
                found.append(Matroid(frozenset(labels), family))
            except AxiomViolation:
                continue
    return found
