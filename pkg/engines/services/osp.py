"""
Ordered Set Partitions

Ordered set partitions, their weighted version and the quasishuffle Hopf
structure on weighted ordered set partitions.

A weighted ordered set partition (w, F) is both a basis element of the
indicator quotient and the translated cone of the total preposet F:

    cone(w, F) = {x : sum(x) = sum(w), sum of x over F_1..F_j <= w_1 + .. + w_j}
"""

import logging
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from engines.services.algebra import (
    FormalSum,
    RationalLike,
    format_rational,
    normalize_label,
    parse_rational,
    require_subset,
    sorted_labels,
    subsets,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrderedSetPartition:
    """Sequence of nonempty, pairwise disjoint blocks (a set composition)."""

    blocks: tuple[frozenset[str], ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for block in self.blocks:
            if not block:
                raise ValueError(f"Empty block in ordered set partition {self.blocks}")
            if seen & block:
                raise ValueError(
                    f"Blocks of an ordered set partition must be disjoint: {sorted(seen & block)}"
                )
            seen |= block

    @classmethod
    def of(cls, *blocks: Iterable[object]) -> "OrderedSetPartition":
        return cls(tuple(frozenset(normalize_label(x) for x in block) for block in blocks))

    @classmethod
    def parse(cls, text: str) -> "OrderedSetPartition":
        """
        Parse "14|2|35" (one character per label) or "10,11|2" (comma-separated).
        The empty string is the empty partition.
        """
        text = text.strip()
        if not text:
            return cls(())
        blocks = []
        for chunk in text.split("|"):
            chunk = chunk.strip()
            labels = chunk.split(",") if "," in chunk else list(chunk)
            blocks.append(frozenset(normalize_label(label.strip()) for label in labels))
        return cls(tuple(blocks))

    @classmethod
    def linear(cls, order: Iterable[object]) -> "OrderedSetPartition":
        return cls(tuple(frozenset([normalize_label(x)]) for x in order))

    @property
    def ground(self) -> frozenset[str]:
        return frozenset().union(*self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        compact = all(len(label) == 1 for block in self.blocks for label in block)
        separator = "" if compact else ","
        return "|".join(separator.join(sorted_labels(block)) for block in self.blocks)

    def restrict(self, subset: Iterable[str]) -> "OrderedSetPartition":
        """Blocks intersected with ``subset``, in order, empty blocks dropped."""
        subset = require_subset(subset, self.ground)
        return OrderedSetPartition(
            tuple(block & subset for block in self.blocks if block & subset)
        )

    def prefixes(self) -> tuple[frozenset[str], ...]:
        """F_0 = {} , F_1 = S_1, ..., F_k = S_1 u ... u S_k."""
        accumulated: frozenset[str] = frozenset()
        result = [accumulated]
        for block in self.blocks:
            accumulated = accumulated | block
            result.append(accumulated)
        return tuple(result)

    def prefix_index(self, subset: Iterable[str]) -> int | None:
        """j when ``subset`` is the union of the first j blocks, else None."""
        subset = frozenset(subset)
        for index, prefix in enumerate(self.prefixes()):
            if prefix == subset:
                return index
        return None

    def linear_orders(self) -> Iterator[tuple[str, ...]]:
        """All linear orders refining this partition."""

        def extend(index: int, prefix: tuple[str, ...]) -> Iterator[tuple[str, ...]]:
            if index == len(self.blocks):
                yield prefix
                return
            for arrangement in permutations(sorted_labels(self.blocks[index])):
                yield from extend(index + 1, prefix + arrangement)

        yield from extend(0, ())

    def block_of(self, label: str) -> int:
        for index, block in enumerate(self.blocks):
            if label in block:
                return index
        raise ValueError(f"Label {label!r} not in ordered set partition {self}")

    def relabel(self, mapping: Mapping[str, str]) -> "OrderedSetPartition":
        return OrderedSetPartition(
            tuple(frozenset(mapping[x] for x in block) for block in self.blocks)
        )


def all_osps(ground: Iterable[str]) -> Iterator[OrderedSetPartition]:
    """Every ordered set partition of ``ground`` (ordered Bell number many)."""
    ground = frozenset(ground)

    def build(remaining: frozenset[str]) -> Iterator[tuple[frozenset[str], ...]]:
        if not remaining:
            yield ()
            return
        for first in subsets(remaining):
            if not first:
                continue
            for rest in build(remaining - first):
                yield (first, *rest)

    for blocks in build(ground):
        yield OrderedSetPartition(blocks)


def _check_disjoint(left: frozenset[str], right: frozenset[str]) -> None:
    if left & right:
        raise ValueError(
            f"Ground sets overlap on {{{','.join(sorted_labels(left & right))}}}"
        )


def _quasishuffle_blocks(
    left: tuple[frozenset[str], ...], right: tuple[frozenset[str], ...]
) -> Iterator[tuple[tuple[frozenset[str], int | None, int | None], ...]]:
    """
    Interleavings of two block sequences allowing pairwise merges.

    Each output block records which left/right block indices it came from so
    that weights can follow along.
    """

    def walk(i: int, j: int) -> Iterator[tuple[tuple[frozenset[str], int | None, int | None], ...]]:
        if i == len(left) and j == len(right):
            yield ()
            return
        if i < len(left):
            for rest in walk(i + 1, j):
                yield ((left[i], i, None), *rest)
        if j < len(right):
            for rest in walk(i, j + 1):
                yield ((right[j], None, j), *rest)
        if i < len(left) and j < len(right):
            for rest in walk(i + 1, j + 1):
                yield ((left[i] | right[j], i, j), *rest)

    yield from walk(0, 0)


def quasishuffles(
    first: OrderedSetPartition, second: OrderedSetPartition
) -> list[OrderedSetPartition]:
    """
    All quasishuffles of two ordered set partitions on disjoint ground sets.

    Each block of the result is a block of ``first``, a block of ``second``, or
    the union of one of each, with both relative orders preserved. Equivalently,
    the H on the union with H|_S = first and H|_T = second.
    """
    _check_disjoint(first.ground, second.ground)
    return [
        OrderedSetPartition(tuple(block for block, _, _ in merged))
        for merged in _quasishuffle_blocks(first.blocks, second.blocks)
    ]


@dataclass(frozen=True)
class WeightedOSP:
    """Ordered set partition with one rational weight per block."""

    partition: OrderedSetPartition
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.weights) != len(self.partition.blocks):
            raise ValueError(
                f"Weighted partition {self.partition} has {len(self.partition.blocks)} "
                f"blocks but {len(self.weights)} weights"
            )

    @classmethod
    def of(cls, partition: OrderedSetPartition | str, weights: Iterable[RationalLike]) -> "WeightedOSP":
        if isinstance(partition, str):
            partition = OrderedSetPartition.parse(partition)
        return cls(partition, tuple(parse_rational(w) for w in weights))

    @classmethod
    def unit(cls) -> "WeightedOSP":
        return cls(OrderedSetPartition(()), ())

    @property
    def ground(self) -> frozenset[str]:
        return self.partition.ground

    @property
    def blocks(self) -> tuple[frozenset[str], ...]:
        return self.partition.blocks

    def __len__(self) -> int:
        return len(self.weights)

    def __str__(self) -> str:
        return f"{self.partition};{','.join(format_rational(w) for w in self.weights)}"

    def restrict_prefix(self, index: int) -> tuple["WeightedOSP", "WeightedOSP"]:
        return (
            WeightedOSP(OrderedSetPartition(self.blocks[:index]), self.weights[:index]),
            WeightedOSP(OrderedSetPartition(self.blocks[index:]), self.weights[index:]),
        )

    def split(self, subset: Iterable[str]) -> tuple["WeightedOSP", "WeightedOSP"] | None:
        """Prefix split when ``subset`` is a union of leading blocks, else None."""
        subset = require_subset(subset, self.ground)
        index = self.partition.prefix_index(subset)
        if index is None:
            return None
        return self.restrict_prefix(index)

    def apex(self) -> dict[str, Fraction]:
        """A point of the cone: each block's weight spread evenly over it."""
        point: dict[str, Fraction] = {}
        for block, weight in zip(self.blocks, self.weights, strict=True):
            for label in block:
                point[label] = weight / len(block)
        return point

    def contains(self, point: Mapping[str, Fraction]) -> bool:
        """Membership in the translated cone of this total preposet."""
        if set(point) != set(self.ground):
            raise ValueError(
                f"Point coordinates {sorted_labels(point)} do not match ground set "
                f"{sorted_labels(self.ground)}"
            )
        running_x = Fraction(0)
        running_w = Fraction(0)
        for block, weight in zip(self.blocks, self.weights, strict=True):
            running_x += sum((point[label] for label in block), Fraction(0))
            running_w += weight
            if running_x > running_w:
                return False
        return running_x == running_w

    def relabel(self, mapping: Mapping[str, str]) -> "WeightedOSP":
        return WeightedOSP(self.partition.relabel(mapping), self.weights)


WOSPSum = FormalSum[WeightedOSP]


def wosp_product(first: WeightedOSP, second: WeightedOSP) -> WOSPSum:
    """
    Product in the weighted quasishuffle Hopf monoid.

    Sum of all weighted quasishuffles with coefficient 1. A merged block
    F_a u G_b carries weight u(F_a) + v(G_b).
    """
    _check_disjoint(first.ground, second.ground)
    terms = []
    for merged in _quasishuffle_blocks(first.blocks, second.blocks):
        blocks = []
        weights = []
        for block, i, j in merged:
            blocks.append(block)
            weight = Fraction(0)
            if i is not None:
                weight += first.weights[i]
            if j is not None:
                weight += second.weights[j]
            weights.append(weight)
        terms.append((WeightedOSP(OrderedSetPartition(tuple(blocks)), tuple(weights)), 1))
    return FormalSum(terms)


def wosp_coproduct(
    element: WeightedOSP, subset: Iterable[str]
) -> FormalSum[tuple[WeightedOSP, WeightedOSP]]:
    """Prefix split tensor when ``subset`` is a union of leading blocks, zero otherwise."""
    pieces = element.split(subset)
    if pieces is None:
        return FormalSum()
    return FormalSum.of(pieces)


def product_of_sums(first: WOSPSum, second: WOSPSum) -> WOSPSum:
    """Bilinear extension of wosp_product."""
    result: WOSPSum = FormalSum()
    for a, ca in first.items():
        for b, cb in second.items():
            result = result + wosp_product(a, b) * (ca * cb)
    return result


def coproduct_of_sums(
    element: WOSPSum, subset: Iterable[str]
) -> FormalSum[tuple[WeightedOSP, WeightedOSP]]:
    subset = frozenset(subset)
    return element.map_linear(lambda x: wosp_coproduct(x, subset))


def sign_automorphism(element: WOSPSum) -> WOSPSum:
    """(w, l) -> (-1)^{number of blocks of l} (w, l)."""
    return FormalSum({x: c * (-1) ** len(x) for x, c in element.items()})


def evaluate_indicator(element: WOSPSum, point: Mapping[str, Fraction]) -> Fraction:
    """Pointwise value of a signed combination of weighted OSP cone indicators."""
    return sum(
        (c for x, c in element.items() if x.contains(point)),
        Fraction(0),
    )
