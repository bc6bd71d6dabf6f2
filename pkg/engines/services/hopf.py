"""
Hopf Engine

Characters and convolution over any Hopf submonoid of generalized
permutahedra, the polynomial, quasisymmetric and ordered-set-partition
invariants they generate, the face-sum antipode, and the universal norm and
Tutte characters.

Every object exposes ``ground`` and ``split(S)``; ``split`` returns the pair
(x|_S, x/_S) or None when the coproduct vanishes.
"""

import logging
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Protocol

from sympy.polys.rings import PolyElement

from engines.services.algebra import (
    BI_RING,
    X_GEN,
    Y_GEN,
    ExponentPoly,
    FormalSum,
    QSymMonomial,
    interpolate_values,
    qq,
    sorted_labels,
    subsets,
)
from engines.services.matroid import FlagMatroid, Matroid
from engines.services.osp import OrderedSetPartition, WeightedOSP, all_osps
from engines.services.permutahedra import SubmodularGP
from engines.services.preposet import Preposet, WeightedPreposet

logger = logging.getLogger(__name__)


class HopfObject(Protocol):
    @property
    def ground(self) -> frozenset[str]: ...

    def split(self, subset: Iterable[str]) -> tuple[Any, Any] | None: ...


SpeciesMap = Callable[[Any], Any]


@dataclass(frozen=True)
class Character:
    """A named multiplicative scalar function on a Hopf monoid."""

    name: str
    evaluate: Callable[[Any], Fraction]
    description: str

    def __call__(self, element: Any) -> Fraction:
        return self.evaluate(element)


def _one(_: Any) -> Fraction:
    return Fraction(1)


def _unit(element: Any) -> Fraction:
    return Fraction(0 if element.ground else 1)


def _preantichain(element: Any) -> Fraction:
    if isinstance(element, WeightedPreposet):
        element = element.preposet
    if isinstance(element, WeightedOSP):
        element = Preposet.from_osp(element.partition)
    if not isinstance(element, Preposet):
        raise ValueError(f"The antichain character is defined on (pre)posets, not {type(element).__name__}")
    if not element.is_preantichain:
        return Fraction(0)
    return Fraction((-1) ** (len(element.ground) - element.size))


def _unique_basis(element: Any) -> Fraction:
    if isinstance(element, Matroid):
        return Fraction(1 if element.has_unique_basis else 0)
    if isinstance(element, SubmodularGP):
        return Fraction(1 if len(element.vertices) == 1 else 0)
    raise ValueError(f"The unique-basis character is defined on matroids and polytopes, not {type(element).__name__}")


CHARACTERS: dict[str, Character] = {
    "one": Character("one", _one, "constant 1"),
    "unit": Character("unit", _unit, "1 on the empty ground set, 0 elsewhere"),
    "antichain": Character(
        "antichain", _preantichain, "(-1)^{|I|-|q|} on preantichains, 0 elsewhere"
    ),
    "bjr": Character("bjr", _unique_basis, "1 on matroids with a unique basis (points), 0 elsewhere"),
}


def get_character(name: str) -> Character:
    if name not in CHARACTERS:
        raise ValueError(f"Unknown character {name!r}; known: {sorted(CHARACTERS)}")
    return CHARACTERS[name]


def iterated_split(element: HopfObject, blocks: Sequence[Iterable[str]]) -> list[Any] | None:
    """
    k-fold coproduct along consecutive blocks (empty blocks allowed).

    Returns the k pieces, or None when any intermediate coproduct vanishes.
    """
    pieces = []
    rest: Any = element
    for block in blocks[:-1]:
        pair = rest.split(frozenset(block))
        if pair is None:
            return None
        head, rest = pair
        pieces.append(head)
    pieces.append(rest)
    return pieces


def _multiply(values: Sequence[Any]) -> Any:
    result = values[0]
    for value in values[1:]:
        result = result * value
    return result


def convolve(maps: Sequence[SpeciesMap], element: HopfObject) -> Any:
    """
    (f_1 * ... * f_k)(x): sum over decompositions S_1 u ... u S_k = I,
    empty parts allowed, of the product of f_i on the iterated coproduct.
    """
    if not maps:
        raise ValueError("Convolution needs at least one map")
    labels = sorted_labels(element.ground)
    count = len(maps)
    total: Any = None
    for assignment in product(range(count), repeat=len(labels)):
        blocks = [
            frozenset(x for x, part in zip(labels, assignment, strict=True) if part == i)
            for i in range(count)
        ]
        pieces = iterated_split(element, blocks)
        if pieces is None:
            continue
        term = _multiply([f(piece) for f, piece in zip(maps, pieces, strict=True)])
        total = term if total is None else total + term
    return Fraction(0) if total is None else total


def polynomial_invariant(character: Character | SpeciesMap, element: HopfObject) -> PolyElement:
    """
    f(t) with f(k) = character^{*k}(x), recovered by interpolation at
    k = 0..|I| from the k^n fiber decompositions.
    """
    size = len(element.ground)
    values = [Fraction(0 if size else 1)]
    for k in range(1, size + 1):
        values.append(Fraction(convolve([character] * k, element)))
    return interpolate_values(values)


def _osp_products(
    character: Character | SpeciesMap, element: HopfObject
) -> list[tuple[OrderedSetPartition, Fraction]]:
    found = []
    for partition in all_osps(element.ground):
        pieces = iterated_split(element, partition.blocks)
        if pieces is None:
            continue
        value = Fraction(1)
        for piece in pieces:
            value *= character(piece)
            if not value:
                break
        if value:
            found.append((partition, value))
    return found


def qsym_invariant(character: Character | SpeciesMap, element: HopfObject) -> QSymMonomial:
    """Sum over ordered set partitions of prod zeta(minor) M_{|S_1|,...,|S_k|}."""
    return FormalSum(
        (tuple(len(b) for b in partition.blocks), value)
        for partition, value in _osp_products(character, element)
    )


def osp_invariant(
    character: Character | SpeciesMap, element: HopfObject
) -> FormalSum[OrderedSetPartition]:
    """Sum over ordered set partitions of prod zeta(minor) [S_1|...|S_k]."""
    return FormalSum(_osp_products(character, element))


def antipode_face_sum(polytope: SubmodularGP) -> FormalSum[SubmodularGP]:
    """s_I(P) = (-1)^{|I|} sum over faces Q of (-1)^{dim Q} Q."""
    sign = (-1) ** len(polytope.ground)
    return FormalSum((f.as_gp(), sign * (-1) ** f.dimension) for f in polytope.faces)


NORM_VARIABLES = ("x", "y")
TUTTE_VARIABLES = ("x1", "y1", "x2", "y2")


def universal_norm(polytope: SubmodularGP) -> ExponentPoly:
    """N(P) = x^{|I|} y^{z(I)}."""
    return ExponentPoly.monomial(
        NORM_VARIABLES, (len(polytope.ground), polytope(polytope.ground))
    )


def universal_tutte(polytope: SubmodularGP) -> ExponentPoly:
    """Sum over A of x1^{|A|} y1^{z(A)} x2^{|I|-|A|} y2^{z(I)-z(A)}."""
    size = len(polytope.ground)
    top = polytope(polytope.ground)
    terms: dict[tuple[Fraction, ...], Fraction] = {}
    for subset in subsets(polytope.ground):
        value = polytope(subset)
        key = (Fraction(len(subset)), value, Fraction(size - len(subset)), top - value)
        terms[key] = terms.get(key, Fraction(0)) + 1
    return ExponentPoly(TUTTE_VARIABLES, terms)


def _norm_in(first: str, second: str) -> SpeciesMap:
    def norm(polytope: SubmodularGP) -> ExponentPoly:
        exponents = {v: Fraction(0) for v in TUTTE_VARIABLES}
        exponents[first] = Fraction(len(polytope.ground))
        exponents[second] = polytope(polytope.ground)
        return ExponentPoly.monomial(TUTTE_VARIABLES, tuple(exponents[v] for v in TUTTE_VARIABLES))

    return norm


def universal_tutte_by_convolution(polytope: SubmodularGP) -> ExponentPoly:
    """N_1 * tau * N_2 with tau the character that is 1 only on the empty set."""

    def tau(piece: SubmodularGP) -> ExponentPoly:
        return ExponentPoly.constant(TUTTE_VARIABLES, _unit(piece))

    result = convolve([_norm_in("x1", "y1"), tau, _norm_in("x2", "y2")], polytope)
    return result if isinstance(result, ExponentPoly) else ExponentPoly(TUTTE_VARIABLES)


def tutte_specialization(character: ExponentPoly) -> PolyElement:
    """
    Substitute x2 = 1, y2 = x - 1, x1 = y - 1, y1 = (y - 1)^{-1}.

    A monomial x1^a y1^b x2^c y2^d becomes (y-1)^{a-b} (x-1)^d, which must
    have nonnegative integer exponents.
    """
    if character.variables != TUTTE_VARIABLES:
        raise ValueError(f"Expected variables {TUTTE_VARIABLES}, got {character.variables}")
    total = BI_RING.zero
    for (a, b, _, d), coefficient in character.terms():
        nullity = a - b
        corank = d
        if nullity < 0 or corank < 0 or nullity.denominator != 1 or corank.denominator != 1:
            raise ValueError(
                f"Monomial with exponents {(a, b, d)} does not specialize to a polynomial"
            )
        total += (
            qq(coefficient)
            * (Y_GEN - 1) ** int(nullity)
            * (X_GEN - 1) ** int(corank)
        )
    return total


def flag_norm(flag: FlagMatroid) -> ExponentPoly:
    return universal_norm(flag.to_gp())


def flag_tutte(flag: FlagMatroid) -> ExponentPoly:
    """Universal Tutte character of the flag matroid polytope."""
    return universal_tutte(flag.to_gp())


def matroid_morphism(quotient: Matroid, matroid: Matroid) -> FlagMatroid:
    """Two-step flag matroid (M_1, M_2), M_1 of smaller rank."""
    return FlagMatroid((quotient, matroid))
