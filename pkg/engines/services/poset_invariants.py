"""
Poset Invariants

Valuations on poset cones: the (pre)antichain characters, order polynomials,
the poset Tutte polynomial and its specializations, transversal partitions
and Poincare polynomials.
"""

import logging
from collections.abc import Callable, Sequence
from fractions import Fraction
from itertools import product
from math import factorial

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring
from sympy.utilities.iterables import multiset_partitions

from engines.services.algebra import (
    BI_RING,
    T_GEN,
    UNI_RING,
    X_GEN,
    Y_GEN,
    normalize_label,
    set_key,
    sorted_labels,
    to_uni,
    uni_poly,
)
from engines.services.hopf import CHARACTERS, polynomial_invariant
from engines.services.osp import OrderedSetPartition
from engines.services.preposet import Poset, Preposet, prelinear_extensions

logger = logging.getLogger(__name__)

GENERATING_RING, S_GEN, GT_GEN = ring("s,t", QQ)


def antichain_char(poset: Preposet) -> Fraction:
    """1 on antichains, 0 elsewhere."""
    return Fraction(1 if poset.is_antisymmetric and poset.is_preantichain else 0)


def preantichain_char(preposet: Preposet) -> Fraction:
    """(-1)^{|I| - |q|} when every class is incomparable to every other, else 0."""
    return CHARACTERS["antichain"](preposet)


def strict_order_polynomial(poset: Preposet) -> PolyElement:
    """Counts strictly order-preserving maps to [k]: the k-th convolution power of the antichain character."""
    return polynomial_invariant(CHARACTERS["antichain"], poset)


def order_polynomial(poset: Preposet, strict: bool = True) -> PolyElement:
    """
    Order polynomial of a (pre)poset.

    The strict version comes from the antichain character. The weak one
    follows by reciprocity: Omega(p)(t) = (-1)^{|I|} Omega^s(p)(-t).
    """
    strict_poly = strict_order_polynomial(poset)
    if strict:
        return strict_poly
    sign = (-1) ** len(poset.ground)
    return sign * strict_poly.compose(T_GEN, -T_GEN)


def poset_tutte(poset: Poset) -> PolyElement:
    """T_P(x, y) = sum over antichains A of x^{|J(A)|} (y+1)^{|J*(A)|}."""
    total = BI_RING.zero
    for antichain in poset.antichains():
        weak = poset.down_set(antichain)
        strict = poset.down_set(antichain, strict=True)
        total += X_GEN ** len(weak) * (Y_GEN + 1) ** len(strict)
    return total


def _shifted_terms(poset: Poset) -> dict[tuple[int, int], Fraction]:
    """T_P(x, u - 1) = sum of x^{|J|} u^{|J*|}, as an exponent map."""
    shifted = poset_tutte(poset).compose(Y_GEN, Y_GEN - 1)
    return {monom: Fraction(int(c.numerator), int(c.denominator)) for monom, c in shifted.terms()}


def lower_ideal_polynomial(poset: Poset) -> PolyElement:
    """T_P(t, 0): lower ideals counted by size."""
    return to_uni(poset_tutte(poset).evaluate(Y_GEN, 0))


def upper_ideal_polynomial(poset: Poset) -> PolyElement:
    """Upper ideals counted by size: coefficient of t^{|I| - k} in T_P(t, 0) counts size k."""
    size = len(poset.ground)
    lower = lower_ideal_polynomial(poset)
    return uni_poly(
        {size - degree: Fraction(int(c.numerator), int(c.denominator)) for (degree,), c in lower.terms()}
    )


def minimal_element_count(poset: Poset) -> int:
    """The exponent m in T_P(t, -1) = (t + 1)^m."""
    specialized = to_uni(poset_tutte(poset).evaluate(Y_GEN, -1))
    degree = specialized.degree()
    if specialized != (T_GEN + 1) ** degree:
        raise RuntimeError(f"T_P(t,-1) is not a power of (t+1) for {poset}")
    return degree


def _collect(
    terms: dict[tuple[int, int], Fraction], key: Callable[[int, int], tuple[int, ...]]
) -> dict[tuple[int, ...], Fraction]:
    collected: dict[tuple[int, ...], Fraction] = {}
    for (weak, strict), c in terms.items():
        target = key(weak, strict)
        collected[target] = collected.get(target, Fraction(0)) + c
    return collected


def antichain_polynomial(poset: Poset) -> PolyElement:
    """T_P(t, 1/t - 1): antichains counted by size."""
    collected = _collect(_shifted_terms(poset), lambda w, s: (w - s,))
    return uni_poly({degree: c for (degree,), c in collected.items()})


def antichain_generating_function(poset: Poset) -> PolyElement:
    """G_P(s, t) = T_P(st, 1/t - 1) = sum over antichains A of s^{|J(A)|} t^{|A|}."""
    collected = _collect(_shifted_terms(poset), lambda w, s: (w, w - s))
    return GENERATING_RING.from_dict(
        {monom: QQ(c.numerator, c.denominator) for monom, c in collected.items()}
    )


def ordered_transversal_partitions(poset: Poset) -> list[OrderedSetPartition]:
    """
    Transversal ordered set partitions.

    These are exactly the prelinear extensions: each block is an antichain
    and a lower ideal of what remains.
    """
    return sorted((extension for extension, _ in prelinear_extensions(poset)), key=str)


def transversal_partitions(poset: Poset, ordered: bool = False) -> list[tuple[frozenset[str], ...]]:
    """Block tuples of the ordered or unordered transversal partitions."""
    extensions = ordered_transversal_partitions(poset)
    if ordered:
        return [extension.blocks for extension in extensions]
    unordered = {frozenset(extension.blocks) for extension in extensions}
    return sorted(
        (tuple(sorted(parts, key=set_key)) for parts in unordered),
        key=lambda blocks: [set_key(b) for b in blocks],
    )


def _block_weight(blocks: Sequence[frozenset[str]]) -> int:
    weight = 1
    for block in blocks:
        weight *= factorial(len(block) - 1)
    return weight


def _codimension_poly(size: int, partitions: Sequence[Sequence[frozenset[str]]]) -> PolyElement:
    coefficients: dict[int, int] = {}
    for blocks in partitions:
        degree = size - len(blocks)
        coefficients[degree] = coefficients.get(degree, 0) + _block_weight(blocks)
    return uni_poly(coefficients) if coefficients else UNI_RING.zero


def poincare(poset: Poset) -> PolyElement:
    """Sum over unordered transversal partitions of prod (|S_i| - 1)! t^{|I| - #parts}."""
    return _codimension_poly(len(poset.ground), transversal_partitions(poset, ordered=False))


def _meets_open_cone(poset: Poset, blocks: Sequence[frozenset[str]]) -> bool:
    """Some x constant on each block has x_a < x_b for every a < b."""
    strict = [(a, b) for a, b in poset.relation if a != b]
    for values in product(range(len(blocks)), repeat=len(blocks)):
        x = {label: v for block, v in zip(blocks, values, strict=True) for label in block}
        if all(x[a] < x[b] for a, b in strict):
            return True
    return False


def _refines(finer: frozenset[frozenset[str]], coarser: frozenset[frozenset[str]]) -> bool:
    return all(any(block <= other for other in coarser) for block in finer)


def braid_poincare(poset: Poset) -> PolyElement:
    """
    Poincare polynomial of the braid arrangement localized at the open cone of ``poset``.

    Brute force: the flats are the subspaces {x constant on the blocks of a
    set partition} that meet the open cone, ordered by refinement, and the
    result is sum over flats X of mu(bottom, X) (-t)^{codim X}.
    """
    labels = sorted_labels(poset.ground)
    if not labels:
        return UNI_RING.one
    flats = [
        frozenset(frozenset(block) for block in blocks)
        for blocks in multiset_partitions(list(labels))
        if _meets_open_cone(poset, [frozenset(block) for block in blocks])
    ]
    mobius: dict[frozenset[frozenset[str]], int] = {}
    coefficients: dict[int, int] = {}
    for flat in sorted(flats, key=len, reverse=True):
        below = [other for other in mobius if _refines(other, flat)]
        mobius[flat] = -sum(mobius[other] for other in below) if below else 1
        codimension = len(labels) - len(flat)
        coefficients[codimension] = coefficients.get(codimension, 0) + mobius[flat] * (-1) ** codimension
    logger.debug(f"{len(flats)} flats in the localized braid arrangement of {poset}")
    return uni_poly(coefficients)


def ordered_poincare(poset: Poset) -> PolyElement:
    """The same sum over ordered transversal partitions."""
    return _codimension_poly(len(poset.ground), transversal_partitions(poset, ordered=True))


def is_proper(partition: OrderedSetPartition, order: Sequence[str]) -> bool:
    """min_l(S_i) <_l min_l(S_{i+1}) for consecutive blocks."""
    position = {label: i for i, label in enumerate(order)}
    minima = [min(position[x] for x in block) for block in partition.blocks]
    return all(a < b for a, b in zip(minima, minima[1:], strict=False))


def phi_ell(poset: Poset, order: Sequence[object]) -> PolyElement:
    """Sum over transversal ordered set partitions proper for the linear order."""
    labels = [normalize_label(x) for x in order]
    if set(labels) != poset.ground or len(set(labels)) != len(labels):
        raise ValueError(f"{labels} is not a linear order of the poset ground set")
    parts = [p.blocks for p in ordered_transversal_partitions(poset) if is_proper(p, labels)]
    return _codimension_poly(len(poset.ground), parts)


def is_properly_labelled(poset: Poset, order: Sequence[str]) -> bool:
    position = {label: i for i, label in enumerate(order)}
    return all(position[a] <= position[b] for a, b in poset.relation)


def prelinear_expansion_value(f: Callable[[Preposet], Fraction], preposet: Preposet) -> Fraction:
    """sum over prelinear extensions l of (-1)^{|I| - |l|} f(l)."""
    size = len(preposet.ground)
    return sum(
        (
            (-1) ** (size - len(extension)) * f(Preposet.from_osp(extension))
            for extension, _ in prelinear_extensions(preposet)
        ),
        Fraction(0),
    )
